//! Randomized spanning-tree construction for connected unweighted graphs.
//!
//! Four algorithms, all seeded: Prim growth with uniform frontier-edge
//! selection, Kruskal merging over a random edge permutation, and
//! breadth-first / depth-first traversal trees with shuffled neighbor order.
//! Each returns a [`SpanningTree`] that [`verify_spanning_tree`] can check
//! independently.

mod union_find;

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng::seeded_rng;

pub use union_find::DisjointSet;

/// Tree-construction algorithm tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Algorithm {
    Prim,
    Kruskal,
    Bfs,
    Dfs,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Prim,
        Algorithm::Kruskal,
        Algorithm::Bfs,
        Algorithm::Dfs,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Prim => "prim",
            Algorithm::Kruskal => "kruskal",
            Algorithm::Bfs => "bfs",
            Algorithm::Dfs => "dfs",
        }
    }

    /// Runs this algorithm on `g` with the given seed.
    pub fn spanning_tree(&self, g: &Graph, seed: u64) -> Result<SpanningTree> {
        match self {
            Algorithm::Prim => prim(g, seed),
            Algorithm::Kruskal => kruskal(g, seed),
            Algorithm::Bfs => bfs_tree(g, seed),
            Algorithm::Dfs => dfs_tree(g, seed),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prim" => Ok(Algorithm::Prim),
            "kruskal" => Ok(Algorithm::Kruskal),
            "bfs" => Ok(Algorithm::Bfs),
            "dfs" => Ok(Algorithm::Dfs),
            other => Err(Error::InvalidParameter(format!(
                "unknown algorithm {other:?} (expected prim, kruskal, bfs or dfs)"
            ))),
        }
    }
}

impl TryFrom<String> for Algorithm {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Algorithm> for String {
    fn from(a: Algorithm) -> String {
        a.name().to_string()
    }
}

/// A spanning tree of a parent graph: same node set, exactly n−1 of the
/// parent's edges, connected and acyclic.
#[derive(Debug, Clone)]
pub struct SpanningTree {
    /// The tree itself, as a graph over the parent's node ids.
    pub tree: Graph,
    /// Seed node the construction started from; absent for Kruskal, which
    /// grows a forest instead of a rooted tree.
    pub root: Option<NodeId>,
    pub algorithm: Algorithm,
    /// RNG seed the construction used.
    pub seed: u64,
    /// Fingerprint of the parent graph, for later verification.
    pub parent: u64,
}

/// First violated spanning-tree invariant found by [`verify_spanning_tree`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeViolation {
    ParentMismatch,
    NodeCount { expected: usize, actual: usize },
    EdgeCount { expected: usize, actual: usize },
    ForeignEdge { u: NodeId, v: NodeId },
    Disconnected { node: NodeId },
    Cyclic,
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeViolation::ParentMismatch => write!(f, "tree was built from a different graph"),
            TreeViolation::NodeCount { expected, actual } => {
                write!(f, "node-count violation: expected {expected}, got {actual}")
            }
            TreeViolation::EdgeCount { expected, actual } => {
                write!(f, "edge-count violation: expected {expected}, got {actual}")
            }
            TreeViolation::ForeignEdge { u, v } => {
                write!(f, "edge-subset violation: ({u}, {v}) not in parent graph")
            }
            TreeViolation::Disconnected { node } => {
                write!(f, "connectivity violation: node {node} unreachable")
            }
            TreeViolation::Cyclic => write!(f, "acyclicity violation: tree contains a cycle"),
        }
    }
}

/// Checks every spanning-tree invariant against the parent graph and
/// returns the first violation, if any. Connectivity and acyclicity are
/// checked independently even though either follows from the other at the
/// right edge count.
pub fn verify_spanning_tree(g: &Graph, t: &SpanningTree) -> std::result::Result<(), TreeViolation> {
    if t.parent != g.fingerprint() {
        return Err(TreeViolation::ParentMismatch);
    }
    let n = g.n();
    if t.tree.n() != n {
        return Err(TreeViolation::NodeCount {
            expected: n,
            actual: t.tree.n(),
        });
    }
    let expected_m = n.saturating_sub(1);
    if t.tree.m() != expected_m {
        return Err(TreeViolation::EdgeCount {
            expected: expected_m,
            actual: t.tree.m(),
        });
    }
    for (u, v) in t.tree.edges() {
        if !g.has_edge(u, v) {
            return Err(TreeViolation::ForeignEdge { u, v });
        }
    }
    if n > 0 {
        let (comp, count) = t.tree.component_ids();
        if count > 1 {
            let node = (0..n as NodeId)
                .find(|&u| comp[u as usize] != comp[0])
                .unwrap_or(0);
            return Err(TreeViolation::Disconnected { node });
        }
    }
    let mut ds = DisjointSet::new(n);
    for (u, v) in t.tree.edges() {
        if !ds.union(u, v) {
            return Err(TreeViolation::Cyclic);
        }
    }
    Ok(())
}

fn require_nonempty(g: &Graph) -> Result<()> {
    if g.n() == 0 {
        Err(Error::EmptyGraph)
    } else {
        Ok(())
    }
}

fn first_unvisited(visited: &[bool]) -> NodeId {
    visited.iter().position(|&v| !v).unwrap_or(0) as NodeId
}

fn assemble(
    g: &Graph,
    edges: &[(NodeId, NodeId)],
    root: Option<NodeId>,
    algorithm: Algorithm,
    seed: u64,
) -> SpanningTree {
    let tree = Graph::from_edges(g.n(), edges).expect("construction yields a valid edge subset");
    SpanningTree {
        tree,
        root,
        algorithm,
        seed,
        parent: g.fingerprint(),
    }
}

/// Prim's algorithm with uniform random frontier-edge selection.
///
/// Grows the tree from a uniformly random seed node. Candidate edges live in
/// a flat pool sampled by uniform index with rejection: an entry whose far
/// endpoint was visited in the meantime is swap-removed and redrawn. Each
/// graph edge enters the pool at most once (when its first endpoint is
/// visited), so the whole construction is O(m) expected.
pub fn prim(g: &Graph, seed: u64) -> Result<SpanningTree> {
    require_nonempty(g)?;
    let n = g.n();
    let mut rng = seeded_rng(seed);
    let root = rng.gen_range(0..n as NodeId);

    let mut visited = vec![false; n];
    let mut pool: Vec<(NodeId, NodeId)> = Vec::new();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));

    visited[root as usize] = true;
    for &v in g.neighbors(root) {
        pool.push((root, v));
    }

    while edges.len() + 1 < n {
        if pool.is_empty() {
            return Err(Error::Disconnected {
                node: first_unvisited(&visited),
            });
        }
        let idx = rng.gen_range(0..pool.len());
        let (u, v) = pool.swap_remove(idx);
        if visited[v as usize] {
            // Stale entry: far endpoint reached through another edge.
            continue;
        }
        visited[v as usize] = true;
        edges.push((u, v));
        for &w in g.neighbors(v) {
            if !visited[w as usize] {
                pool.push((v, w));
            }
        }
    }

    Ok(assemble(g, &edges, Some(root), Algorithm::Prim, seed))
}

/// Kruskal's algorithm over a uniformly random edge permutation.
///
/// Starts from the all-singletons forest; an edge is accepted iff its
/// endpoints lie in different disjoint-set components, stopping after n−1
/// acceptances. No root: the forest has no distinguished seed node.
pub fn kruskal(g: &Graph, seed: u64) -> Result<SpanningTree> {
    require_nonempty(g)?;
    let n = g.n();
    let mut rng = seeded_rng(seed);

    let mut all_edges: Vec<(NodeId, NodeId)> = g.edges().collect();
    all_edges.shuffle(&mut rng);

    let mut ds = DisjointSet::new(n);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for &(u, v) in &all_edges {
        if edges.len() + 1 == n {
            break;
        }
        if ds.union(u, v) {
            edges.push((u, v));
        }
    }
    if edges.len() + 1 < n {
        let rep = ds.find(0);
        let node = (0..n as NodeId).find(|&u| ds.find(u) != rep).unwrap_or(0);
        return Err(Error::Disconnected { node });
    }
    Ok(assemble(g, &edges, None, Algorithm::Kruskal, seed))
}

/// Breadth-first search tree from a uniformly random seed node.
///
/// Nodes are processed first-in first-out; the neighbor list of each
/// dequeued node is visited in a seeded random order. The FIFO discipline
/// guarantees the level property: for every node j, the tree distance from
/// the root equals the graph distance.
pub fn bfs_tree(g: &Graph, seed: u64) -> Result<SpanningTree> {
    require_nonempty(g)?;
    let n = g.n();
    let mut rng = seeded_rng(seed);
    let root = rng.gen_range(0..n as NodeId);

    let mut visited = vec![false; n];
    let mut queue = VecDeque::new();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut scratch: Vec<NodeId> = Vec::new();

    visited[root as usize] = true;
    queue.push_back(root);
    while let Some(u) = queue.pop_front() {
        scratch.clear();
        scratch.extend_from_slice(g.neighbors(u));
        scratch.shuffle(&mut rng);
        for &v in &scratch {
            if !visited[v as usize] {
                visited[v as usize] = true;
                edges.push((u, v));
                queue.push_back(v);
            }
        }
    }
    if edges.len() + 1 < n {
        return Err(Error::Disconnected {
            node: first_unvisited(&visited),
        });
    }
    Ok(assemble(g, &edges, Some(root), Algorithm::Bfs, seed))
}

/// Depth-first search tree from a uniformly random seed node.
///
/// The last-in first-out counterpart of [`bfs_tree`]: pending edges go on a
/// stack and a popped edge whose far endpoint was visited in the meantime is
/// skipped, so the traversal always descends before backtracking. Every
/// non-tree edge of the graph then joins an ancestor–descendant pair.
pub fn dfs_tree(g: &Graph, seed: u64) -> Result<SpanningTree> {
    require_nonempty(g)?;
    let n = g.n();
    let mut rng = seeded_rng(seed);
    let root = rng.gen_range(0..n as NodeId);

    let mut visited = vec![false; n];
    let mut stack: Vec<(NodeId, NodeId)> = Vec::new();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut scratch: Vec<NodeId> = Vec::new();

    visited[root as usize] = true;
    scratch.extend_from_slice(g.neighbors(root));
    scratch.shuffle(&mut rng);
    stack.extend(scratch.iter().map(|&v| (root, v)));

    while let Some((u, v)) = stack.pop() {
        if visited[v as usize] {
            continue;
        }
        visited[v as usize] = true;
        edges.push((u, v));
        scratch.clear();
        scratch.extend_from_slice(g.neighbors(v));
        scratch.shuffle(&mut rng);
        for &w in &scratch {
            if !visited[w as usize] {
                stack.push((v, w));
            }
        }
    }
    if edges.len() + 1 < n {
        return Err(Error::Disconnected {
            node: first_unvisited(&visited),
        });
    }
    Ok(assemble(g, &edges, Some(root), Algorithm::Dfs, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn triangle() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn single_node_tree() {
        let g = Graph::from_edges(1, &[]).unwrap();
        let t = prim(&g, 0).unwrap();
        assert_eq!(t.tree.m(), 0);
        assert_eq!(t.root, Some(0));
        assert!(verify_spanning_tree(&g, &t).is_ok());
    }

    #[test]
    fn tree_input_is_fixed_point() {
        let g = path3();
        for algo in Algorithm::ALL {
            for seed in 0..8 {
                let t = algo.spanning_tree(&g, seed).unwrap();
                assert_eq!(t.tree, g, "{algo} seed {seed}");
            }
        }
    }

    #[test]
    fn triangle_yields_two_edge_paths() {
        for algo in Algorithm::ALL {
            let t = algo.spanning_tree(&triangle(), 5).unwrap();
            assert_eq!(t.tree.m(), 2);
            assert!(verify_spanning_tree(&triangle(), &t).is_ok());
        }
    }

    #[test]
    fn star_bfs_is_the_star() {
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        for seed in 0..10 {
            let t = bfs_tree(&g, seed).unwrap();
            assert_eq!(t.tree, g);
        }
    }

    #[test]
    fn all_reject_disconnected_input() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        for algo in Algorithm::ALL {
            match algo.spanning_tree(&g, 1) {
                Err(Error::Disconnected { .. }) => {}
                other => panic!("{algo}: expected Disconnected, got {other:?}"),
            }
        }
    }

    #[test]
    fn identical_seed_identical_tree() {
        let g = crate::generators::erdos_renyi(80, 6.0, 21)
            .unwrap()
            .largest_connected_component()
            .unwrap();
        for algo in Algorithm::ALL {
            let a = algo.spanning_tree(&g, 99).unwrap();
            let b = algo.spanning_tree(&g, 99).unwrap();
            assert_eq!(a.tree, b.tree);
            assert_eq!(a.root, b.root);
        }
    }

    #[test]
    fn verify_flags_violations_in_order() {
        let g = triangle();
        let good = bfs_tree(&g, 2).unwrap();
        assert!(verify_spanning_tree(&g, &good).is_ok());

        // Edge (0,2) does not exist in a path parent.
        let parent = path3();
        let bad = SpanningTree {
            tree: Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap(),
            parent: parent.fingerprint(),
            ..good.clone()
        };
        assert_eq!(
            verify_spanning_tree(&parent, &bad),
            Err(TreeViolation::ForeignEdge { u: 0, v: 2 })
        );

        // n−2 edges: forest.
        let forest = SpanningTree {
            tree: Graph::from_edges(3, &[(0, 1)]).unwrap(),
            parent: g.fingerprint(),
            ..good.clone()
        };
        assert_eq!(
            verify_spanning_tree(&g, &forest),
            Err(TreeViolation::EdgeCount {
                expected: 2,
                actual: 1
            })
        );

        // Wrong node count.
        let shrunk = SpanningTree {
            tree: Graph::from_edges(2, &[(0, 1)]).unwrap(),
            parent: g.fingerprint(),
            ..good.clone()
        };
        assert_eq!(
            verify_spanning_tree(&g, &shrunk),
            Err(TreeViolation::NodeCount {
                expected: 3,
                actual: 2
            })
        );

        // Wrong parent graph.
        let mismatched = SpanningTree {
            parent: parent.fingerprint(),
            ..good.clone()
        };
        assert_eq!(
            verify_spanning_tree(&g, &mismatched),
            Err(TreeViolation::ParentMismatch)
        );
    }

    #[test]
    fn dfs_on_clique_is_hamiltonian_path() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        for seed in 0..50 {
            let t = dfs_tree(&k4, seed).unwrap();
            let degs = t.tree.degree_sequence();
            // A Hamiltonian path: two endpoints of degree 1, rest degree 2.
            assert_eq!(degs.iter().filter(|&&d| d == 1).count(), 2, "seed {seed}");
            assert_eq!(degs.iter().filter(|&&d| d == 2).count(), 2, "seed {seed}");
        }
    }

    #[test]
    fn dfs_triangle_unused_edge_spans_root_to_deepest() {
        let g = triangle();
        for seed in 0..50 {
            let t = dfs_tree(&g, seed).unwrap();
            let root = t.root.unwrap();
            // The 2-edge path has one node of degree 2 (the middle); the
            // unused edge joins the two degree-1 endpoints, which are the
            // root and the deepest node.
            let endpoints: Vec<NodeId> = (0..3).filter(|&u| t.tree.degree(u) == 1).collect();
            assert_eq!(endpoints.len(), 2);
            assert!(
                endpoints.contains(&root),
                "seed {seed}: root not an endpoint"
            );
        }
    }

    #[test]
    fn algorithm_round_trips_through_strings() {
        for algo in Algorithm::ALL {
            assert_eq!(algo.name().parse::<Algorithm>().unwrap(), algo);
        }
        assert!("invalid".parse::<Algorithm>().is_err());
    }
}
