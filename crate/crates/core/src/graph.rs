//! Immutable undirected simple graphs: construction, edge-list ingestion and
//! reduction to the largest connected component.
//!
//! Nodes are dense 0-based ids so traversals run on flat arrays; raw string
//! labels from ingested files are kept on the side in [`EdgeList`] for
//! reporting. Adjacency lists are sorted, which gives binary-search edge
//! queries and a canonical serialization.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::rng::fnv1a_stream;

/// Dense node identifier; a graph with `n` nodes uses ids `0..n`.
pub type NodeId = u32;

/// Immutable undirected simple graph in compressed adjacency form.
///
/// Invariants, enforced at construction: no self-loops, no parallel edges,
/// neighbor lists sorted, and symmetry (`j` in `adjacency[i]` iff `i` in
/// `adjacency[j]`). The edge count `m` is half the total adjacency length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    adjacency: Vec<NodeId>,
}

impl Graph {
    /// Builds a graph with `n` nodes from undirected edges.
    ///
    /// Rejects out-of-range endpoints, self-loops and duplicate edges; use
    /// [`EdgeList::simplify`] for raw lists that still carry those.
    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        let mut directed = Vec::with_capacity(edges.len() * 2);
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) out of range for n={n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at node {u}")));
            }
            directed.push((u, v));
            directed.push((v, u));
        }
        directed.sort_unstable();
        let with_dups = directed.len();
        directed.dedup();
        if directed.len() != with_dups {
            return Err(Error::InvalidParameter("duplicate edge".into()));
        }
        Ok(Self::from_sorted_directed(n, &directed))
    }

    /// `directed` must hold both orientations of each edge, sorted, deduped,
    /// loop-free and in range.
    fn from_sorted_directed(n: usize, directed: &[(NodeId, NodeId)]) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in directed {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let adjacency = directed.iter().map(|&(_, v)| v).collect();
        let g = Graph { offsets, adjacency };
        debug_assert!(g.is_consistent());
        g
    }

    /// Number of nodes.
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.adjacency.len() / 2
    }

    /// Average node degree `2m/n` (0 for the empty graph).
    pub fn average_degree(&self) -> f64 {
        if self.n() == 0 {
            0.0
        } else {
            2.0 * self.m() as f64 / self.n() as f64
        }
    }

    /// Sorted neighbors of `u`.
    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.adjacency[self.offsets[u as usize]..self.offsets[u as usize + 1]]
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.neighbors(u).len()
    }

    /// Edge query by binary search over the sorted neighbor list.
    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Iterates each undirected edge once, as `(u, v)` with `u < v`,
    /// in canonical (sorted) order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.n() as NodeId).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Per-node degrees; sums to `2m`.
    pub fn degree_sequence(&self) -> Vec<u32> {
        (0..self.n() as NodeId)
            .map(|u| self.degree(u) as u32)
            .collect()
    }

    /// Structural self-check: sorted unique neighbor lists, no loops,
    /// symmetry, and adjacency length twice the edge count.
    pub fn is_consistent(&self) -> bool {
        if !self.adjacency.len().is_multiple_of(2) {
            return false;
        }
        for u in 0..self.n() as NodeId {
            let nbrs = self.neighbors(u);
            for (i, &v) in nbrs.iter().enumerate() {
                if v == u || v as usize >= self.n() {
                    return false;
                }
                if i > 0 && nbrs[i - 1] >= v {
                    return false;
                }
                if !self.has_edge(v, u) {
                    return false;
                }
            }
        }
        true
    }

    /// Content fingerprint over `n` and the adjacency structure; used to tie
    /// a spanning tree back to the graph it was computed from.
    pub fn fingerprint(&self) -> u64 {
        let n = self.n() as u64;
        let bytes = n
            .to_le_bytes()
            .into_iter()
            .chain((0..self.n() as NodeId).flat_map(|u| {
                std::iter::once(0xffu8)
                    .chain(self.neighbors(u).iter().flat_map(|v| v.to_le_bytes()))
            }));
        fnv1a_stream(bytes)
    }

    /// Component id per node plus the component count. Components are
    /// numbered in order of their smallest node id.
    pub fn component_ids(&self) -> (Vec<u32>, usize) {
        let n = self.n();
        let mut comp = vec![u32::MAX; n];
        let mut count = 0u32;
        let mut queue = Vec::new();
        for start in 0..n as NodeId {
            if comp[start as usize] != u32::MAX {
                continue;
            }
            comp[start as usize] = count;
            queue.clear();
            queue.push(start);
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                for &v in self.neighbors(u) {
                    if comp[v as usize] == u32::MAX {
                        comp[v as usize] = count;
                        queue.push(v);
                    }
                }
            }
            count += 1;
        }
        (comp, count as usize)
    }

    /// True when every node is reachable from every other (vacuously true
    /// for the empty graph).
    pub fn is_connected(&self) -> bool {
        let (_, count) = self.component_ids();
        count <= 1
    }

    /// Induced subgraph on the largest connected component, relabeled to
    /// dense ids. Ties between equal-size components go to the one holding
    /// the smallest original node id.
    pub fn largest_connected_component(&self) -> Result<Graph> {
        self.largest_connected_component_with_map().map(|(g, _)| g)
    }

    /// As [`largest_connected_component`](Self::largest_connected_component),
    /// also returning the original id of each node in the result.
    pub fn largest_connected_component_with_map(&self) -> Result<(Graph, Vec<NodeId>)> {
        if self.n() == 0 {
            return Err(Error::EmptyGraph);
        }
        let (comp, count) = self.component_ids();
        let mut sizes = vec![0usize; count];
        for &c in &comp {
            sizes[c as usize] += 1;
        }
        // Components are numbered by smallest member id, so the first
        // maximum realizes the tie-break.
        let best = sizes
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .map(|(i, _)| i as u32)
            .expect("non-empty graph has at least one component");

        let members: Vec<NodeId> = (0..self.n() as NodeId)
            .filter(|&u| comp[u as usize] == best)
            .collect();
        let mut new_id = vec![u32::MAX; self.n()];
        for (i, &u) in members.iter().enumerate() {
            new_id[u as usize] = i as u32;
        }
        let mut directed = Vec::new();
        for &u in &members {
            for &v in self.neighbors(u) {
                if comp[v as usize] == best {
                    directed.push((new_id[u as usize], new_id[v as usize]));
                }
            }
        }
        directed.sort_unstable();
        Ok((
            Self::from_sorted_directed(members.len(), &directed),
            members,
        ))
    }

    /// Writes the canonical serialization: one `u v` line per edge with
    /// `u < v`, sorted by `(u, v)`.
    pub fn write_canonical<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for (u, v) in self.edges() {
            writeln!(w, "{u} {v}")?;
        }
        Ok(())
    }

    pub fn to_canonical_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_canonical(&mut buf).expect("write to Vec");
        String::from_utf8(buf).expect("ascii output")
    }
}

/// Raw edge list as parsed: dense node ids, file-order pairs with
/// multiplicity kept, plus the label for each dense id.
#[derive(Debug, Clone)]
pub struct EdgeList {
    edges: Vec<(NodeId, NodeId)>,
    labels: Vec<String>,
}

impl EdgeList {
    /// Parses the text edge-list format: one edge per line as two
    /// whitespace-separated labels (extra tokens ignored), `#`/`%` comment
    /// lines and blank lines skipped. Labels get dense ids in order of first
    /// appearance; self-loops and duplicates are kept until
    /// [`simplify`](Self::simplify).
    pub fn parse<R: BufRead>(reader: R) -> Result<EdgeList> {
        let mut edges = Vec::new();
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, NodeId> = HashMap::new();

        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let text = line.trim();
            if text.is_empty() || text.starts_with('#') || text.starts_with('%') {
                continue;
            }
            let mut tokens = text.split_whitespace();
            let (Some(a), Some(b)) = (tokens.next(), tokens.next()) else {
                return Err(Error::Parse {
                    line: i + 1,
                    reason: format!("expected two node labels, got {text:?}"),
                });
            };
            let ia = intern(a, &mut labels, &mut index);
            let ib = intern(b, &mut labels, &mut index);
            edges.push((ia, ib));
        }
        if edges.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(EdgeList { edges, labels })
    }

    /// Builds an edge list from label pairs, mainly for tests and synthetic
    /// round-trips.
    pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, S)]) -> EdgeList {
        let mut edges = Vec::new();
        let mut labels = Vec::new();
        let mut index = HashMap::new();
        for (a, b) in pairs {
            let ia = intern(a.as_ref(), &mut labels, &mut index);
            let ib = intern(b.as_ref(), &mut labels, &mut index);
            edges.push((ia, ib));
        }
        EdgeList { edges, labels }
    }

    /// Number of distinct labels (nodes).
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Parsed pairs in file order, multiplicity kept.
    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    /// Raw label of a dense id.
    pub fn label(&self, id: NodeId) -> &str {
        &self.labels[id as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Reduces to a simple graph: drops self-loops, merges parallel edges,
    /// keeps every declared node (isolated ones included). The result may be
    /// disconnected.
    pub fn simplify(&self) -> Graph {
        let mut directed = Vec::with_capacity(self.edges.len() * 2);
        for &(u, v) in &self.edges {
            if u != v {
                directed.push((u, v));
                directed.push((v, u));
            }
        }
        directed.sort_unstable();
        directed.dedup();
        Graph::from_sorted_directed(self.labels.len(), &directed)
    }
}

fn intern(label: &str, labels: &mut Vec<String>, index: &mut HashMap<String, NodeId>) -> NodeId {
    if let Some(&id) = index.get(label) {
        return id;
    }
    let id = labels.len() as NodeId;
    index.insert(label.to_string(), id);
    labels.push(label.to_string());
    id
}

/// Parses the edge-list format from any reader; see [`EdgeList::parse`].
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<EdgeList> {
    EdgeList::parse(reader)
}
