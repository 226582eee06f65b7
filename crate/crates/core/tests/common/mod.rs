//! Independent oracles shared by the integration suites. Everything here is
//! deliberately written with different algorithms than the library paths it
//! checks: Floyd–Warshall instead of BFS, subset enumeration instead of
//! incremental growth, simple-path listing instead of dependency
//! accumulation.

#![allow(dead_code)]

use rand::Rng;

use netspan::graph::{Graph, NodeId};
use netspan::rng::seeded_rng;

pub const INF: u64 = u64::MAX / 4;

/// All-pairs distances by Floyd–Warshall.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u64>> {
    let n = g.n();
    let mut d = vec![vec![INF; n]; n];
    for (row, i) in d.iter_mut().zip(0..) {
        row[i] = 0;
    }
    for (u, v) in g.edges() {
        d[u as usize][v as usize] = 1;
        d[v as usize][u as usize] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let alt = d[i][k].saturating_add(d[k][j]);
                if alt < d[i][j] {
                    d[i][j] = alt;
                }
            }
        }
    }
    d
}

/// Single-source distances via explicit level sets (no queue), for checking
/// BFS-tree level preservation.
pub fn level_set_distances(g: &Graph, root: NodeId) -> Vec<u32> {
    let mut level = vec![u32::MAX; g.n()];
    level[root as usize] = 0;
    let mut frontier = vec![root];
    let mut depth = 0u32;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &u in &frontier {
            for &v in g.neighbors(u) {
                if level[v as usize] == u32::MAX {
                    level[v as usize] = depth + 1;
                    next.push(v);
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    level
}

/// Every spanning tree of a tiny graph, as canonical sorted edge vectors,
/// found by brute-force enumeration of (n−1)-edge subsets.
pub fn enumerate_spanning_trees(g: &Graph) -> Vec<Vec<(NodeId, NodeId)>> {
    let edges: Vec<(NodeId, NodeId)> = g.edges().collect();
    let m = edges.len();
    let n = g.n();
    assert!(m <= 20, "enumeration oracle is for tiny graphs");
    let mut trees = Vec::new();
    if n == 0 {
        return trees;
    }
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize != n - 1 {
            continue;
        }
        let subset: Vec<(NodeId, NodeId)> = (0..m)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| edges[i])
            .collect();
        if spans(n, &subset) {
            trees.push(subset);
        }
    }
    trees
}

fn spans(n: usize, edges: &[(NodeId, NodeId)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut merges = 0;
    for &(u, v) in edges {
        let (ru, rv) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
        if ru == rv {
            return false;
        }
        parent[ru] = rv;
        merges += 1;
    }
    merges == n - 1
}

/// Canonical form of a tree's edge set for counting distinct outcomes.
pub fn canonical_edges(g: &Graph) -> Vec<(NodeId, NodeId)> {
    let mut edges: Vec<(NodeId, NodeId)> = g.edges().collect();
    edges.sort_unstable();
    edges
}

/// Seeded connected graph: a random spanning tree over 0..n plus extra
/// random edges, so connectivity holds by construction.
pub fn random_connected_graph(n: usize, extra_edges: usize, seed: u64) -> Graph {
    let mut rng = seeded_rng(seed);
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    for v in 1..n as NodeId {
        let parent = rng.gen_range(0..v);
        edges.push((parent, v));
    }
    let mut attempts = 0;
    let mut added = 0;
    while added < extra_edges && attempts < extra_edges * 20 {
        attempts += 1;
        let a = rng.gen_range(0..n as NodeId);
        let b = rng.gen_range(0..n as NodeId);
        if a == b {
            continue;
        }
        let e = (a.min(b), a.max(b));
        if !edges.contains(&e) {
            edges.push(e);
            added += 1;
        }
    }
    Graph::from_edges(n, &edges).expect("construction is loop- and duplicate-free")
}

/// Brute-force betweenness: list all simple paths per pair, keep the
/// shortest ones, and credit intermediates; normalized like the library.
pub fn betweenness_bruteforce(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let mut raw = vec![0.0f64; n];
    for s in 0..n as NodeId {
        for t in (s + 1)..n as NodeId {
            let mut paths = Vec::new();
            let mut on_path = vec![false; n];
            on_path[s as usize] = true;
            let mut cur = vec![s];
            collect_paths(g, s, t, &mut cur, &mut on_path, &mut paths);
            let min_len = paths
                .iter()
                .map(|p| p.len())
                .min()
                .expect("connected graph has a path");
            let shortest: Vec<&Vec<NodeId>> = paths.iter().filter(|p| p.len() == min_len).collect();
            let sigma = shortest.len() as f64;
            for p in &shortest {
                for &v in &p[1..p.len() - 1] {
                    raw[v as usize] += 1.0 / sigma;
                }
            }
        }
    }
    let denom = ((n - 1) * (n - 2)) as f64 / 2.0;
    if denom == 0.0 {
        return vec![0.0; n];
    }
    raw.iter().map(|&x| x / denom).collect()
}

fn collect_paths(
    g: &Graph,
    at: NodeId,
    target: NodeId,
    cur: &mut Vec<NodeId>,
    on_path: &mut Vec<bool>,
    out: &mut Vec<Vec<NodeId>>,
) {
    if at == target {
        out.push(cur.clone());
        return;
    }
    for &next in g.neighbors(at) {
        if !on_path[next as usize] {
            on_path[next as usize] = true;
            cur.push(next);
            collect_paths(g, next, target, cur, on_path, out);
            cur.pop();
            on_path[next as usize] = false;
        }
    }
}

/// Closeness from an explicit distance matrix (the double-loop formula).
pub fn closeness_from_matrix(d: &[Vec<u64>]) -> Vec<f64> {
    let n = d.len();
    (0..n)
        .map(|i| {
            let sum: f64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| 1.0 / d[i][j] as f64)
                .sum();
            sum / (n - 1) as f64
        })
        .collect()
}

/// Exact discrete power-law sampler p_k ∝ k^(−γ) for k ≥ 1, by inverse CDF
/// over a truncated, renormalized table. Independent of the fitter.
pub struct ZetaSampler {
    cdf: Vec<f64>,
}

impl ZetaSampler {
    pub fn new(gamma: f64, k_max: usize) -> Self {
        let mut cdf = Vec::with_capacity(k_max);
        let mut total = 0.0;
        for k in 1..=k_max {
            total += (k as f64).powf(-gamma);
            cdf.push(total);
        }
        for c in cdf.iter_mut() {
            *c /= total;
        }
        ZetaSampler { cdf }
    }

    pub fn sample(&self, u: f64) -> u32 {
        (self.cdf.partition_point(|&c| c < u) + 1) as u32
    }

    pub fn draw(&self, count: usize, seed: u64) -> Vec<u32> {
        let mut rng = seeded_rng(seed);
        (0..count).map(|_| self.sample(rng.gen())).collect()
    }
}

/// Geometric samples on {1, 2, ...} with success probability p.
pub fn geometric_samples(p: f64, count: usize, seed: u64) -> Vec<u32> {
    let mut rng = seeded_rng(seed);
    (0..count)
        .map(|_| {
            let u: f64 = rng.gen();
            ((1.0 - u).ln() / (1.0 - p).ln()).floor() as u32 + 1
        })
        .collect()
}
