//! Distance structure of graphs and trees: average distance, diameter,
//! standard deviation and coefficient of variation, computed exactly by
//! all-sources BFS or estimated from a seeded sample of sources.
//!
//! All accumulation is integer (hop counts in u64/u128), so results are
//! bit-identical regardless of thread count or reduction order.

use rand::seq::index::sample;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng::seeded_rng;

/// Distance marker for nodes a BFS did not reach.
pub const UNREACHABLE: u32 = u32::MAX;

/// Largest node count for which the auto mode computes exact all-pairs
/// statistics; above it, sampled mode with [`DEFAULT_SAMPLE_SOURCES`]
/// sources keeps runs interactive.
pub const EXACT_MODE_MAX_N: usize = 1 << 14;

pub const DEFAULT_SAMPLE_SOURCES: u32 = 256;

/// Sources each parallel worker processes per task; fixed so reductions are
/// deterministic for any thread count.
const SOURCE_CHUNK: usize = 64;

/// How the statistics were computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// All n(n−1)/2 pairs, exact.
    Exact,
    /// BFS from a seeded random subset of sources; `d_max` is then only a
    /// lower bound on the true diameter.
    Sampled { sources: u32 },
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Sampled { .. } => "sampled",
        }
    }
}

/// Summary of the pairwise distance distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceStats {
    /// Mean hop distance over the measured pairs.
    pub d_avg: f64,
    /// Maximum distance seen (the diameter in exact mode).
    pub d_max: u32,
    /// Population standard deviation over the measured pairs.
    pub d_std: f64,
    /// Coefficient of variation, d_std / d_avg.
    pub c_d: f64,
    pub mode: Mode,
    /// Measured pairs: unordered n(n−1)/2 in exact mode, sources·(n−1)
    /// source-other measurements in sampled mode.
    pub n_pairs: u64,
}

impl DistanceStats {
    /// Variance-to-mean ratio of the distances, d_std² / d_avg.
    ///
    /// The dispersion measure that separates the tree families: traversal
    /// trees stay well below 1, Prim trees sit at about 1 independent of
    /// size, and Kruskal trees grow far above 1 on random graphs. The
    /// coefficient of variation `c_d` cannot make that separation: even a
    /// pure path tops out at σ/μ = √2/2.
    pub fn dispersion(&self) -> f64 {
        self.d_std * self.d_std / self.d_avg
    }
}

/// Exact hop distances from `source` to every node; unreachable nodes get
/// [`UNREACHABLE`]. Panics if `source` is out of range.
pub fn sssp_bfs(g: &Graph, source: NodeId) -> Vec<u32> {
    assert!((source as usize) < g.n(), "source {source} out of range");
    let mut dist = vec![UNREACHABLE; g.n()];
    let mut queue = Vec::with_capacity(g.n());
    bfs_fill(g, source, &mut dist, &mut queue);
    dist
}

/// BFS into reusable buffers; returns the number of reached nodes.
fn bfs_fill(g: &Graph, source: NodeId, dist: &mut [u32], queue: &mut Vec<NodeId>) -> usize {
    dist.fill(UNREACHABLE);
    queue.clear();
    dist[source as usize] = 0;
    queue.push(source);
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let du = dist[u as usize];
        for &v in g.neighbors(u) {
            if dist[v as usize] == UNREACHABLE {
                dist[v as usize] = du + 1;
                queue.push(v);
            }
        }
    }
    queue.len()
}

#[derive(Debug, Clone, Copy, Default)]
struct Accum {
    sum: u64,
    sum_sq: u128,
    max: u32,
    count: u64,
}

impl Accum {
    fn add(&mut self, d: u32) {
        self.sum += u64::from(d);
        self.sum_sq += u128::from(d) * u128::from(d);
        self.max = self.max.max(d);
        self.count += 1;
    }

    fn merge(mut self, other: Accum) -> Accum {
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        self.max = self.max.max(other.max);
        self.count += other.count;
        self
    }
}

/// Accumulates distances from each listed source to all other nodes,
/// erroring out on the first unreachable node.
fn accumulate_sources(g: &Graph, sources: &[NodeId]) -> Result<Accum> {
    let n = g.n();
    let total = sources
        .par_chunks(SOURCE_CHUNK)
        .map(|chunk| {
            let mut dist = vec![UNREACHABLE; n];
            let mut queue = Vec::with_capacity(n);
            let mut acc = Accum::default();
            for &s in chunk {
                let reached = bfs_fill(g, s, &mut dist, &mut queue);
                if reached < n {
                    let node = dist.iter().position(|&d| d == UNREACHABLE).unwrap_or(0) as NodeId;
                    return Err(Error::Disconnected { node });
                }
                for (j, &d) in dist.iter().enumerate() {
                    if j as NodeId != s {
                        acc.add(d);
                    }
                }
            }
            Ok(acc)
        })
        .try_reduce(Accum::default, |a, b| Ok(a.merge(b)))?;
    Ok(total)
}

fn stats_from_accum(acc: Accum, mode: Mode, n_pairs: u64) -> DistanceStats {
    let count = acc.count as f64;
    let d_avg = acc.sum as f64 / count;
    // Exact integer variance numerator: count·Σd² − (Σd)², nonnegative.
    let num = u128::from(acc.count) * acc.sum_sq - u128::from(acc.sum) * u128::from(acc.sum);
    let d_std = (num as f64).sqrt() / count;
    DistanceStats {
        d_avg,
        d_max: acc.max,
        d_std,
        c_d: d_std / d_avg,
        mode,
        n_pairs,
    }
}

fn require_measurable(g: &Graph) -> Result<()> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if g.n() < 2 {
        return Err(Error::InvalidParameter(
            "distance statistics need at least 2 nodes".into(),
        ));
    }
    Ok(())
}

/// Exact distance statistics over all unordered node pairs, by BFS from
/// every node; O(nm). Errors on disconnected input.
pub fn distance_stats_exact(g: &Graph) -> Result<DistanceStats> {
    require_measurable(g)?;
    let all: Vec<NodeId> = (0..g.n() as NodeId).collect();
    let acc = accumulate_sources(g, &all)?;
    let n_pairs = g.n() as u64 * (g.n() as u64 - 1) / 2;
    Ok(stats_from_accum(acc, Mode::Exact, n_pairs))
}

/// Distance statistics estimated from BFS out of `sources` uniformly chosen
/// source nodes; statistics run over all (source, other) measurements and
/// `d_max` is a lower bound on the diameter.
pub fn distance_stats_sampled(g: &Graph, sources: u32, seed: u64) -> Result<DistanceStats> {
    require_measurable(g)?;
    if sources == 0 || sources as usize > g.n() {
        return Err(Error::InvalidParameter(format!(
            "source count must be in 1..=n, got {sources} for n={}",
            g.n()
        )));
    }
    let mut rng = seeded_rng(seed);
    let chosen: Vec<NodeId> = sample(&mut rng, g.n(), sources as usize)
        .into_iter()
        .map(|i| i as NodeId)
        .collect();
    let acc = accumulate_sources(g, &chosen)?;
    let n_pairs = u64::from(sources) * (g.n() as u64 - 1);
    Ok(stats_from_accum(acc, Mode::Sampled { sources }, n_pairs))
}

/// Exact statistics for graphs up to [`EXACT_MODE_MAX_N`] nodes, sampled
/// with [`DEFAULT_SAMPLE_SOURCES`] sources above.
pub fn distance_stats_auto(g: &Graph, seed: u64) -> Result<DistanceStats> {
    if g.n() <= EXACT_MODE_MAX_N {
        distance_stats_exact(g)
    } else {
        distance_stats_sampled(g, DEFAULT_SAMPLE_SOURCES.min(g.n() as u32), seed)
    }
}

/// Theoretical diameter estimate log n / log k_avg for a random graph.
pub fn random_graph_diameter_estimate(n: usize, k_avg: f64) -> f64 {
    (n as f64).ln() / k_avg.ln()
}

/// Average local clustering coefficient: per node, the fraction of existing
/// links among its neighbors, averaged over all nodes (degree < 2 counts
/// as 0). Exactly 0 for any tree.
pub fn average_clustering(g: &Graph) -> f64 {
    let n = g.n();
    if n == 0 {
        return 0.0;
    }
    let total: f64 = (0..n as NodeId)
        .map(|u| {
            let nbrs = g.neighbors(u);
            let deg = nbrs.len();
            if deg < 2 {
                return 0.0;
            }
            // Each link among neighbors is seen from both of its endpoints.
            let mut twice_links = 0usize;
            for &v in nbrs {
                twice_links += sorted_intersection_count(nbrs, g.neighbors(v));
            }
            let links = twice_links / 2;
            links as f64 / (deg * (deg - 1) / 2) as f64
        })
        .sum();
    total / n as f64
}

fn sorted_intersection_count(a: &[NodeId], b: &[NodeId]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}
