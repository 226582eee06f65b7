//! Node importance measures: degree centrality, closeness centrality in the
//! mean-reciprocal-distance (harmonic) form, and betweenness centrality via
//! Brandes' dependency accumulation, all O(nm) on unweighted graphs.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::metrics::{sssp_bfs, UNREACHABLE};

/// Sources per parallel task; fixed so the betweenness reduction order (and
/// hence the floating-point result) does not depend on the thread count.
const SOURCE_CHUNK: usize = 64;

/// Centrality measure tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Measure {
    Degree,
    Closeness,
    Betweenness,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::Degree, Measure::Closeness, Measure::Betweenness];

    pub fn name(&self) -> &'static str {
        match self {
            Measure::Degree => "dc",
            Measure::Closeness => "cc",
            Measure::Betweenness => "bc",
        }
    }

    pub fn compute(&self, g: &Graph) -> Result<CentralityVector> {
        match self {
            Measure::Degree => degree_centrality(g),
            Measure::Closeness => closeness_centrality(g),
            Measure::Betweenness => betweenness_centrality(g),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dc" => Ok(Measure::Degree),
            "cc" => Ok(Measure::Closeness),
            "bc" => Ok(Measure::Betweenness),
            other => Err(Error::InvalidParameter(format!(
                "unknown measure {other:?} (expected dc, cc or bc)"
            ))),
        }
    }
}

impl TryFrom<String> for Measure {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Measure> for String {
    fn from(m: Measure) -> String {
        m.name().to_string()
    }
}

/// Per-node scores of one measure on one graph.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityVector {
    pub measure: Measure,
    pub values: Vec<f64>,
}

fn require_at_least_two(g: &Graph) -> Result<()> {
    if g.n() < 2 {
        return Err(Error::InvalidParameter(
            "centrality needs at least 2 nodes".into(),
        ));
    }
    Ok(())
}

/// Degree centrality: degree(i) / (n − 1).
pub fn degree_centrality(g: &Graph) -> Result<CentralityVector> {
    require_at_least_two(g)?;
    let denom = (g.n() - 1) as f64;
    let values = (0..g.n() as NodeId)
        .map(|u| g.degree(u) as f64 / denom)
        .collect();
    Ok(CentralityVector {
        measure: Measure::Degree,
        values,
    })
}

/// Closeness centrality in the mean-reciprocal-distance form:
/// value(i) = (1/(n−1)) Σ_{j≠i} 1/d_ij. Requires a connected graph.
pub fn closeness_centrality(g: &Graph) -> Result<CentralityVector> {
    require_at_least_two(g)?;
    let n = g.n();
    let denom = (n - 1) as f64;
    let sources: Vec<NodeId> = (0..n as NodeId).collect();
    let chunks: Vec<Vec<f64>> = sources
        .par_chunks(SOURCE_CHUNK)
        .map(|chunk| {
            let mut out = Vec::with_capacity(chunk.len());
            for &s in chunk {
                let dist = sssp_bfs(g, s);
                let mut sum = 0.0;
                for (j, &d) in dist.iter().enumerate() {
                    if j as NodeId == s {
                        continue;
                    }
                    if d == UNREACHABLE {
                        return Err(Error::Disconnected { node: j as NodeId });
                    }
                    sum += 1.0 / f64::from(d);
                }
                out.push(sum / denom);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(CentralityVector {
        measure: Measure::Closeness,
        values: chunks.concat(),
    })
}

/// Betweenness centrality: the fraction of all-pairs shortest paths passing
/// through a node as an intermediary, endpoints excluded, normalized by the
/// (n−1)(n−2)/2 pairs not involving the node.
///
/// Single-source dependency accumulation; path counts are held in f64, which
/// can lose precision once counts exceed 2^53 on very dense graphs.
pub fn betweenness_centrality(g: &Graph) -> Result<CentralityVector> {
    require_at_least_two(g)?;
    let n = g.n();
    let sources: Vec<NodeId> = (0..n as NodeId).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(SOURCE_CHUNK)
        .map(|chunk| {
            let mut acc = vec![0.0f64; n];
            let mut dist = vec![UNREACHABLE; n];
            let mut sigma = vec![0.0f64; n];
            let mut delta = vec![0.0f64; n];
            let mut order = Vec::with_capacity(n);
            for &s in chunk {
                brandes_pass(g, s, &mut dist, &mut sigma, &mut delta, &mut order)?;
                for v in 0..n {
                    if v as NodeId != s {
                        acc[v] += delta[v];
                    }
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;

    // Sum partials in chunk order: deterministic for fixed chunk size.
    let mut raw = vec![0.0f64; n];
    for part in &partials {
        for (r, p) in raw.iter_mut().zip(part) {
            *r += *p;
        }
    }
    // Each unordered pair contributes from both endpoints' passes.
    let denom = ((n - 1) * (n - 2)) as f64;
    let values = if n > 2 {
        raw.iter().map(|&x| x / denom).collect()
    } else {
        vec![0.0; n]
    };
    Ok(CentralityVector {
        measure: Measure::Betweenness,
        values,
    })
}

/// One Brandes pass: BFS from `s` counting shortest paths, then dependency
/// back-propagation in reverse visit order. Predecessors are re-derived from
/// BFS levels during the backward sweep instead of being stored.
fn brandes_pass(
    g: &Graph,
    s: NodeId,
    dist: &mut [u32],
    sigma: &mut [f64],
    delta: &mut [f64],
    order: &mut Vec<NodeId>,
) -> Result<()> {
    let n = g.n();
    dist.fill(UNREACHABLE);
    sigma.fill(0.0);
    delta.fill(0.0);
    order.clear();

    dist[s as usize] = 0;
    sigma[s as usize] = 1.0;
    order.push(s);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        let du = dist[u as usize];
        for &v in g.neighbors(u) {
            if dist[v as usize] == UNREACHABLE {
                dist[v as usize] = du + 1;
                order.push(v);
            }
            if dist[v as usize] == du + 1 {
                sigma[v as usize] += sigma[u as usize];
            }
        }
    }
    if order.len() < n {
        let node = dist.iter().position(|&d| d == UNREACHABLE).unwrap_or(0) as NodeId;
        return Err(Error::Disconnected { node });
    }
    for &w in order.iter().rev() {
        let dw = dist[w as usize];
        let coeff = (1.0 + delta[w as usize]) / sigma[w as usize];
        for &v in g.neighbors(w) {
            if dist[v as usize] + 1 == dw {
                delta[v as usize] += sigma[v as usize] * coeff;
            }
        }
    }
    Ok(())
}
