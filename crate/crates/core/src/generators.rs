//! Seeded generators for the synthetic graph families: Erdős–Rényi random
//! graphs, Barabási–Albert preferential attachment, and triangular lattices.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng::seeded_rng;

/// Above this node count the Erdős–Rényi generator switches from one
/// Bernoulli trial per pair to geometric skipping; the distributions are
/// identical, the skipping is just faster on sparse graphs.
pub const ER_BERNOULLI_MAX_N: usize = 10_000;

/// Synthetic graph family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Family {
    ErdosRenyi,
    BarabasiAlbert,
    TriangularLattice,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::ErdosRenyi => "er",
            Family::BarabasiAlbert => "ba",
            Family::TriangularLattice => "tri",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "er" => Ok(Family::ErdosRenyi),
            "ba" => Ok(Family::BarabasiAlbert),
            "tri" => Ok(Family::TriangularLattice),
            other => Err(Error::InvalidParameter(format!(
                "unknown family {other:?} (expected er, ba or tri)"
            ))),
        }
    }
}

impl TryFrom<String> for Family {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Family> for String {
    fn from(f: Family) -> String {
        f.name().to_string()
    }
}

/// Parameters of one synthetic graph draw; the seed fully determines the
/// output (the lattice ignores it).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub k_avg: f64,
    pub seed: u64,
}

impl GenSpec {
    pub fn generate(&self) -> Result<Graph> {
        if self.n < 2 {
            return Err(Error::InvalidParameter(format!(
                "need at least 2 nodes, got {}",
                self.n
            )));
        }
        if self.k_avg >= self.n as f64 {
            return Err(Error::InvalidParameter(format!(
                "average degree {} must be below n={}",
                self.k_avg, self.n
            )));
        }
        match self.family {
            Family::ErdosRenyi => erdos_renyi(self.n, self.k_avg, self.seed),
            Family::BarabasiAlbert => barabasi_albert(self.n, self.k_avg, self.seed),
            Family::TriangularLattice => triangular_lattice(self.n),
        }
    }
}

/// Erdős–Rényi G(n, p) with p = k_avg / (n − 1).
///
/// Each unordered pair carries an edge independently with probability p; the
/// result may be disconnected, callers typically take the largest component.
pub fn erdos_renyi(n: usize, k_avg: f64, seed: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 nodes, got {n}"
        )));
    }
    if !(k_avg > 0.0 && k_avg <= (n - 1) as f64) {
        return Err(Error::InvalidParameter(format!(
            "average degree must be in (0, n-1], got {k_avg}"
        )));
    }
    let p = k_avg / (n - 1) as f64;
    let mut rng = seeded_rng(seed);
    let mut edges = Vec::new();

    if n <= ER_BERNOULLI_MAX_N {
        for u in 0..n as NodeId {
            for v in (u + 1)..n as NodeId {
                if rng.gen::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
    } else if p >= 1.0 {
        for u in 0..n as NodeId {
            for v in (u + 1)..n as NodeId {
                edges.push((u, v));
            }
        }
    } else {
        // Geometric skipping over the linearized pair index: the gap to the
        // next present edge is Geometric(p), giving O(n + m) instead of
        // O(n^2) trials.
        let total = n as u64 * (n as u64 - 1) / 2;
        let log_q = (1.0 - p).ln();
        let mut pos: u64 = 0;
        let mut skip_first = true;
        let mut row = 0usize;
        let mut row_start: u64 = 0;
        let mut row_end: u64 = (n - 1) as u64;
        loop {
            let u: f64 = rng.gen();
            let jump = ((1.0 - u).ln() / log_q).floor() as u64 + 1;
            pos = if skip_first {
                skip_first = false;
                jump - 1
            } else {
                pos + jump
            };
            if pos >= total {
                break;
            }
            while pos >= row_end {
                row += 1;
                row_start = row_end;
                row_end += (n - 1 - row) as u64;
            }
            let i = row as NodeId;
            let j = (row as u64 + 1 + (pos - row_start)) as NodeId;
            edges.push((i, j));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Barabási–Albert preferential attachment with `m_a = k_avg / 2` edges per
/// new node, grown from a clique on `m_a + 1` nodes.
///
/// Attachment targets are drawn degree-proportionally by uniform indexing
/// into the array of all edge endpoints, rejecting repeats within one node's
/// batch; the array snapshot is taken before the batch, so a node never
/// attaches to itself. Connected by construction with exactly
/// `m_a(m_a+1)/2 + m_a(n − m_a − 1)` edges.
pub fn barabasi_albert(n: usize, k_avg: f64, seed: u64) -> Result<Graph> {
    if k_avg.fract() != 0.0 || k_avg < 2.0 || !(k_avg as u64).is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "attachment needs an even integer average degree >= 2, got {k_avg}"
        )));
    }
    let m_a = k_avg as usize / 2;
    if n <= m_a {
        return Err(Error::InvalidParameter(format!(
            "need n > {m_a} for {m_a} attachments per node, got n={n}"
        )));
    }

    let final_m = m_a * (m_a + 1) / 2 + m_a * (n - m_a - 1);
    let mut edges = Vec::with_capacity(final_m);
    for u in 0..=m_a as NodeId {
        for v in (u + 1)..=m_a as NodeId {
            edges.push((u, v));
        }
    }

    let mut endpoints: Vec<NodeId> = Vec::with_capacity(2 * final_m);
    for &(u, v) in &edges {
        endpoints.push(u);
        endpoints.push(v);
    }

    let mut rng = seeded_rng(seed);
    let mut targets: Vec<NodeId> = Vec::with_capacity(m_a);
    for new in (m_a + 1)..n {
        let existing = endpoints.len();
        targets.clear();
        while targets.len() < m_a {
            let candidate = endpoints[rng.gen_range(0..existing)];
            if !targets.contains(&candidate) {
                targets.push(candidate);
            }
        }
        for &t in &targets {
            edges.push((t, new as NodeId));
            endpoints.push(t);
            endpoints.push(new as NodeId);
        }
    }
    Graph::from_edges(n, &edges)
}

/// Non-periodic L×L triangular lattice with L = ⌊√n⌋; node (r, c) connects
/// to (r, c+1), (r+1, c) and (r+1, c+1) when in range, so interior nodes
/// have degree 6. Deterministic; the actual node count is L².
pub fn triangular_lattice(n: usize) -> Result<Graph> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!(
            "lattice needs at least 4 nodes, got {n}"
        )));
    }
    let l = integer_sqrt(n);
    let id = |r: usize, c: usize| (r * l + c) as NodeId;
    let mut edges = Vec::with_capacity(2 * l * (l - 1) + (l - 1) * (l - 1));
    for r in 0..l {
        for c in 0..l {
            if c + 1 < l {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < l {
                edges.push((id(r, c), id(r + 1, c)));
            }
            if r + 1 < l && c + 1 < l {
                edges.push((id(r, c), id(r + 1, c + 1)));
            }
        }
    }
    Graph::from_edges(l * l, &edges)
}

/// Largest `l` with `l * l <= n`.
fn integer_sqrt(n: usize) -> usize {
    let mut l = (n as f64).sqrt() as usize;
    while (l + 1) * (l + 1) <= n {
        l += 1;
    }
    while l * l > n {
        l -= 1;
    }
    l
}
