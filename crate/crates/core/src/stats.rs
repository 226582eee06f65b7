//! Statistical post-processing: Pearson correlation between centrality
//! vectors on a graph and on its spanning trees, and discrete power-law
//! fitting with a Kolmogorov–Smirnov goodness-of-fit bootstrap.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::centrality::Measure;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{derive_seed, seeded_rng, SeededRng};
use crate::spanning::Algorithm;

/// Below this sample count a fit is still reported but flagged low-power.
pub const LOW_POWER_MIN_SAMPLES: usize = 50;

/// The lower-cutoff scan is bounded to this many smallest distinct degrees.
pub const KMIN_CANDIDATE_LIMIT: usize = 200;

/// Cutoff candidates must keep at least this share of the positive samples
/// in the tail. Without a floor the scan can land on a short, narrow-range
/// tail that any smooth distribution fits, washing out the goodness-of-fit
/// test entirely.
pub const MIN_TAIL_FRACTION: f64 = 0.05;

/// Absolute lower bound on the tail size during the cutoff scan.
pub const MIN_TAIL_SAMPLES: usize = 10;

/// A fit is plausible when the bootstrap p-value reaches this threshold.
pub const PLAUSIBILITY_THRESHOLD: f64 = 0.1;

/// Cap on values drawn from a fitted tail during the bootstrap.
const MAX_SAMPLED: u32 = 1 << 31;

/// Pearson product-moment correlation coefficient.
///
/// Errors on length mismatch, fewer than two points, or a constant input
/// vector (undefined correlation rather than a silent 0).
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::InvalidParameter(format!(
            "length mismatch: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 2 {
        return Err(Error::InvalidParameter(
            "correlation needs at least 2 points".into(),
        ));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        let (da, db) = (a - mx, b - my);
        sxx += da * da;
        syy += db * db;
        sxy += da * db;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ConstantVector);
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// Normalized degree histogram as (degree, probability) pairs sorted by
/// degree; probabilities sum to 1 for any non-empty graph.
pub fn degree_histogram(g: &Graph) -> Vec<(u32, f64)> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let mut degrees = g.degree_sequence();
    degrees.sort_unstable();
    let mut out = Vec::new();
    let mut i = 0;
    while i < degrees.len() {
        let d = degrees[i];
        let mut j = i;
        while j < degrees.len() && degrees[j] == d {
            j += 1;
        }
        out.push((d, (j - i) as f64 / n as f64));
        i = j;
    }
    out
}

/// Discrete power-law fit of a degree sequence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawFit {
    /// Exponent estimate γ̂ (always > 1).
    pub gamma: f64,
    /// Lower cutoff chosen by minimizing the KS distance of the tail.
    pub k_min: u32,
    /// Kolmogorov–Smirnov distance between the tail and the fitted law.
    pub ks_stat: f64,
    /// Bootstrap plausibility: fraction of synthetic replicates fitting at
    /// least as badly as the data.
    pub p_value: f64,
    /// Binomial standard error of the p-value, at most ½√(1/bootstraps).
    pub p_stderr: f64,
    /// Samples at or above the cutoff.
    pub n_tail: usize,
    /// p_value ≥ 0.1.
    pub plausible: bool,
    /// Fewer than [`LOW_POWER_MIN_SAMPLES`] input samples.
    pub low_power: bool,
    pub bootstraps: u32,
}

#[derive(Debug, Clone, Copy)]
struct TailFit {
    k_min: u32,
    gamma: f64,
    ks: f64,
    n_tail: usize,
}

/// Maximum-likelihood power-law fit with cutoff selection and a
/// semi-parametric goodness-of-fit bootstrap.
///
/// For each candidate cutoff the exponent comes from the discrete MLE in
/// its continuous ½-shift approximation, γ̂ = 1 + n·[Σ ln(k_i/(k_min−½))]⁻¹,
/// and the cutoff minimizing the tail KS distance wins. Each bootstrap
/// replicate resamples below-cutoff values from the data and tail values
/// from the fitted law, refits from scratch, and the p-value is the share
/// of replicates with a KS distance at least the observed one.
pub fn fit_power_law(degrees: &[u32], bootstraps: u32, seed: u64) -> Result<PowerLawFit> {
    if degrees.is_empty() {
        return Err(Error::DegenerateFit("no samples".into()));
    }
    if bootstraps == 0 {
        return Err(Error::InvalidParameter("bootstraps must be >= 1".into()));
    }
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    let low_power = sorted.len() < LOW_POWER_MIN_SAMPLES;

    let best = best_tail_fit(&sorted).ok_or_else(|| {
        Error::DegenerateFit("needs at least two distinct degree values >= 1".into())
    })?;

    let n = sorted.len();
    let below: Vec<u32> = sorted
        .iter()
        .copied()
        .take_while(|&k| k < best.k_min)
        .collect();
    let p_below = below.len() as f64 / n as f64;

    let exceed: u32 = (0..bootstraps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = seeded_rng(derive_seed(seed, "plfit-bootstrap", u64::from(rep)));
            let mut synth: Vec<u32> = (0..n)
                .map(|_| {
                    if !below.is_empty() && rng.gen::<f64>() < p_below {
                        below[rng.gen_range(0..below.len())]
                    } else {
                        sample_fitted(best.k_min, best.gamma, &mut rng)
                    }
                })
                .collect();
            synth.sort_unstable();
            match best_tail_fit(&synth) {
                Some(fit) if fit.ks >= best.ks => 1,
                Some(_) => 0,
                // A degenerate replicate fits at least as badly.
                None => 1,
            }
        })
        .sum();

    let p_value = f64::from(exceed) / f64::from(bootstraps);
    let p_stderr = (p_value * (1.0 - p_value) / f64::from(bootstraps)).sqrt();
    Ok(PowerLawFit {
        gamma: best.gamma,
        k_min: best.k_min,
        ks_stat: best.ks,
        p_value,
        p_stderr,
        n_tail: best.n_tail,
        plausible: p_value >= PLAUSIBILITY_THRESHOLD,
        low_power,
        bootstraps,
    })
}

/// Scans cutoff candidates over the smallest distinct values and returns the
/// (cutoff, exponent) pair minimizing the tail KS distance. `sorted` must be
/// ascending. None when no candidate leaves a tail with two distinct values.
fn best_tail_fit(sorted: &[u32]) -> Option<TailFit> {
    let start = sorted.partition_point(|&k| k < 1);
    let positive = &sorted[start..];
    if positive.len() < 2 {
        return None;
    }

    // Suffix sums of ln k, so each candidate's MLE is O(1).
    let mut suffix_ln = vec![0.0f64; positive.len() + 1];
    for i in (0..positive.len()).rev() {
        suffix_ln[i] = suffix_ln[i + 1] + f64::from(positive[i]).ln();
    }

    let tail_floor = MIN_TAIL_SAMPLES
        .max((positive.len() as f64 * MIN_TAIL_FRACTION).ceil() as usize)
        .min(positive.len());

    let mut best: Option<TailFit> = None;
    let mut candidates_seen = 0usize;
    let mut i = 0usize;
    while i < positive.len() && candidates_seen < KMIN_CANDIDATE_LIMIT {
        let k_min = positive[i];
        candidates_seen += 1;
        let tail = &positive[i..];
        let n_tail = tail.len();
        // Need the floor plus at least two distinct tail values.
        if n_tail >= tail_floor.max(2) && tail[n_tail - 1] != k_min {
            let shift = (f64::from(k_min) - 0.5).ln();
            let ln_sum = suffix_ln[i] - n_tail as f64 * shift;
            let gamma = 1.0 + n_tail as f64 / ln_sum;
            let ks = ks_distance(tail, k_min, gamma);
            if best.as_ref().is_none_or(|b| ks < b.ks) {
                best = Some(TailFit {
                    k_min,
                    gamma,
                    ks,
                    n_tail,
                });
            }
        }
        while i < positive.len() && positive[i] == k_min {
            i += 1;
        }
    }
    best
}

/// KS distance between the empirical tail CDF and the fitted CDF
/// F(k) = 1 − ((k + ½)/(k_min − ½))^(1−γ), checked on both sides of every
/// empirical jump so gaps in the support are covered.
fn ks_distance(tail: &[u32], k_min: u32, gamma: f64) -> f64 {
    let n = tail.len() as f64;
    let base = f64::from(k_min) - 0.5;
    let expo = 1.0 - gamma;
    let model_cdf = |k: u32| 1.0 - ((f64::from(k) + 0.5) / base).powf(expo);

    let mut ks = 0.0f64;
    let mut emp_prev = 0.0f64;
    let mut i = 0usize;
    while i < tail.len() {
        let k = tail[i];
        let mut j = i;
        while j < tail.len() && tail[j] == k {
            j += 1;
        }
        let emp = j as f64 / n;
        ks = ks.max((emp - model_cdf(k)).abs());
        ks = ks.max((emp_prev - model_cdf(k - 1)).abs());
        emp_prev = emp;
        i = j;
    }
    ks
}

/// Inverse-CDF draw from the fitted tail; exactly consistent with the CDF
/// used by [`ks_distance`].
fn sample_fitted(k_min: u32, gamma: f64, rng: &mut SeededRng) -> u32 {
    let u: f64 = rng.gen();
    let x = (f64::from(k_min) - 0.5) * (1.0 - u).powf(-1.0 / (gamma - 1.0)) + 0.5;
    if x >= f64::from(MAX_SAMPLED) {
        MAX_SAMPLED
    } else {
        x as u32
    }
}

/// Mean Pearson correlation between a centrality on a graph and the same
/// centrality on its spanning trees.
#[derive(Debug, Clone, Serialize)]
pub struct CorrelationReport {
    pub measure: Measure,
    pub algorithm: Algorithm,
    /// Mean correlation over the realizations.
    pub r: f64,
    pub realizations: u32,
    pub per_realization: Vec<f64>,
}

/// Computes `realizations` seeded spanning trees of `g`, the chosen
/// centrality on the graph and on each tree, and reports the per-tree and
/// mean Pearson correlations. Tree seeds derive from (seed, algorithm,
/// index), so every cell is independently reproducible.
pub fn tree_centrality_correlation(
    g: &Graph,
    algorithm: Algorithm,
    measure: Measure,
    realizations: u32,
    seed: u64,
) -> Result<CorrelationReport> {
    if realizations == 0 {
        return Err(Error::InvalidParameter("realizations must be >= 1".into()));
    }
    let base = measure.compute(g)?;
    let per_realization: Vec<f64> = (0..realizations)
        .map(|i| {
            let tree_seed = derive_seed(seed, algorithm.name(), u64::from(i));
            let t = algorithm.spanning_tree(g, tree_seed)?;
            let tree_values = measure.compute(&t.tree)?;
            pearson(&base.values, &tree_values.values)
        })
        .collect::<Result<_>>()?;
    let r = per_realization.iter().sum::<f64>() / f64::from(realizations);
    Ok(CorrelationReport {
        measure,
        algorithm,
        r,
        realizations,
        per_realization,
    })
}
