//! Batch experiment harness: scaling sweeps over synthetic families,
//! sweeps over directories of real edge lists, and centrality-correlation
//! matrices, all emitted as long-format and aggregated CSV tables.
//!
//! Every cell derives its own seed from (base seed, subject, algorithm,
//! realization), so any single number in the output can be recomputed in
//! isolation. Cells run in parallel; the tables are sorted before writing,
//! making reruns reproducible.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::centrality::Measure;
use crate::error::{Error, Result};
use crate::generators::{Family, GenSpec};
use crate::graph::{EdgeList, Graph};
use crate::metrics::{
    distance_stats_auto, distance_stats_exact, distance_stats_sampled, DistanceStats,
    DEFAULT_SAMPLE_SOURCES,
};
use crate::rng::derive_seed;
use crate::spanning::Algorithm;
use crate::stats::tree_centrality_correlation;

/// What a sweep measures on each realization: the graph itself, or a
/// spanning tree built by one of the algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Treatment {
    Graph,
    Tree(Algorithm),
}

impl Treatment {
    pub fn name(&self) -> &'static str {
        match self {
            Treatment::Graph => "graph",
            Treatment::Tree(a) => a.name(),
        }
    }
}

impl std::str::FromStr for Treatment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "graph" {
            Ok(Treatment::Graph)
        } else {
            Ok(Treatment::Tree(s.parse()?))
        }
    }
}

impl TryFrom<String> for Treatment {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Treatment> for String {
    fn from(t: Treatment) -> String {
        t.name().to_string()
    }
}

/// Experiment flavor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    ScalingSynthetic,
    CollectionReal,
    Correlation,
}

/// How distance statistics are computed inside a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum MetricMode {
    Exact,
    #[default]
    Auto,
    Sampled,
}

fn default_k_avg() -> f64 {
    10.0
}

/// Declarative description of one experiment run, loadable from TOML.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub kind: Kind,
    /// Synthetic family for scaling runs.
    #[serde(default)]
    pub family: Option<Family>,
    /// Directory of edge-list files for collection and correlation runs.
    #[serde(default)]
    pub input_dir: Option<PathBuf>,
    /// Size ladder for scaling runs; strictly increasing.
    #[serde(default)]
    pub sizes: Vec<usize>,
    #[serde(default = "default_k_avg")]
    pub k_avg: f64,
    /// Treatments per realization; "graph" measures the network itself.
    pub algorithms: Vec<Treatment>,
    pub realizations: u32,
    pub base_seed: u64,
    #[serde(default)]
    pub metric_mode: MetricMode,
    /// Source count when `metric_mode = "sampled"`.
    #[serde(default)]
    pub sources: Option<u32>,
    /// Centrality measures for correlation runs.
    #[serde(default)]
    pub measures: Vec<Measure>,
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_toml_str(&fs::read_to_string(path)?)
    }

    fn validate(&self) -> Result<()> {
        if self.realizations == 0 {
            return Err(Error::Config("realizations must be >= 1".into()));
        }
        if !self.sizes.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Config("sizes must be strictly increasing".into()));
        }
        match self.kind {
            Kind::ScalingSynthetic => {
                if self.family.is_none() {
                    return Err(Error::Config("scaling runs need a family".into()));
                }
                if self.algorithms.is_empty() {
                    return Err(Error::Config("no algorithms selected".into()));
                }
            }
            Kind::CollectionReal => {
                if self.input_dir.is_none() {
                    return Err(Error::Config("collection runs need an input_dir".into()));
                }
                if self.algorithms.is_empty() {
                    return Err(Error::Config("no algorithms selected".into()));
                }
            }
            Kind::Correlation => {
                if self.input_dir.is_none() {
                    return Err(Error::Config("correlation runs need an input_dir".into()));
                }
                if self.measures.is_empty() {
                    return Err(Error::Config("correlation runs need measures".into()));
                }
                if !self
                    .algorithms
                    .iter()
                    .any(|t| matches!(t, Treatment::Tree(_)))
                {
                    return Err(Error::Config(
                        "correlation runs need at least one tree algorithm".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// One distance measurement: a (subject, treatment, realization) cell.
/// Metric fields are empty when `error` is set.
#[derive(Debug, Clone, Serialize)]
pub struct DistanceRecord {
    pub subject: String,
    pub n_target: u64,
    pub algorithm: String,
    pub realization: u32,
    pub seed: u64,
    pub n: Option<u64>,
    pub m: Option<u64>,
    pub k_avg: Option<f64>,
    pub d_avg: Option<f64>,
    pub d_max: Option<u32>,
    pub d_std: Option<f64>,
    pub c_d: Option<f64>,
    pub dispersion: Option<f64>,
    pub mode: Option<String>,
    pub error: Option<String>,
}

/// Mean / stddev / stderr summary of one (subject, treatment) cell.
#[derive(Debug, Clone, Serialize)]
pub struct DistanceAggregate {
    pub subject: String,
    pub n_target: u64,
    pub algorithm: String,
    pub count: u64,
    pub n_mean: f64,
    pub m_mean: f64,
    pub d_avg_mean: f64,
    pub d_avg_std: f64,
    pub d_avg_stderr: f64,
    pub d_max_mean: f64,
    pub d_max_std: f64,
    pub d_max_stderr: f64,
    pub c_d_mean: f64,
    pub c_d_std: f64,
    pub c_d_stderr: f64,
    pub dispersion_mean: f64,
    pub dispersion_std: f64,
    pub dispersion_stderr: f64,
}

fn serialize_na<S: Serializer>(v: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_f64(*x),
        None => s.serialize_str("NA"),
    }
}

/// One per-realization correlation measurement.
#[derive(Debug, Clone, Serialize)]
pub struct CorrelationRecord {
    pub subject: String,
    pub algorithm: String,
    pub measure: String,
    pub realization: u32,
    pub seed: u64,
    pub r: f64,
}

/// One heatmap cell: mean correlation of (subject, algorithm, measure).
/// `r_mean` is NA when the correlation was degenerate on this subject.
#[derive(Debug, Clone, Serialize)]
pub struct CorrelationAggregate {
    pub subject: String,
    pub algorithm: String,
    pub measure: String,
    pub count: u64,
    #[serde(serialize_with = "serialize_na")]
    pub r_mean: Option<f64>,
    #[serde(serialize_with = "serialize_na")]
    pub r_std: Option<f64>,
    #[serde(serialize_with = "serialize_na")]
    pub r_stderr: Option<f64>,
    pub error: Option<String>,
}

/// A subject dropped from a run, with the reason.
#[derive(Debug, Clone, Serialize)]
pub struct Skip {
    pub subject: String,
    pub reason: String,
}

/// Result tables of one run.
#[derive(Debug)]
pub enum RunTables {
    Distance {
        records: Vec<DistanceRecord>,
        aggregates: Vec<DistanceAggregate>,
    },
    Correlation {
        records: Vec<CorrelationRecord>,
        aggregates: Vec<CorrelationAggregate>,
    },
}

#[derive(Debug)]
pub struct RunOutput {
    pub tables: RunTables,
    pub skips: Vec<Skip>,
}

impl RunOutput {
    pub fn records_csv(&self) -> Result<String> {
        match &self.tables {
            RunTables::Distance { records, .. } => to_csv(records),
            RunTables::Correlation { records, .. } => to_csv(records),
        }
    }

    pub fn aggregate_csv(&self) -> Result<String> {
        match &self.tables {
            RunTables::Distance { aggregates, .. } => to_csv(aggregates),
            RunTables::Correlation { aggregates, .. } => to_csv(aggregates),
        }
    }

    pub fn record_count(&self) -> usize {
        match &self.tables {
            RunTables::Distance { records, .. } => records.len(),
            RunTables::Correlation { records, .. } => records.len(),
        }
    }
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)
            .map_err(|e| Error::Config(format!("csv serialization: {e}")))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Config(format!("csv flush: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Dispatches on `cfg.kind`.
pub fn run(cfg: &ExperimentConfig) -> Result<RunOutput> {
    cfg.validate()?;
    match cfg.kind {
        Kind::ScalingSynthetic => run_scaling(cfg),
        Kind::CollectionReal => run_collection(cfg),
        Kind::Correlation => run_correlation(cfg),
    }
}

fn metric_stats(cfg: &ExperimentConfig, g: &Graph, seed: u64) -> Result<DistanceStats> {
    match cfg.metric_mode {
        MetricMode::Exact => distance_stats_exact(g),
        MetricMode::Auto => distance_stats_auto(g, seed),
        MetricMode::Sampled => {
            let sources = cfg.sources.unwrap_or(DEFAULT_SAMPLE_SOURCES);
            distance_stats_sampled(g, sources.min(g.n() as u32), seed)
        }
    }
}

fn record_ok(
    subject: &str,
    n_target: u64,
    treatment: Treatment,
    realization: u32,
    seed: u64,
    g: &Graph,
    stats: &DistanceStats,
) -> DistanceRecord {
    DistanceRecord {
        subject: subject.to_string(),
        n_target,
        algorithm: treatment.name().to_string(),
        realization,
        seed,
        n: Some(g.n() as u64),
        m: Some(g.m() as u64),
        k_avg: Some(g.average_degree()),
        d_avg: Some(stats.d_avg),
        d_max: Some(stats.d_max),
        d_std: Some(stats.d_std),
        c_d: Some(stats.c_d),
        dispersion: Some(stats.dispersion()),
        mode: Some(stats.mode.name().to_string()),
        error: None,
    }
}

fn record_err(
    subject: &str,
    n_target: u64,
    treatment: Treatment,
    realization: u32,
    seed: u64,
    err: &Error,
) -> DistanceRecord {
    DistanceRecord {
        subject: subject.to_string(),
        n_target,
        algorithm: treatment.name().to_string(),
        realization,
        seed,
        n: None,
        m: None,
        k_avg: None,
        d_avg: None,
        d_max: None,
        d_std: None,
        c_d: None,
        dispersion: None,
        mode: None,
        error: Some(err.to_string()),
    }
}

/// Measures all configured treatments on one prepared (connected) graph.
fn measure_cell(
    cfg: &ExperimentConfig,
    subject: &str,
    n_target: u64,
    realization: u32,
    gen_seed: u64,
    lcc: &Graph,
) -> Vec<DistanceRecord> {
    let mut out = Vec::with_capacity(cfg.algorithms.len());
    for &treatment in &cfg.algorithms {
        match treatment {
            Treatment::Graph => {
                let metric_seed = derive_seed(
                    cfg.base_seed,
                    &format!("metrics/{subject}/graph"),
                    u64::from(realization),
                );
                match metric_stats(cfg, lcc, metric_seed) {
                    Ok(stats) => out.push(record_ok(
                        subject,
                        n_target,
                        treatment,
                        realization,
                        gen_seed,
                        lcc,
                        &stats,
                    )),
                    Err(e) => out.push(record_err(
                        subject,
                        n_target,
                        treatment,
                        realization,
                        gen_seed,
                        &e,
                    )),
                }
            }
            Treatment::Tree(algo) => {
                let tree_seed = derive_seed(
                    cfg.base_seed,
                    &format!("tree/{subject}/{}", algo.name()),
                    u64::from(realization),
                );
                let metric_seed = derive_seed(
                    cfg.base_seed,
                    &format!("metrics/{subject}/{}", algo.name()),
                    u64::from(realization),
                );
                let result = algo
                    .spanning_tree(lcc, tree_seed)
                    .and_then(|t| metric_stats(cfg, &t.tree, metric_seed).map(|s| (t, s)));
                match result {
                    Ok((t, stats)) => out.push(record_ok(
                        subject,
                        n_target,
                        treatment,
                        realization,
                        tree_seed,
                        &t.tree,
                        &stats,
                    )),
                    Err(e) => out.push(record_err(
                        subject,
                        n_target,
                        treatment,
                        realization,
                        tree_seed,
                        &e,
                    )),
                }
            }
        }
    }
    out
}

/// Default size ladders: powers of 3 for preferential attachment, powers
/// of 2 for random graphs, power-of-2 squares for lattices.
pub fn default_sizes(family: Family) -> Vec<usize> {
    match family {
        Family::BarabasiAlbert => vec![81, 243, 729, 2187, 6561],
        Family::ErdosRenyi => vec![128, 256, 512, 1024, 2048, 4096],
        Family::TriangularLattice => vec![256, 1024, 4096, 16384],
    }
}

/// Scaling sweep over a synthetic family: for each ladder size and
/// realization, generate a graph, reduce to its largest component, and
/// measure the graph and each requested tree. Per-cell failures become
/// error records; the run continues. An empty `sizes` ladder falls back to
/// [`default_sizes`].
pub fn run_scaling(cfg: &ExperimentConfig) -> Result<RunOutput> {
    let family = cfg
        .family
        .ok_or_else(|| Error::Config("scaling runs need a family".into()))?;

    let sizes = if cfg.sizes.is_empty() {
        default_sizes(family)
    } else {
        cfg.sizes.clone()
    };
    let cells: Vec<(usize, u32)> = sizes
        .iter()
        .flat_map(|&n| (0..cfg.realizations).map(move |r| (n, r)))
        .collect();

    let mut records: Vec<DistanceRecord> = cells
        .par_iter()
        .flat_map_iter(|&(n_target, realization)| {
            let subject = format!("{}_n{}", family.name(), n_target);
            let gen_seed = derive_seed(
                cfg.base_seed,
                &format!("gen/{subject}"),
                u64::from(realization),
            );
            let spec = GenSpec {
                family,
                n: n_target,
                k_avg: cfg.k_avg,
                seed: gen_seed,
            };
            let prepared = spec
                .generate()
                .and_then(|g| g.largest_connected_component());
            match prepared {
                Ok(lcc) => {
                    measure_cell(cfg, &subject, n_target as u64, realization, gen_seed, &lcc)
                }
                Err(e) => cfg
                    .algorithms
                    .iter()
                    .map(|&t| record_err(&subject, n_target as u64, t, realization, gen_seed, &e))
                    .collect(),
            }
        })
        .collect();

    sort_distance_records(&mut records);
    let aggregates = aggregate_distance(&records);
    Ok(RunOutput {
        tables: RunTables::Distance {
            records,
            aggregates,
        },
        skips: Vec::new(),
    })
}

/// Sweep over a directory of edge-list files: parse, simplify, take the
/// largest component, and measure like a scaling run. Unreadable or
/// degenerate files are skipped with a logged reason.
pub fn run_collection(cfg: &ExperimentConfig) -> Result<RunOutput> {
    let dir = cfg
        .input_dir
        .as_ref()
        .ok_or_else(|| Error::Config("collection runs need an input_dir".into()))?;

    let mut skips = Vec::new();
    let mut subjects: Vec<(String, Graph)> = Vec::new();
    for path in list_files(dir)? {
        let subject = subject_name(&path);
        match load_lcc(&path) {
            Ok(lcc) if lcc.n() >= 2 => subjects.push((subject, lcc)),
            Ok(_) => skips.push(Skip {
                subject,
                reason: "degenerate: largest component has fewer than 2 nodes".into(),
            }),
            Err(e) => skips.push(Skip {
                subject,
                reason: e.to_string(),
            }),
        }
    }

    let cells: Vec<(usize, u32)> = subjects
        .iter()
        .enumerate()
        .flat_map(|(i, _)| (0..cfg.realizations).map(move |r| (i, r)))
        .collect();

    let mut records: Vec<DistanceRecord> = cells
        .par_iter()
        .flat_map_iter(|&(i, realization)| {
            let (subject, lcc) = &subjects[i];
            let n_target = lcc.n() as u64;
            // The parsed graph does not vary across realizations; its seed
            // column carries the subject hash for traceability.
            let gen_seed = derive_seed(cfg.base_seed, &format!("subject/{subject}"), 0);
            measure_cell(cfg, subject, n_target, realization, gen_seed, lcc)
        })
        .collect();

    sort_distance_records(&mut records);
    let aggregates = aggregate_distance(&records);
    Ok(RunOutput {
        tables: RunTables::Distance {
            records,
            aggregates,
        },
        skips,
    })
}

/// Correlation matrix over a directory of networks: for each (network,
/// tree algorithm, measure), the mean Pearson correlation between node
/// centralities on the network and on its spanning trees.
pub fn run_correlation(cfg: &ExperimentConfig) -> Result<RunOutput> {
    let dir = cfg
        .input_dir
        .as_ref()
        .ok_or_else(|| Error::Config("correlation runs need an input_dir".into()))?;

    let mut skips = Vec::new();
    let mut subjects: Vec<(String, Graph)> = Vec::new();
    for path in list_files(dir)? {
        let subject = subject_name(&path);
        match load_lcc(&path) {
            Ok(lcc) if lcc.n() >= 2 => subjects.push((subject, lcc)),
            Ok(_) => skips.push(Skip {
                subject,
                reason: "degenerate: largest component has fewer than 2 nodes".into(),
            }),
            Err(e) => skips.push(Skip {
                subject,
                reason: e.to_string(),
            }),
        }
    }

    let algos: Vec<Algorithm> = cfg
        .algorithms
        .iter()
        .filter_map(|t| match t {
            Treatment::Tree(a) => Some(*a),
            Treatment::Graph => None,
        })
        .collect();

    let cells: Vec<(usize, Algorithm, Measure)> = subjects
        .iter()
        .enumerate()
        .flat_map(|(i, _)| {
            algos
                .iter()
                .flat_map(move |&a| cfg.measures.iter().map(move |&m| (i, a, m)))
        })
        .collect();

    let results: Vec<(Vec<CorrelationRecord>, CorrelationAggregate)> = cells
        .par_iter()
        .map(|&(i, algo, measure)| {
            let (subject, lcc) = &subjects[i];
            let cell_seed = derive_seed(
                cfg.base_seed,
                &format!("corr/{subject}/{}", measure.name()),
                0,
            );
            match tree_centrality_correlation(lcc, algo, measure, cfg.realizations, cell_seed) {
                Ok(report) => {
                    let records: Vec<CorrelationRecord> = report
                        .per_realization
                        .iter()
                        .enumerate()
                        .map(|(r, &value)| CorrelationRecord {
                            subject: subject.clone(),
                            algorithm: algo.name().to_string(),
                            measure: measure.name().to_string(),
                            realization: r as u32,
                            seed: derive_seed(cell_seed, algo.name(), r as u64),
                            r: value,
                        })
                        .collect();
                    let (std, stderr) = spread(&report.per_realization);
                    let agg = CorrelationAggregate {
                        subject: subject.clone(),
                        algorithm: algo.name().to_string(),
                        measure: measure.name().to_string(),
                        count: u64::from(report.realizations),
                        r_mean: Some(report.r),
                        r_std: Some(std),
                        r_stderr: Some(stderr),
                        error: None,
                    };
                    (records, agg)
                }
                Err(e) => (
                    Vec::new(),
                    CorrelationAggregate {
                        subject: subject.clone(),
                        algorithm: algo.name().to_string(),
                        measure: measure.name().to_string(),
                        count: 0,
                        r_mean: None,
                        r_std: None,
                        r_stderr: None,
                        error: Some(e.to_string()),
                    },
                ),
            }
        })
        .collect();

    let mut records = Vec::new();
    let mut aggregates = Vec::new();
    for (recs, agg) in results {
        records.extend(recs);
        aggregates.push(agg);
    }
    records.sort_by(|a, b| {
        (&a.subject, &a.algorithm, &a.measure, a.realization).cmp(&(
            &b.subject,
            &b.algorithm,
            &b.measure,
            b.realization,
        ))
    });
    aggregates.sort_by(|a, b| {
        (&a.subject, &a.algorithm, &a.measure).cmp(&(&b.subject, &b.algorithm, &b.measure))
    });
    Ok(RunOutput {
        tables: RunTables::Correlation {
            records,
            aggregates,
        },
        skips,
    })
}

fn subject_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn list_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Error::Config(format!(
            "no input files in {}",
            dir.display()
        )));
    }
    Ok(files)
}

fn load_lcc(path: &Path) -> Result<Graph> {
    let file = fs::File::open(path)?;
    let el = EdgeList::parse(std::io::BufReader::new(file))?;
    el.simplify().largest_connected_component()
}

fn sort_distance_records(records: &mut [DistanceRecord]) {
    records.sort_by(|a, b| {
        (&a.subject, a.n_target, &a.algorithm, a.realization).cmp(&(
            &b.subject,
            b.n_target,
            &b.algorithm,
            b.realization,
        ))
    });
}

/// Population stddev and standard error of the mean.
fn spread(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (var.sqrt(), (var / n).sqrt())
}

fn aggregate_distance(records: &[DistanceRecord]) -> Vec<DistanceAggregate> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < records.len() {
        let key = (
            records[i].subject.clone(),
            records[i].n_target,
            records[i].algorithm.clone(),
        );
        let mut j = i;
        while j < records.len()
            && records[j].subject == key.0
            && records[j].n_target == key.1
            && records[j].algorithm == key.2
        {
            j += 1;
        }
        let group: Vec<&DistanceRecord> =
            records[i..j].iter().filter(|r| r.error.is_none()).collect();
        if !group.is_empty() {
            let collect = |f: fn(&DistanceRecord) -> f64| -> Vec<f64> {
                group.iter().map(|r| f(r)).collect()
            };
            let d_avg = collect(|r| r.d_avg.unwrap_or(f64::NAN));
            let d_max = collect(|r| r.d_max.map(f64::from).unwrap_or(f64::NAN));
            let c_d = collect(|r| r.c_d.unwrap_or(f64::NAN));
            let dispersion = collect(|r| r.dispersion.unwrap_or(f64::NAN));
            let n_vals = collect(|r| r.n.map(|v| v as f64).unwrap_or(f64::NAN));
            let m_vals = collect(|r| r.m.map(|v| v as f64).unwrap_or(f64::NAN));
            let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
            let (d_avg_std, d_avg_stderr) = spread(&d_avg);
            let (d_max_std, d_max_stderr) = spread(&d_max);
            let (c_d_std, c_d_stderr) = spread(&c_d);
            let (dispersion_std, dispersion_stderr) = spread(&dispersion);
            out.push(DistanceAggregate {
                subject: key.0,
                n_target: key.1,
                algorithm: key.2,
                count: group.len() as u64,
                n_mean: mean(&n_vals),
                m_mean: mean(&m_vals),
                d_avg_mean: mean(&d_avg),
                d_avg_std,
                d_avg_stderr,
                d_max_mean: mean(&d_max),
                d_max_std,
                d_max_stderr,
                c_d_mean: mean(&c_d),
                c_d_std,
                c_d_stderr,
                dispersion_mean: mean(&dispersion),
                dispersion_std,
                dispersion_stderr,
            });
        }
        i = j;
    }
    out
}

/// Run metadata written next to the tables.
#[derive(Debug, Serialize)]
pub struct RunMeta<'a> {
    pub tool: &'a str,
    pub version: &'a str,
    pub config: &'a ExperimentConfig,
    pub records: usize,
    pub skips: &'a [Skip],
    pub wall_seconds: f64,
    pub created_unix: u64,
}

/// Runs the experiment and writes `records.csv`, `aggregate.csv` and
/// `meta.json` into `out_dir` (created if missing).
pub fn run_to_dir(cfg: &ExperimentConfig, out_dir: &Path, version: &str) -> Result<RunOutput> {
    let started = std::time::Instant::now();
    let output = run(cfg)?;
    fs::create_dir_all(out_dir)?;
    fs::write(out_dir.join("records.csv"), output.records_csv()?)?;
    fs::write(out_dir.join("aggregate.csv"), output.aggregate_csv()?)?;
    let meta = RunMeta {
        tool: "netspan",
        version,
        config: cfg,
        records: output.record_count(),
        skips: &output.skips,
        wall_seconds: started.elapsed().as_secs_f64(),
        created_unix: std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    };
    let mut meta_json = serde_json::to_string_pretty(&meta)
        .map_err(|e| Error::Config(format!("meta serialization: {e}")))?;
    meta_json.push('\n');
    fs::write(out_dir.join("meta.json"), meta_json)?;
    Ok(output)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scaling_cfg() -> ExperimentConfig {
        ExperimentConfig {
            kind: Kind::ScalingSynthetic,
            family: Some(Family::ErdosRenyi),
            input_dir: None,
            sizes: vec![16, 32, 64],
            k_avg: 4.0,
            algorithms: vec![
                Treatment::Graph,
                Treatment::Tree(Algorithm::Bfs),
                Treatment::Tree(Algorithm::Kruskal),
                Treatment::Tree(Algorithm::Prim),
            ],
            realizations: 5,
            base_seed: 9,
            metric_mode: MetricMode::Exact,
            sources: None,
            measures: Vec::new(),
        }
    }

    #[test]
    fn scaling_record_cardinality() {
        let out = run_scaling(&scaling_cfg()).unwrap();
        // 3 sizes × 4 treatments × 5 realizations.
        assert_eq!(out.record_count(), 60);
    }

    #[test]
    fn scaling_tree_never_shortens_distances() {
        let out = run_scaling(&scaling_cfg()).unwrap();
        let RunTables::Distance { records, .. } = out.tables else {
            panic!("distance tables expected");
        };
        for rec in &records {
            if rec.algorithm == "graph" {
                continue;
            }
            let twin = records
                .iter()
                .find(|r| {
                    r.subject == rec.subject
                        && r.realization == rec.realization
                        && r.algorithm == "graph"
                })
                .expect("matching graph record");
            assert!(rec.d_avg.unwrap() >= twin.d_avg.unwrap() - 1e-12);
        }
    }

    #[test]
    fn scaling_is_reproducible() {
        let a = run_scaling(&scaling_cfg()).unwrap();
        let b = run_scaling(&scaling_cfg()).unwrap();
        assert_eq!(a.records_csv().unwrap(), b.records_csv().unwrap());
        assert_eq!(a.aggregate_csv().unwrap(), b.aggregate_csv().unwrap());
    }

    #[test]
    fn config_validation_rejects_bad_ladders() {
        let mut cfg = scaling_cfg();
        cfg.sizes = vec![32, 16];
        assert!(run(&cfg).is_err());
        let mut cfg = scaling_cfg();
        cfg.realizations = 0;
        assert!(run(&cfg).is_err());
    }

    #[test]
    fn empty_ladder_uses_family_default() {
        let mut cfg = scaling_cfg();
        cfg.sizes = vec![];
        cfg.realizations = 1;
        cfg.family = Some(Family::TriangularLattice);
        cfg.metric_mode = MetricMode::Sampled;
        cfg.sources = Some(32);
        let out = run_scaling(&cfg).unwrap();
        // 4 default lattice sizes x 4 treatments x 1 realization.
        assert_eq!(out.record_count(), 16);
        let RunTables::Distance { records, .. } = out.tables else {
            panic!("distance tables expected");
        };
        let targets: std::collections::BTreeSet<u64> =
            records.iter().map(|r| r.n_target).collect();
        assert_eq!(
            targets.into_iter().collect::<Vec<_>>(),
            vec![256, 1024, 4096, 16384]
        );
    }

    #[test]
    fn toml_round_trip() {
        let text = r#"
kind = "scaling_synthetic"
family = "er"
sizes = [256, 1024]
k_avg = 10.0
algorithms = ["graph", "bfs", "kruskal"]
realizations = 100
base_seed = 42
metric_mode = "exact"
"#;
        let cfg = ExperimentConfig::from_toml_str(text).unwrap();
        assert_eq!(cfg.kind, Kind::ScalingSynthetic);
        assert_eq!(cfg.family, Some(Family::ErdosRenyi));
        assert_eq!(cfg.algorithms.len(), 3);
        assert_eq!(cfg.metric_mode, MetricMode::Exact);
    }
}
