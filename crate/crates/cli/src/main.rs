//! `netspan` — spanning trees of unweighted networks from the command line.
//!
//! Subcommands compose over the text edge-list format: `generate` and `tree`
//! write it (with a `# {...}` JSON header line), `tree`, `metrics`,
//! `centrality`, `fitpl` and `correlate` read it from a file or stdin.
//! Exit codes: 0 success, 1 domain or I/O error, 2 usage error. stdout
//! carries only data; diagnostics go to stderr.

use std::fs;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use netspan::centrality::Measure;
use netspan::experiments::{run_to_dir, ExperimentConfig};
use netspan::generators::{Family, GenSpec};
use netspan::graph::{EdgeList, Graph};
use netspan::metrics::{
    distance_stats_auto, distance_stats_exact, distance_stats_sampled, DistanceStats, Mode,
};
use netspan::rng::derive_seed;
use netspan::spanning::Algorithm;
use netspan::stats::{fit_power_law, tree_centrality_correlation};

const VERSION: &str = concat!(
    env!("CARGO_PKG_VERSION"),
    " (",
    env!("NETSPAN_BUILD_HASH"),
    ")"
);

#[derive(Parser)]
#[command(name = "netspan", version = VERSION, about = "Spanning trees of unweighted networks: generation, construction, structure metrics")]
struct Cli {
    /// Worker threads for parallel sections (default: all cores; 1
    /// guarantees bit-reproducible output).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Er,
    Ba,
    Tri,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Er => Family::ErdosRenyi,
            FamilyArg::Ba => Family::BarabasiAlbert,
            FamilyArg::Tri => Family::TriangularLattice,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Prim,
    Kruskal,
    Bfs,
    Dfs,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Algorithm {
        match a {
            AlgoArg::Prim => Algorithm::Prim,
            AlgoArg::Kruskal => Algorithm::Kruskal,
            AlgoArg::Bfs => Algorithm::Bfs,
            AlgoArg::Dfs => Algorithm::Dfs,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Dc,
    Cc,
    Bc,
}

impl From<MeasureArg> for Measure {
    fn from(m: MeasureArg) -> Measure {
        match m {
            MeasureArg::Dc => Measure::Degree,
            MeasureArg::Cc => Measure::Closeness,
            MeasureArg::Bc => Measure::Betweenness,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic graph as a canonical edge list.
    Generate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        nodes: usize,
        /// Target average degree (ignored by the lattice).
        #[arg(long, default_value_t = 10.0)]
        kavg: f64,
        /// RNG seed; generated and echoed in the header when absent.
        #[arg(long)]
        seed: Option<u64>,
        /// Output file (stdout when absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute a spanning tree of a connected graph.
    Tree {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long)]
        seed: Option<u64>,
        /// Input edge list ("-" for stdin).
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Reduce to the largest connected component first.
        #[arg(long)]
        lcc: bool,
    },
    /// Distance statistics of a connected graph, as one JSON line.
    Metrics {
        #[arg(long = "in", default_value = "-")]
        input: String,
        /// Force exact all-pairs statistics regardless of size.
        #[arg(long, conflicts_with = "sources")]
        exact: bool,
        /// Sample BFS sources instead of the automatic mode choice.
        #[arg(long)]
        sources: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        lcc: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Node centrality scores as CSV.
    Centrality {
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[arg(long, value_enum)]
        measure: MeasureArg,
        #[arg(long)]
        lcc: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Power-law fit of the degree distribution, as JSON.
    Fitpl {
        #[arg(long = "in", default_value = "-")]
        input: String,
        /// Fit the degrees of a spanning tree instead of the graph.
        #[arg(long, value_enum)]
        tree_algo: Option<AlgoArg>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100)]
        bootstraps: u32,
        #[arg(long)]
        lcc: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mean centrality correlation between a graph and its spanning trees.
    Correlate {
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long, value_enum)]
        measure: MeasureArg,
        #[arg(long, default_value_t = 25)]
        realizations: u32,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        lcc: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a batch experiment from a TOML config.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Serialize)]
struct GenerateHeader<'a> {
    family: &'a str,
    nodes: usize,
    m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    k_avg: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

#[derive(Serialize)]
struct TreeHeader<'a> {
    algorithm: &'a str,
    seed: u64,
    root: Option<u32>,
    n: usize,
    m: usize,
}

#[derive(Serialize)]
struct MetricsOutput {
    n: usize,
    m: usize,
    k_avg: f64,
    d_avg: f64,
    d_max: u32,
    d_std: f64,
    c_d: f64,
    dispersion: f64,
    mode: &'static str,
    sources: Option<u32>,
    seed: Option<u64>,
    n_pairs: u64,
}

#[derive(Serialize)]
struct FitOutput {
    gamma: f64,
    k_min: u32,
    ks_stat: f64,
    p_value: f64,
    p_stderr: f64,
    n_tail: usize,
    plausible: bool,
    low_power: bool,
    bootstraps: u32,
    samples: usize,
    source: &'static str,
    tree_algo: Option<&'static str>,
    seed: u64,
}

#[derive(Serialize)]
struct CorrelateOutput {
    measure: &'static str,
    algorithm: &'static str,
    realizations: u32,
    seed: u64,
    r: f64,
    per_realization: Vec<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Generate {
            family,
            nodes,
            kavg,
            seed,
            out,
        } => generate(family, nodes, kavg, seed, out),
        Command::Tree {
            algo,
            seed,
            input,
            out,
            lcc,
        } => tree(algo.into(), seed, &input, out, lcc),
        Command::Metrics {
            input,
            exact,
            sources,
            seed,
            lcc,
            out,
        } => metrics(&input, exact, sources, seed, lcc, out),
        Command::Centrality {
            input,
            measure,
            lcc,
            out,
        } => centrality(&input, measure.into(), lcc, out),
        Command::Fitpl {
            input,
            tree_algo,
            seed,
            bootstraps,
            lcc,
            out,
        } => fitpl(
            &input,
            tree_algo.map(Into::into),
            seed,
            bootstraps,
            lcc,
            out,
        ),
        Command::Correlate {
            input,
            algo,
            measure,
            realizations,
            seed,
            lcc,
            out,
        } => correlate(
            &input,
            algo.into(),
            measure.into(),
            realizations,
            seed,
            lcc,
            out,
        ),
        Command::Experiment { config, out_dir } => experiment(&config, &out_dir),
    }
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(rand::random)
}

fn read_edge_list(path: &str) -> Result<EdgeList> {
    if path == "-" {
        EdgeList::parse(io::stdin().lock()).context("reading edge list from stdin")
    } else {
        let file = fs::File::open(path).with_context(|| format!("opening {path}"))?;
        EdgeList::parse(BufReader::new(file)).with_context(|| format!("parsing {path}"))
    }
}

/// Loads, simplifies and optionally reduces to the largest component;
/// returns the graph and the raw label of each dense node id.
fn load_graph(path: &str, lcc: bool) -> Result<(Graph, Vec<String>)> {
    let el = read_edge_list(path)?;
    let g = el.simplify();
    if lcc {
        let (sub, map) = g.largest_connected_component_with_map()?;
        let labels = map.iter().map(|&u| el.label(u).to_string()).collect();
        Ok((sub, labels))
    } else {
        Ok((g, el.labels().to_vec()))
    }
}

fn emit(out: Option<PathBuf>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?
        }
        None => io::stdout().write_all(bytes).context("writing to stdout")?,
    }
    Ok(())
}

fn header_line<T: Serialize>(header: &T) -> Result<String> {
    Ok(format!("# {}\n", serde_json::to_string(header)?))
}

fn generate(
    family: FamilyArg,
    nodes: usize,
    kavg: f64,
    seed: Option<u64>,
    out: Option<PathBuf>,
) -> Result<()> {
    let family: Family = family.into();
    let randomized = family != Family::TriangularLattice;
    let seed = resolve_seed(seed);
    let spec = GenSpec {
        family,
        n: nodes,
        k_avg: kavg,
        seed,
    };
    let g = spec.generate()?;
    let header = GenerateHeader {
        family: family.name(),
        nodes: g.n(),
        m: g.m(),
        k_avg: randomized.then_some(kavg),
        seed: randomized.then_some(seed),
    };
    let mut buf = header_line(&header)?.into_bytes();
    g.write_canonical(&mut buf)?;
    emit(out, &buf)
}

fn tree(
    algo: Algorithm,
    seed: Option<u64>,
    input: &str,
    out: Option<PathBuf>,
    lcc: bool,
) -> Result<()> {
    let seed = resolve_seed(seed);
    let (g, _) = load_graph(input, lcc)?;
    let t = algo.spanning_tree(&g, seed)?;
    let header = TreeHeader {
        algorithm: algo.name(),
        seed,
        root: t.root,
        n: t.tree.n(),
        m: t.tree.m(),
    };
    let mut buf = header_line(&header)?.into_bytes();
    t.tree.write_canonical(&mut buf)?;
    emit(out, &buf)
}

fn metrics(
    input: &str,
    exact: bool,
    sources: Option<u32>,
    seed: Option<u64>,
    lcc: bool,
    out: Option<PathBuf>,
) -> Result<()> {
    let (g, _) = load_graph(input, lcc)?;
    let seed = resolve_seed(seed);
    let stats: DistanceStats = if exact {
        distance_stats_exact(&g)?
    } else if let Some(k) = sources {
        distance_stats_sampled(&g, k, seed)?
    } else {
        distance_stats_auto(&g, seed)?
    };
    let sampled_sources = match stats.mode {
        Mode::Exact => None,
        Mode::Sampled { sources } => Some(sources),
    };
    let output = MetricsOutput {
        n: g.n(),
        m: g.m(),
        k_avg: g.average_degree(),
        d_avg: stats.d_avg,
        d_max: stats.d_max,
        d_std: stats.d_std,
        c_d: stats.c_d,
        dispersion: stats.dispersion(),
        mode: stats.mode.name(),
        sources: sampled_sources,
        seed: sampled_sources.map(|_| seed),
        n_pairs: stats.n_pairs,
    };
    emit(
        out,
        format!("{}\n", serde_json::to_string(&output)?).as_bytes(),
    )
}

fn centrality(input: &str, measure: Measure, lcc: bool, out: Option<PathBuf>) -> Result<()> {
    let (g, labels) = load_graph(input, lcc)?;
    let scores = measure.compute(&g)?;
    let mut buf = String::from("node,score\n");
    for (label, value) in labels.iter().zip(&scores.values) {
        buf.push_str(&format!("{label},{value}\n"));
    }
    emit(out, buf.as_bytes())
}

fn fitpl(
    input: &str,
    tree_algo: Option<Algorithm>,
    seed: Option<u64>,
    bootstraps: u32,
    lcc: bool,
    out: Option<PathBuf>,
) -> Result<()> {
    let (g, _) = load_graph(input, lcc)?;
    let seed = resolve_seed(seed);
    let (degrees, source) = match tree_algo {
        Some(algo) => {
            let t = algo.spanning_tree(&g, derive_seed(seed, "fitpl-tree", 0))?;
            (t.tree.degree_sequence(), "tree")
        }
        None => (g.degree_sequence(), "graph"),
    };
    let fit = fit_power_law(&degrees, bootstraps, seed)?;
    let output = FitOutput {
        gamma: fit.gamma,
        k_min: fit.k_min,
        ks_stat: fit.ks_stat,
        p_value: fit.p_value,
        p_stderr: fit.p_stderr,
        n_tail: fit.n_tail,
        plausible: fit.plausible,
        low_power: fit.low_power,
        bootstraps: fit.bootstraps,
        samples: degrees.len(),
        source,
        tree_algo: tree_algo.map(|a| a.name()),
        seed,
    };
    emit(
        out,
        format!("{}\n", serde_json::to_string(&output)?).as_bytes(),
    )
}

fn correlate(
    input: &str,
    algo: Algorithm,
    measure: Measure,
    realizations: u32,
    seed: Option<u64>,
    lcc: bool,
    out: Option<PathBuf>,
) -> Result<()> {
    let (g, _) = load_graph(input, lcc)?;
    let seed = resolve_seed(seed);
    let report = tree_centrality_correlation(&g, algo, measure, realizations, seed)?;
    let output = CorrelateOutput {
        measure: measure.name(),
        algorithm: algo.name(),
        realizations: report.realizations,
        seed,
        r: report.r,
        per_realization: report.per_realization,
    };
    emit(
        out,
        format!("{}\n", serde_json::to_string(&output)?).as_bytes(),
    )
}

fn experiment(config: &std::path::Path, out_dir: &std::path::Path) -> Result<()> {
    let cfg = ExperimentConfig::from_file(config)
        .with_context(|| format!("loading {}", config.display()))?;
    let output = run_to_dir(&cfg, out_dir, VERSION)?;
    eprintln!(
        "wrote {} records ({} skips) to {}",
        output.record_count(),
        output.skips.len(),
        out_dir.display()
    );
    Ok(())
}
