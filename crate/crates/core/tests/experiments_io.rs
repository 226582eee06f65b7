//! Experiment harness: collection sweeps over a directory, skips for bad
//! files, correlation matrices, and on-disk output shape.

mod common;

use std::fs;

use netspan::centrality::Measure;
use netspan::experiments::{
    run, run_to_dir, ExperimentConfig, Kind, MetricMode, RunTables, Treatment,
};
use netspan::spanning::Algorithm;

fn write_inputs(dir: &std::path::Path) {
    // A healthy little network.
    fs::write(dir.join("bowtie.txt"), "a b\nb c\na c\nc d\nd e\nc e\n").unwrap();
    // Only a self-loop: the largest component is a single node.
    fs::write(dir.join("loop_only.txt"), "x x\n").unwrap();
    // Malformed line.
    fs::write(dir.join("broken.txt"), "lonely\n").unwrap();
}

fn collection_cfg(dir: &std::path::Path) -> ExperimentConfig {
    ExperimentConfig {
        kind: Kind::CollectionReal,
        family: None,
        input_dir: Some(dir.to_path_buf()),
        sizes: vec![],
        k_avg: 10.0,
        algorithms: vec![
            Treatment::Graph,
            Treatment::Tree(Algorithm::Bfs),
            Treatment::Tree(Algorithm::Dfs),
        ],
        realizations: 4,
        base_seed: 123,
        metric_mode: MetricMode::Exact,
        sources: None,
        measures: vec![],
    }
}

#[test]
fn collection_skips_bad_files_and_counts_records() {
    let dir = tempfile::tempdir().unwrap();
    write_inputs(dir.path());
    let out = run(&collection_cfg(dir.path())).unwrap();

    // One usable subject × 3 treatments × 4 realizations.
    assert_eq!(out.record_count(), 12);
    assert_eq!(out.skips.len(), 2);
    let reasons: Vec<&str> = out.skips.iter().map(|s| s.reason.as_str()).collect();
    assert!(reasons.iter().any(|r| r.contains("degenerate")));
    assert!(reasons.iter().any(|r| r.contains("parse error")));
}

#[test]
fn collection_records_carry_consistent_metrics() {
    let dir = tempfile::tempdir().unwrap();
    write_inputs(dir.path());
    let out = run(&collection_cfg(dir.path())).unwrap();
    let RunTables::Distance {
        records,
        aggregates,
    } = out.tables
    else {
        panic!("distance tables expected");
    };
    for rec in &records {
        assert!(rec.error.is_none(), "unexpected error: {:?}", rec.error);
        if rec.algorithm != "graph" {
            // Trees of the 5-node bowtie have 4 edges.
            assert_eq!(rec.m, Some(4));
        }
    }
    assert_eq!(aggregates.len(), 3);
    for agg in &aggregates {
        assert_eq!(agg.count, 4);
    }

    // Collection-level min/max ranges fall out of the per-file records.
    let graph_rows: Vec<_> = records.iter().filter(|r| r.algorithm == "graph").collect();
    let n_min = graph_rows.iter().map(|r| r.n.unwrap()).min().unwrap();
    let n_max = graph_rows.iter().map(|r| r.n.unwrap()).max().unwrap();
    let m_max = graph_rows.iter().map(|r| r.m.unwrap()).max().unwrap();
    assert_eq!((n_min, n_max, m_max), (5, 5, 6));
}

#[test]
fn correlation_matrix_shape_and_star_cells() {
    let dir = tempfile::tempdir().unwrap();
    // A star: its unique spanning tree is the graph itself, so every cell
    // correlates perfectly.
    fs::write(dir.path().join("star.txt"), "c a\nc b\nc d\nc e\nc f\n").unwrap();
    let cfg = ExperimentConfig {
        kind: Kind::Correlation,
        family: None,
        input_dir: Some(dir.path().to_path_buf()),
        sizes: vec![],
        k_avg: 10.0,
        algorithms: vec![
            Treatment::Tree(Algorithm::Bfs),
            Treatment::Tree(Algorithm::Kruskal),
            Treatment::Tree(Algorithm::Prim),
        ],
        realizations: 3,
        base_seed: 5,
        metric_mode: MetricMode::Exact,
        sources: None,
        measures: vec![Measure::Degree, Measure::Closeness, Measure::Betweenness],
    };
    let out = run(&cfg).unwrap();
    let RunTables::Correlation {
        records,
        aggregates,
    } = out.tables
    else {
        panic!("correlation tables expected");
    };
    assert_eq!(aggregates.len(), 9);
    assert_eq!(records.len(), 27);
    for agg in &aggregates {
        assert_eq!(agg.r_mean, Some(1.0), "{}/{}", agg.algorithm, agg.measure);
    }
}

#[test]
fn degenerate_correlation_cell_is_na() {
    let dir = tempfile::tempdir().unwrap();
    // A 4-cycle has constant degree centrality: correlation undefined.
    fs::write(dir.path().join("cycle.txt"), "a b\nb c\nc d\nd a\n").unwrap();
    let cfg = ExperimentConfig {
        kind: Kind::Correlation,
        family: None,
        input_dir: Some(dir.path().to_path_buf()),
        sizes: vec![],
        k_avg: 10.0,
        algorithms: vec![Treatment::Tree(Algorithm::Bfs)],
        realizations: 2,
        base_seed: 5,
        metric_mode: MetricMode::Exact,
        sources: None,
        measures: vec![Measure::Degree],
    };
    let out = run(&cfg).unwrap();
    let csv = out.aggregate_csv().unwrap();
    assert!(csv.contains("NA"), "aggregate csv: {csv}");
    let RunTables::Correlation { aggregates, .. } = out.tables else {
        panic!("correlation tables expected");
    };
    assert_eq!(aggregates[0].r_mean, None);
    assert!(aggregates[0].error.is_some());
}

#[test]
fn run_to_dir_writes_all_three_files() {
    let input = tempfile::tempdir().unwrap();
    write_inputs(input.path());
    let out_dir = tempfile::tempdir().unwrap();
    let cfg = collection_cfg(input.path());
    run_to_dir(&cfg, out_dir.path(), "0.1.0-test").unwrap();

    let records = fs::read_to_string(out_dir.path().join("records.csv")).unwrap();
    let aggregate = fs::read_to_string(out_dir.path().join("aggregate.csv")).unwrap();
    let meta = fs::read_to_string(out_dir.path().join("meta.json")).unwrap();
    assert!(records.lines().count() > 1);
    assert!(records.starts_with("subject,"));
    assert!(aggregate.starts_with("subject,"));
    let parsed: serde_json::Value = serde_json::from_str(&meta).unwrap();
    assert_eq!(parsed["tool"], "netspan");
    assert_eq!(parsed["records"], 12);
    assert_eq!(parsed["skips"].as_array().unwrap().len(), 2);
    assert!(parsed["config"]["base_seed"].as_u64() == Some(123));
}

#[test]
fn rerunning_collection_reproduces_tables() {
    let dir = tempfile::tempdir().unwrap();
    write_inputs(dir.path());
    let cfg = collection_cfg(dir.path());
    let a = run(&cfg).unwrap();
    let b = run(&cfg).unwrap();
    assert_eq!(a.records_csv().unwrap(), b.records_csv().unwrap());
    assert_eq!(a.aggregate_csv().unwrap(), b.aggregate_csv().unwrap());
}
