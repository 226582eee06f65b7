//! Distance statistics against independent oracles: Floyd–Warshall for the
//! BFS paths, full re-aggregation for the pair statistics, and the exact
//! computation for the sampled estimator.

mod common;

use proptest::prelude::*;

use netspan::generators;
use netspan::graph::NodeId;
use netspan::metrics::{distance_stats_exact, distance_stats_sampled, sssp_bfs, Mode, UNREACHABLE};
use netspan::spanning::bfs_tree;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sssp_matches_floyd_warshall(
        n in 2usize..25,
        extra in 0usize..25,
        seed in 0u64..500,
    ) {
        let g = common::random_connected_graph(n, extra, seed);
        let oracle = common::floyd_warshall(&g);
        for s in 0..n as NodeId {
            let dist = sssp_bfs(&g, s);
            for j in 0..n {
                prop_assert_eq!(u64::from(dist[j]), oracle[s as usize][j]);
            }
        }
    }

    #[test]
    fn exact_stats_match_reaggregation(
        n in 2usize..25,
        extra in 0usize..25,
        seed in 0u64..500,
    ) {
        let g = common::random_connected_graph(n, extra, seed);
        let stats = distance_stats_exact(&g).unwrap();

        // Recompute from scratch out of the per-source vectors.
        let mut values: Vec<f64> = Vec::new();
        let mut d_max = 0u32;
        for s in 0..n as NodeId {
            for (j, &d) in sssp_bfs(&g, s).iter().enumerate() {
                if (j as NodeId) > s {
                    prop_assert_ne!(d, UNREACHABLE);
                    values.push(f64::from(d));
                    d_max = d_max.max(d);
                }
            }
        }
        let count = values.len() as f64;
        let mean = values.iter().sum::<f64>() / count;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / count;
        prop_assert!((stats.d_avg - mean).abs() < 1e-12);
        prop_assert!((stats.d_std - var.sqrt()).abs() < 1e-9);
        prop_assert_eq!(stats.d_max, d_max);
        prop_assert_eq!(stats.n_pairs, (n * (n - 1) / 2) as u64);
    }

    #[test]
    fn bfs_tree_stats_dominate_graph_stats(
        n in 3usize..30,
        extra in 1usize..30,
        graph_seed in 0u64..500,
        tree_seed in 0u64..500,
    ) {
        let g = common::random_connected_graph(n, extra, graph_seed);
        let t = bfs_tree(&g, tree_seed).unwrap();
        let gs = distance_stats_exact(&g).unwrap();
        let ts = distance_stats_exact(&t.tree).unwrap();
        prop_assert!(ts.d_avg >= gs.d_avg - 1e-12);
        prop_assert!(ts.d_max >= gs.d_max);
        prop_assert!(ts.d_max <= 2 * gs.d_max);
    }
}

#[test]
fn sampled_estimate_tracks_exact_on_er_4096() {
    let g = generators::erdos_renyi(4096, 10.0, 31)
        .unwrap()
        .largest_connected_component()
        .unwrap();
    let exact = distance_stats_exact(&g).unwrap();
    let sampled = distance_stats_sampled(&g, 256, 77).unwrap();
    let rel = (sampled.d_avg - exact.d_avg).abs() / exact.d_avg;
    assert!(rel < 0.02, "relative error {rel}");
    assert!(sampled.d_max <= exact.d_max);
    assert_eq!(sampled.mode, Mode::Sampled { sources: 256 });
    assert_eq!(sampled.n_pairs, 256 * (g.n() as u64 - 1));
}

#[test]
fn lattice_distance_scaling_slope_near_half() {
    // d_max and d_avg of an L×L lattice grow like √n: log–log slope ≈ 0.5.
    let mut ln_n = Vec::new();
    let mut ln_davg = Vec::new();
    let mut ln_dmax = Vec::new();
    for l in [16usize, 32, 64] {
        let g = generators::triangular_lattice(l * l).unwrap();
        let s = distance_stats_exact(&g).unwrap();
        ln_n.push((g.n() as f64).ln());
        ln_davg.push(s.d_avg.ln());
        ln_dmax.push(f64::from(s.d_max).ln());
    }
    let slope = |ys: &[f64]| {
        let n = ln_n.len() as f64;
        let mx = ln_n.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let num: f64 = ln_n.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let den: f64 = ln_n.iter().map(|x| (x - mx) * (x - mx)).sum();
        num / den
    };
    let s_avg = slope(&ln_davg);
    let s_max = slope(&ln_dmax);
    assert!((s_avg - 0.5).abs() < 0.05, "d_avg slope {s_avg}");
    assert!((s_max - 0.5).abs() < 0.05, "d_max slope {s_max}");
}

#[test]
fn lattice_diameter_is_two_l_minus_two() {
    // Opposite off-diagonal corners need |dr| + |dc| steps.
    for l in [4usize, 8, 16] {
        let g = generators::triangular_lattice(l * l).unwrap();
        let s = distance_stats_exact(&g).unwrap();
        assert_eq!(s.d_max, 2 * (l as u32 - 1));
    }
}
