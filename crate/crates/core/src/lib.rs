//! Spanning trees of unweighted networks.
//!
//! Builds spanning trees of connected graphs with four seeded algorithms
//! (randomized Prim, randomized Kruskal, breadth-first and depth-first
//! traversal) and quantifies how well each tree preserves the network's
//! distance structure, centrality rankings and degree distribution.
//! Includes generators for the synthetic families used in scaling studies,
//! edge-list ingestion for real networks, and a batch experiment harness
//! emitting plot-ready CSV tables.
//!
//! ```
//! use netspan::{generators, metrics, spanning};
//!
//! let g = generators::erdos_renyi(250, 10.0, 42)
//!     .unwrap()
//!     .largest_connected_component()
//!     .unwrap();
//! let t = spanning::bfs_tree(&g, 7).unwrap();
//! assert!(spanning::verify_spanning_tree(&g, &t).is_ok());
//!
//! let gs = metrics::distance_stats_exact(&g).unwrap();
//! let ts = metrics::distance_stats_exact(&t.tree).unwrap();
//! assert!(ts.d_avg >= gs.d_avg); // a spanning subgraph never shortens paths
//! ```

pub mod centrality;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod metrics;
pub mod rng;
pub mod spanning;
pub mod stats;

pub use centrality::{CentralityVector, Measure};
pub use error::{Error, Result};
pub use graph::{parse_edge_list, EdgeList, Graph, NodeId};
pub use metrics::DistanceStats;
pub use spanning::{verify_spanning_tree, Algorithm, SpanningTree};
pub use stats::{CorrelationReport, PowerLawFit};
