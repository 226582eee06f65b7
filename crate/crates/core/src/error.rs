use thiserror::Error;

use crate::graph::NodeId;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("empty input: no edges found")]
    EmptyInput,

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("graph is disconnected: node {node} is unreachable")]
    Disconnected { node: NodeId },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("correlation undefined: input vector is constant")]
    ConstantVector,

    #[error("degenerate degree sequence: {0}")]
    DegenerateFit(String),

    #[error("invalid experiment config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
