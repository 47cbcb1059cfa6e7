use std::path::PathBuf;

use thiserror::Error;

use crate::frontier::FrontierKind;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: negative edge weight {value}")]
    NegativeWeight { line: usize, value: f64 },
    #[error("vertex {vertex} out of range for {num_vertices} vertices")]
    VertexOutOfRange { vertex: u64, num_vertices: usize },
    #[error("{edges} edges exceed the 32-bit edge id space")]
    TooLarge { edges: u64 },
    #[error("R-MAT probabilities sum to {sum}, expected 1")]
    InvalidProbabilities { sum: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid graph: {0}")]
    Invalid(String),
    #[error("bad binary cache: {0}")]
    BadCache(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OperatorError {
    #[error("{operator} expects a {expected:?} frontier, got {found:?}")]
    KindMismatch {
        operator: &'static str,
        expected: FrontierKind,
        found: FrontierKind,
    },
    #[error("pull traversal requires the reverse adjacency and auto-build is disabled")]
    MissingReverse,
    #[error("aligned frontiers differ in length ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("near slice must be empty before advancing the priority bucket")]
    NearNotEmpty,
}

#[derive(Debug, Error)]
pub enum PrimitiveError {
    #[error("source vertex {source_vertex} out of range for {num_vertices} vertices")]
    InvalidSource {
        source_vertex: u64,
        num_vertices: usize,
    },
    #[error("{0} requires an undirected graph")]
    DirectedInput(&'static str),
    #[error("invalid option: {0}")]
    InvalidOption(String),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}
