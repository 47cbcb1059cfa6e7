use std::io;
use std::path::PathBuf;

use graphfx_core::{GraphError, PrimitiveError};
use thiserror::Error;

pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_DATA: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("graph: {0}")]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Primitive(#[from] PrimitiveError),
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("report encoding: {0}")]
    Encode(String),
}

impl CliError {
    /// Bad flags, bad sources and unwritable outputs are configuration
    /// errors; anything wrong with the graph itself is a data error.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Output { .. } | CliError::Encode(_) => EXIT_CONFIG,
            CliError::Graph(GraphError::InvalidParameter(_) | GraphError::InvalidProbabilities { .. }) => {
                EXIT_CONFIG
            }
            CliError::Graph(_) => EXIT_DATA,
            CliError::Primitive(PrimitiveError::InvalidSource { .. } | PrimitiveError::InvalidOption(_)) => {
                EXIT_CONFIG
            }
            CliError::Primitive(_) => EXIT_DATA,
        }
    }
}
