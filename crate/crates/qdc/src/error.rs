//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid cut: {0}")]
    InvalidCut(String),

    /// The cut set leaves the gate graph connected.
    #[error("cut does not separate the circuit: {0}")]
    CutDoesNotSeparate(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("schema error: {0}")]
    Schema(String),

    /// A recombination input (variant table or count file) is missing.
    #[error("incomplete input: {0}")]
    IncompleteInput(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
