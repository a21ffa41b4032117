use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },

    #[error("cycle enumeration exceeded its budget of {budget} path extensions")]
    CycleBudgetExceeded { budget: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("probability domain error: {0}")]
    Probability(String),

    #[error("random regular generation failed after {attempts} restarts (n = {n}, r = {r})")]
    RestartBudgetExhausted { n: usize, r: usize, attempts: u32 },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("grid point {index}: {source}")]
    GridPoint {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("trial {trial} of grid point {index} failed ({completed} records written to {partial:?}): {source}")]
    TrialFailed {
        index: usize,
        trial: usize,
        completed: usize,
        partial: Option<PathBuf>,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by the filesystem rather than by the inputs.
    pub fn is_io(&self) -> bool {
        match self {
            Error::Io { .. } => true,
            Error::GridPoint { source, .. } | Error::TrialFailed { source, .. } => source.is_io(),
            _ => false,
        }
    }
}
