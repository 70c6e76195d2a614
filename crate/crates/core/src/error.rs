use std::path::PathBuf;

use thiserror::Error;

/// Library error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("placement has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("omega must lie in [0, 1], got {0}")]
    InvalidOmega(f64),

    #[error("scenario has no fog nodes")]
    EmptyFogSet,

    #[error("scenario has no edge nodes")]
    EmptyEdgeSet,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{}: {source}", path.display())]
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

    /// True for errors caused by malformed input rather than the environment.
    pub fn is_config(&self) -> bool {
        !matches!(self, Error::Io { .. })
    }
}
