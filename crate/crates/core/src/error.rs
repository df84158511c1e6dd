use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed notation at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    #[error("invalid grid diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid grid state: {0}")]
    InvalidState(String),

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("index {index} out of range for grid of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("grid of size {size} exceeds the oracle limit of {limit}")]
    OracleTooLarge { size: usize, limit: usize },

    /// A mathematical invariant was violated; this can only be a bug.
    #[error("internal consistency violation: {0}")]
    Internal(String),

    #[error("knot {knot}: Alexander grading {alexander} of the perfect state differs from the genus {genus}")]
    GenusMismatch {
        knot: String,
        alexander: i64,
        genus: i64,
    },

    #[error("{path}: missing column {column:?}")]
    MissingColumn { path: PathBuf, column: String },

    #[error("{path}: no valid rows")]
    NoValidRows { path: PathBuf },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(offset: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            reason: reason.into(),
        }
    }

    pub(crate) fn invalid(reason: impl Into<String>) -> Self {
        Error::InvalidDiagram(reason.into())
    }

    /// True for errors that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_) | Error::GenusMismatch { .. })
    }
}
