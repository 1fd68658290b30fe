use thiserror::Error;

/// Errors produced by graph construction, parsing, and the verification drivers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph has {0} vertices; at most {max} are supported", max = crate::graph::MAX_VERTICES)]
    TooManyVertices(usize),

    #[error("malformed graph6 at byte {offset}: {reason}")]
    MalformedGraph6 { offset: usize, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("n = {n} exceeds the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("fingerprint cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
