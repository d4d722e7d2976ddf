use thiserror::Error;

/// Errors raised by the library. The CLI maps these onto exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix has non-integer entries; use rank_rational instead")]
    RationalEntries,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("differentials do not compose to zero ({0})")]
    NonzeroComposition(String),

    #[error("{0}")]
    Precondition(String),

    #[error("class index {index} out of range: H^{{{p},{q}}} has rank {rank}")]
    ClassIndex {
        p: usize,
        q: usize,
        index: usize,
        rank: usize,
    },

    #[error("degree mismatch: cochain degree {cochain}, chain degree {chain}")]
    DegreeMismatch { cochain: usize, chain: usize },

    #[error("no kernel exists: {0}")]
    NoKernel(String),

    #[error("resolvent identity failed: {0}")]
    Resolvent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
