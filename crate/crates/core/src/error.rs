use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("composition position {position} out of range for arity {arity}")]
    PositionOutOfRange { position: usize, arity: usize },

    #[error("element is not in normal form: {0}")]
    NotNormal(String),

    #[error("inexact polynomial division")]
    InexactDivision,

    #[error("{divisor} does not divide {n}")]
    NotDivisor { n: u64, divisor: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("integrality failure: {0}")]
    Integrality(String),

    #[error("invalid document: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
