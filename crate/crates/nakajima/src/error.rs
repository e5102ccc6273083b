use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("unsupported type: {0}")]
    UnsupportedType(String),
    #[error("invalid automorphism: {0}")]
    InvalidAuto(String),
    #[error("automorphism has finite order")]
    FiniteOrder,
    #[error("configuration is not admissible at {vertex}: {reason}")]
    NotAdmissible { vertex: String, reason: String },
    #[error("window exhausted after {0} extensions")]
    WindowExhausted(usize),
    #[error("resource guard: {0}")]
    ResourceGuard(String),
    #[error("bad input: {0}")]
    Input(String),
    #[error("shape mismatch: {0}")]
    Mismatch(String),
    /// An internal identity failed; indicates a bug rather than bad input.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
