use thiserror::Error;

/// Errors raised by game construction, measurement building, and search.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty input sequence")]
    EmptyInput,

    #[error("state vector is not normalized (norm^2 = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),

    #[error("states cannot be unambiguously discriminated: {0}")]
    UnambiguousImpossible(&'static str),

    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(&'static str),

    #[error("invalid game: need 2 <= n < d, got d = {d}, n = {n}")]
    InvalidGame { d: usize, n: usize },

    #[error("malformed strategy: {0}")]
    Strategy(&'static str),

    #[error("search space too large: {size} strategies exceeds guard {guard}")]
    TooLarge { size: u64, guard: u64 },

    #[error("unsupported: {0}")]
    Unsupported(&'static str),

    #[error("invalid input: {0}")]
    InvalidInput(&'static str),

    #[error("infeasible constraint: {0}")]
    Infeasible(&'static str),
}
