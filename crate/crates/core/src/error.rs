use alloc::string::String;

/// Errors raised by the algorithmic core.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid profile (n={n}, k={k}, l={l}): {reason}")]
    InvalidProfile {
        n: usize,
        k: usize,
        l: usize,
        reason: &'static str,
    },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("cannot parse vector: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degenerate instance: {0}")]
    Degenerate(String),
    #[error("instance too large: {size} exceeds cap {cap}")]
    TooLarge { size: usize, cap: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
