use thiserror::Error;

/// Failure modes shared by every operation in the crate.
///
/// The variants are coarse on purpose: callers (the CLI in particular) map
/// each one onto a stable exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("invalid input: {0}")]
    Input(String),
    /// A documented precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A time or memory budget would be exceeded.
    #[error("resource limit: {0}")]
    Resource(String),
    /// Missing or contradictory configuration (known constants, flags).
    #[error("configuration error: {0}")]
    Config(String),
    /// A self-check failed; the result cannot be trusted.
    #[error("integrity check failed: {0}")]
    Integrity(String),
    /// An internal invariant broke.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! input_err {
    ($($arg:tt)*) => { $crate::error::Error::Input(format!($($arg)*)) };
}
pub(crate) use input_err;
