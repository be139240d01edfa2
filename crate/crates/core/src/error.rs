use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the region where the routine's error model holds.
    #[error("domain error: {0}")]
    Domain(String),
    /// A lookup fell outside a table, sieve, or scan range.
    #[error("range error: {0}")]
    Range(String),
    /// An iterative or adaptive routine did not reach its tolerance.
    #[error("convergence error: {0}")]
    Convergence(String),
    /// Malformed configuration or report input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}
macro_rules! range {
    ($($arg:tt)*) => { $crate::error::Error::Range(format!($($arg)*)) };
}
pub(crate) use domain;
pub(crate) use range;
