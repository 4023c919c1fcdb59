use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the exact and numeric layers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("range error: {0}")]
    Range(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// A matrix entry needs a coefficient the backing window does not store.
    #[error("coefficient {index} is outside the stored window [{lo}, {hi}]")]
    OutsideWindow { index: i64, lo: i64, hi: i64 },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("sampling error: {0}")]
    Sampling(String),

    #[error("root finder did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize, best: Vec<Complex64> },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
