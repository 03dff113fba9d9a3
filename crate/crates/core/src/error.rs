//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the numerical kernels and estimation routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    /// A series did not reach the requested tolerance; the partial sum and
    /// the number of accumulated terms are carried for diagnostics.
    #[error("series in {op} did not converge after {terms} terms (partial value {partial:e})")]
    Convergence {
        op: &'static str,
        terms: usize,
        partial: f64,
    },

    /// Dimension exceeds a hard structural limit (e.g. the 2^(n-1)-term
    /// joint skew-Gaussian density).
    #[error("{op}: dimension {dim} exceeds the supported maximum {max}")]
    UnsupportedDimension {
        op: &'static str,
        dim: usize,
        max: usize,
    },

    /// A matrix that must be positive definite failed its Cholesky
    /// factorization even after a single jitter attempt.
    #[error("{op}: matrix is not positive definite")]
    NotPositiveDefinite { op: &'static str },

    /// A linear system or information matrix is singular.
    #[error("{op}: singular matrix")]
    Singular { op: &'static str },

    /// Invalid dataset contents or shapes.
    #[error("data error: {0}")]
    Data(String),

    /// Estimation failure (objective evaluation or bootstrap breakdown).
    #[error("fit error: {0}")]
    Fit(String),

    /// Operation is defined but intentionally not supported for these
    /// arguments; the message points at the supported alternative.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain {
            op,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
