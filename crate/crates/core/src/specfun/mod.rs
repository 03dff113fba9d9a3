//! Scalar special-function kernels used by every density and correlation.

mod appell;
mod bessel;
mod gamma;
mod hyp;
mod mvn;
pub(crate) mod scaled;
mod student;

pub use appell::appell_f4;
pub(crate) use appell::appell_f4_scaled;
pub use bessel::{bessel_i, bessel_i_ln, bessel_k};
pub(crate) use bessel::{bessel_k_ln, hyp0f1_ln};
pub use gamma::{beta_ln, log_gamma, normal_cdf, normal_pdf, normal_quantile, pochhammer_log};
pub use hyp::gauss_2f1;
pub(crate) use hyp::gauss_2f1_scaled;
pub use mvn::{mvn_cdf, mvn_cdf_with_error, MvnCdf};
pub use student::student_t_cdf;

use crate::error::{Error, Result};

/// Truncation control for hypergeometric series.
///
/// A series is cut when its generic term falls below `tolerance` (relative
/// to the running sum); `max_terms` bounds the work and turns slow
/// convergence into an explicit error instead of a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub tolerance: f64,
    pub max_terms: usize,
}

impl SeriesControl {
    pub fn new(tolerance: f64, max_terms: usize) -> Result<Self> {
        if !(tolerance > 0.0) || !tolerance.is_finite() {
            return Err(Error::domain(
                "SeriesControl",
                format!("tolerance must be a positive real, got {tolerance}"),
            ));
        }
        if max_terms == 0 {
            return Err(Error::domain("SeriesControl", "max_terms must be >= 1"));
        }
        Ok(SeriesControl {
            tolerance,
            max_terms,
        })
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            tolerance: 1e-12,
            max_terms: 10_000,
        }
    }
}
