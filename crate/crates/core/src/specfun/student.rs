//! Student-t cumulative distribution via the regularized incomplete beta.

use crate::error::{Error, Result};

/// CDF of the standard Student-t distribution with `dof` degrees of freedom.
pub fn student_t_cdf(x: f64, dof: f64) -> Result<f64> {
    if !(dof > 0.0) || !dof.is_finite() {
        return Err(Error::domain(
            "student_t_cdf",
            format!("degrees of freedom must be positive, got {dof}"),
        ));
    }
    if x.is_nan() {
        return Err(Error::domain("student_t_cdf", "x is NaN"));
    }
    if x == f64::INFINITY {
        return Ok(1.0);
    }
    if x == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    let t = dof / (dof + x * x);
    let half_tail = 0.5 * statrs::function::beta::beta_reg(0.5 * dof, 0.5, t);
    Ok(if x >= 0.0 { 1.0 - half_tail } else { half_tail })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn symmetry_and_limits() {
        assert_eq!(student_t_cdf(0.0, 4.0).unwrap(), 0.5);
        assert_eq!(student_t_cdf(f64::INFINITY, 4.0).unwrap(), 1.0);
        assert_eq!(student_t_cdf(f64::NEG_INFINITY, 4.0).unwrap(), 0.0);
        for &x in &[0.1, 0.9, 2.3, 11.0] {
            for &nu in &[0.7, 1.0, 4.0, 25.0] {
                let sum = student_t_cdf(x, nu).unwrap() + student_t_cdf(-x, nu).unwrap();
                assert!((sum - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn cauchy_closed_form() {
        // dof = 1: F(x) = 1/2 + arctan(x)/pi
        for &x in &[-3.0, -0.4, 0.0, 1.0, 8.0] {
            assert_relative_eq!(
                student_t_cdf(x, 1.0).unwrap(),
                0.5 + x.atan() / std::f64::consts::PI,
                epsilon = 1e-13
            );
        }
        assert_relative_eq!(student_t_cdf(1.0, 1.0).unwrap(), 0.75, epsilon = 1e-14);
    }

    #[test]
    fn rejects_bad_dof() {
        assert!(student_t_cdf(0.0, 0.0).is_err());
        assert!(student_t_cdf(0.0, -3.0).is_err());
    }
}
