//! Log-gamma, Pochhammer and Gaussian helpers.

use crate::error::{Error, Result};

/// ln Γ(x) for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::domain(
            "log_gamma",
            format!("argument must be a positive real, got {x}"),
        ));
    }
    Ok(statrs::function::gamma::ln_gamma(x))
}

/// ln (s)_k = ln Γ(s+k) − ln Γ(s) for s > 0.
pub fn pochhammer_log(s: f64, k: u32) -> Result<f64> {
    if !s.is_finite() || s <= 0.0 {
        return Err(Error::domain(
            "pochhammer_log",
            format!("base must be a positive real, got {s}"),
        ));
    }
    if k == 0 {
        return Ok(0.0);
    }
    Ok(log_gamma(s + f64::from(k))? - log_gamma(s)?)
}

/// ln B(a, b) for a, b > 0.
pub fn beta_ln(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) || !(b > 0.0) {
        return Err(Error::domain(
            "beta_ln",
            format!("arguments must be positive, got ({a}, {b})"),
        ));
    }
    Ok(statrs::function::beta::ln_beta(a, b))
}

/// Standard normal CDF Φ(x).
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(-x * std::f64::consts::FRAC_1_SQRT_2)
}

/// Standard normal density φ(x).
pub fn normal_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Standard normal quantile Φ⁻¹(p); clamps p into (0, 1).
pub fn normal_quantile(p: f64) -> f64 {
    use statrs::distribution::ContinuousCDF;
    let p = p.clamp(1e-300, 1.0 - 1e-16);
    statrs::distribution::Normal::new(0.0, 1.0)
        .expect("standard normal")
        .inverse_cdf(p)
}
