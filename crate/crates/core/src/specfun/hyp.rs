//! Gauss hypergeometric function ₂F₁ by direct series summation.

use super::gamma::log_gamma;
use super::scaled::Scaled;
use super::SeriesControl;
use crate::error::{Error, Result};

/// ₂F₁(a, b; c; x) for c > 0 and x ∈ (−1, 1], with x = 1 admitted only when
/// c − a − b > 0 (Gauss summation).
///
/// At x > 0.5 with c − a − b > 0 the Euler transformation
/// (1−x)^(c−a−b) ₂F₁(c−a, c−b; c; x) is applied when it shrinks the early
/// term ratio; otherwise the series is summed as written.
pub fn gauss_2f1(a: f64, b: f64, c: f64, x: f64, ctrl: &SeriesControl) -> Result<f64> {
    if !(c > 0.0) || !a.is_finite() || !b.is_finite() || !x.is_finite() {
        return Err(Error::domain(
            "gauss_2f1",
            format!("need finite a, b, x and c > 0, got a={a}, b={b}, c={c}, x={x}"),
        ));
    }
    if x == 1.0 {
        return gauss_summation(a, b, c);
    }
    if x.abs() >= 1.0 {
        return Err(Error::domain(
            "gauss_2f1",
            format!("series defined for |x| < 1 (or x = 1 with c-a-b > 0), got x={x}"),
        ));
    }
    let cab = c - a - b;
    if x > 0.5 && cab > 0.0 && c - a > 0.0 && c - b > 0.0 && (c - a) * (c - b) < a * b {
        let v = gauss_2f1_scaled(c - a, c - b, c, x, ctrl)?;
        return Ok(Scaled::from_ln(cab * (1.0 - x).ln(), 1.0).mul(&v).to_f64());
    }
    Ok(gauss_2f1_scaled(a, b, c, x, ctrl)?.to_f64())
}

/// Series sum of ₂F₁ in extended-range arithmetic; the workhorse behind
/// both [`gauss_2f1`] and the Appell F₄ reduction, where the parameters
/// grow with the outer index and the value overflows f64 long before the
/// series misbehaves.
pub(crate) fn gauss_2f1_scaled(
    a: f64,
    b: f64,
    c: f64,
    x: f64,
    ctrl: &SeriesControl,
) -> Result<Scaled> {
    let mut term = Scaled::ONE;
    let mut sum = Scaled::ONE;
    let mut small_streak = 0usize;
    for k in 0..ctrl.max_terms {
        let kf = k as f64;
        let ratio = (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        term = term.mul_f64(ratio);
        if term.is_zero() {
            return Ok(sum);
        }
        sum = sum.add(&term);
        if term.abs_ratio(&sum) < ctrl.tolerance {
            small_streak += 1;
            if small_streak >= 2 {
                return Ok(sum);
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::Convergence {
        op: "gauss_2f1",
        terms: ctrl.max_terms,
        partial: sum.to_f64(),
    })
}

/// Gauss summation ₂F₁(a, b; c; 1) = Γ(c)Γ(c−a−b) / (Γ(c−a)Γ(c−b)).
fn gauss_summation(a: f64, b: f64, c: f64) -> Result<f64> {
    if c - a - b <= 0.0 {
        return Err(Error::domain(
            "gauss_2f1",
            format!("divergent at x = 1: c-a-b = {} <= 0", c - a - b),
        ));
    }
    if c - a <= 0.0 || c - b <= 0.0 {
        return Err(Error::domain(
            "gauss_2f1",
            "Gauss summation needs c-a > 0 and c-b > 0",
        ));
    }
    Ok((log_gamma(c)? + log_gamma(c - a - b)? - log_gamma(c - a)? - log_gamma(c - b)?).exp())
}
