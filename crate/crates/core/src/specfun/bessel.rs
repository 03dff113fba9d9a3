//! Modified Bessel functions: K_ν by Temme's series / Steed's continued
//! fraction with upward recurrence in the order, I_ν through the ₀F₁
//! identity ₀F₁(;b;x) = Γ(b) x^((1−b)/2) I_{b−1}(2√x).

use super::gamma::log_gamma;
use super::scaled::Scaled;
use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const MAX_ITER: usize = 10_000;
/// switch point between the Temme series and the continued fraction
const X_MIN: f64 = 2.0;

/// K_ν(x) for ν > 0, x > 0. Values above f64 range saturate to +∞; use the
/// Matérn path (which works in logs) for extreme order/argument pairs.
pub fn bessel_k(order: f64, x: f64) -> Result<f64> {
    let (ln_k, _) = bessel_k_ln(order, x)?;
    Ok(ln_k.exp())
}

/// (ln K_ν(x), ln K_{ν+1}(x)); keeps the upward recurrence in extended
/// range so large orders at small arguments stay representable.
pub(crate) fn bessel_k_ln(order: f64, x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "bessel_k",
            format!("argument must be positive, got {x}"),
        ));
    }
    if !(order > 0.0) || !order.is_finite() {
        return Err(Error::domain(
            "bessel_k",
            format!("order must be positive, got {order}"),
        ));
    }
    let nl = (order + 0.5).floor() as usize;
    let mu = order - nl as f64;
    let (k_mu, k_mu1) = if x < X_MIN {
        temme_series(mu, x)?
    } else {
        steed_cf2(mu, x)?
    };
    let mut lo = Scaled::from_f64(k_mu);
    let mut hi = Scaled::from_f64(k_mu1);
    for i in 1..=nl {
        let next = hi.mul_f64((mu + i as f64) * 2.0 / x).add(&lo);
        lo = hi;
        hi = next;
    }
    Ok((lo.ln_abs(), hi.ln_abs()))
}

/// K_μ and K_{μ+1} for |μ| ≤ 1/2 and 0 < x < 2 (Temme 1975).
fn temme_series(mu: f64, x: f64) -> Result<(f64, f64)> {
    let x2 = 0.5 * x;
    let mu2 = mu * mu;
    let pimu = std::f64::consts::PI * mu;
    let fact = if pimu.abs() < EPS {
        1.0
    } else {
        pimu / pimu.sin()
    };
    let d = -x2.ln();
    let e = mu * d;
    let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
    let (gam1, gam2, gampl, gammi) = temme_gammas(mu)?;
    let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let mut sum = ff;
    let ee = e.exp();
    let mut p = 0.5 * ee / gampl;
    let mut q = 0.5 / (ee * gammi);
    let mut c = 1.0;
    let d2 = x2 * x2;
    let mut sum1 = p;
    let mut converged = false;
    for i in 1..=MAX_ITER {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - mu2);
        c *= d2 / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        let del1 = c * (p - fi * ff);
        sum1 += del1;
        if del.abs() < sum.abs() * EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence {
            op: "bessel_k",
            terms: MAX_ITER,
            partial: sum,
        });
    }
    Ok((sum, sum1 * 2.0 / x))
}

/// Coefficient functions of Temme's expansion:
/// Γ₁ = [1/Γ(1−μ) − 1/Γ(1+μ)]/(2μ), Γ₂ = [1/Γ(1−μ) + 1/Γ(1+μ)]/2,
/// plus 1/Γ(1+μ) and 1/Γ(1−μ) themselves.
fn temme_gammas(mu: f64) -> Result<(f64, f64, f64, f64)> {
    // Taylor coefficients of 1/Γ(1+z)
    const D: [f64; 9] = [
        1.0,
        0.5772156649015329,
        -0.6558780715202538,
        -0.0420026350340952,
        0.1665386113822915,
        -0.0421977345555443,
        -0.0096219715278770,
        0.0072189432466630,
        -0.0011651675918591,
    ];
    if mu.abs() < 0.01 {
        let m2 = mu * mu;
        let gam1 = -(D[1] + m2 * (D[3] + m2 * (D[5] + m2 * D[7])));
        let gam2 = D[0] + m2 * (D[2] + m2 * (D[4] + m2 * (D[6] + m2 * D[8])));
        Ok((gam1, gam2, gam2 - mu * gam1, gam2 + mu * gam1))
    } else {
        let gampl = (-log_gamma(1.0 + mu)?).exp();
        let gammi = (-log_gamma(1.0 - mu)?).exp();
        Ok(((gammi - gampl) / (2.0 * mu), (gammi + gampl) / 2.0, gampl, gammi))
    }
}

/// K_μ and K_{μ+1} for |μ| ≤ 1/2 and x ≥ 2 via Steed's continued fraction.
fn steed_cf2(mu: f64, x: f64) -> Result<(f64, f64)> {
    let mu2 = mu * mu;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu2;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    let mut converged = false;
    for i in 2..=MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence {
            op: "bessel_k",
            terms: MAX_ITER,
            partial: s,
        });
    }
    h = a1 * h;
    let k_mu = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp() / s;
    let k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
    Ok((k_mu, k_mu1))
}

/// ln ₀F₁(;b;q) = ln Σ_k q^k / (k! (b)_k) for q ≥ 0, b > 0.
pub(crate) fn hyp0f1_ln(b: f64, q: f64) -> Result<f64> {
    if !(b > 0.0) || !(q >= 0.0) || !q.is_finite() {
        return Err(Error::domain(
            "hyp0f1",
            format!("need b > 0 and q >= 0, got b={b}, q={q}"),
        ));
    }
    let mut term = Scaled::ONE;
    let mut sum = Scaled::ONE;
    for k in 0..200_000usize {
        let kf = k as f64;
        term = term.mul_f64(q / ((kf + 1.0) * (b + kf)));
        if term.is_zero() {
            return Ok(sum.ln_abs());
        }
        sum = sum.add(&term);
        if term.abs_ratio(&sum) < EPS {
            return Ok(sum.ln_abs());
        }
    }
    Err(Error::Convergence {
        op: "hyp0f1",
        terms: 200_000,
        partial: sum.to_f64(),
    })
}

/// I_ν(x) for ν > −1 and x ≥ 0.
pub fn bessel_i(order: f64, x: f64) -> Result<f64> {
    Ok(bessel_i_ln(order, x)?.exp())
}

/// ln I_ν(x); −∞ when I vanishes (x = 0, ν > 0).
pub fn bessel_i_ln(order: f64, x: f64) -> Result<f64> {
    if !(order > -1.0) || !order.is_finite() {
        return Err(Error::domain(
            "bessel_i",
            format!("order must exceed -1, got {order}"),
        ));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "bessel_i",
            format!("argument must be nonnegative, got {x}"),
        ));
    }
    if x == 0.0 {
        return Ok(if order == 0.0 { 0.0 } else { f64::NEG_INFINITY });
    }
    let half = x / 2.0;
    Ok(order * half.ln() - log_gamma(order + 1.0)? + hyp0f1_ln(order + 1.0, half * half)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn k_half_closed(x: f64) -> f64 {
        (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp()
    }

    #[test]
    fn half_integer_closed_forms() {
        for &x in &[0.05, 0.5, 1.0, 2.0, 7.5, 40.0] {
            let k12 = k_half_closed(x);
            let k32 = k12 * (1.0 + 1.0 / x);
            let k52 = k12 * (1.0 + 3.0 / x + 3.0 / (x * x));
            assert_relative_eq!(bessel_k(0.5, x).unwrap(), k12, max_relative = 1e-12);
            assert_relative_eq!(bessel_k(1.5, x).unwrap(), k32, max_relative = 1e-12);
            assert_relative_eq!(bessel_k(2.5, x).unwrap(), k52, max_relative = 1e-12);
        }
        assert_relative_eq!(bessel_k(0.5, 1.0).unwrap(), 0.4610685044, max_relative = 1e-9);
        assert_relative_eq!(bessel_k(0.5, 2.0).unwrap(), 0.1199377230, max_relative = 1e-8);
        assert_relative_eq!(bessel_k(1.5, 1.0).unwrap(), 0.9221370089, max_relative = 1e-9);
    }

    #[test]
    fn k_domain_errors() {
        assert!(bessel_k(1.0, 0.0).is_err());
        assert!(bessel_k(1.0, -1.0).is_err());
        assert!(bessel_k(0.0, 1.0).is_err());
        assert!(bessel_k(-2.0, 1.0).is_err());
    }

    #[test]
    fn i_small_argument_values() {
        assert_eq!(bessel_i(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i(0.7, 0.0).unwrap(), 0.0);
        // 30-term power-series oracle for I_0(1)
        let mut oracle = 0.0;
        let mut t = 1.0;
        for k in 0..30 {
            oracle += t;
            let kf = k as f64 + 1.0;
            t *= 0.25 / (kf * kf);
        }
        assert_relative_eq!(bessel_i(0.0, 1.0).unwrap(), oracle, max_relative = 1e-13);
        assert_relative_eq!(bessel_i(0.0, 1.0).unwrap(), 1.2660658777520084, max_relative = 1e-12);
    }

    #[test]
    fn i_half_integer_closed_form() {
        // I_{1/2}(x) = sqrt(2/(pi x)) sinh(x)
        for &x in &[0.3, 1.0, 5.0, 30.0] {
            let closed = (2.0 / (std::f64::consts::PI * x)).sqrt() * x.sinh();
            assert_relative_eq!(bessel_i(0.5, x).unwrap(), closed, max_relative = 1e-12);
        }
    }

    #[test]
    fn i_log_form_handles_huge_arguments() {
        // I_0(700) overflows f64; the log form must not.
        let ln_i = bessel_i_ln(0.0, 700.0).unwrap();
        // asymptotic e^x / sqrt(2 pi x)
        let asym = 700.0 - 0.5 * (2.0 * std::f64::consts::PI * 700.0).ln();
        assert_relative_eq!(ln_i, asym, max_relative = 1e-3);
        assert_eq!(bessel_i(0.0, 700.0).unwrap(), f64::INFINITY);
    }

    #[test]
    fn wronskian_check_k_i() {
        // K_{nu+1}(x) I_nu(x) + K_nu(x) I_{nu+1}(x) = 1/x
        for &(nu, x) in &[(0.3, 0.7), (1.2, 3.0), (2.8, 9.0), (0.5, 1.3)] {
            let (ln_k, ln_k1) = bessel_k_ln(nu, x).unwrap();
            let lhs = (ln_k1 + bessel_i_ln(nu, x).unwrap()).exp()
                + (ln_k + bessel_i_ln(nu + 1.0, x).unwrap()).exp();
            assert_relative_eq!(lhs, 1.0 / x, max_relative = 1e-11);
        }
    }
}
