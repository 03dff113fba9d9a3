//! Appell hypergeometric function of the fourth type.
//!
//! Evaluated through its reduction to a single series of Gauss ₂F₁ values,
//!
//! F₄(a,b;c,c';w,z) = Σ_k (a)_k (b)_k z^k / (k! (c')_k) · ₂F₁(a+k, b+k; c; w),
//!
//! valid on √|w| + √|z| < 1. Terms are carried in extended-range arithmetic:
//! the Pochhammer products overflow f64 for moderate k once the degrees of
//! freedom are large.

use super::hyp::gauss_2f1_scaled;
use super::scaled::Scaled;
use super::SeriesControl;
use crate::error::{Error, Result};

/// Guard just inside the convergence boundary: inputs with
/// √|w| + √|z| above this raise a convergence error instead of silently
/// truncating a near-divergent series.
const BOUNDARY_GUARD: f64 = 0.999;

pub fn appell_f4(a: f64, b: f64, c: f64, cp: f64, w: f64, z: f64, ctrl: &SeriesControl) -> Result<f64> {
    Ok(appell_f4_scaled(a, b, c, cp, w, z, ctrl)?.to_f64())
}

pub(crate) fn appell_f4_scaled(
    a: f64,
    b: f64,
    c: f64,
    cp: f64,
    w: f64,
    z: f64,
    ctrl: &SeriesControl,
) -> Result<Scaled> {
    if !(c > 0.0) || !(cp > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(
            "appell_f4",
            format!("need finite a, b and c, c' > 0, got a={a}, b={b}, c={c}, c'={cp}"),
        ));
    }
    let radius = w.abs().sqrt() + z.abs().sqrt();
    if !radius.is_finite() || radius >= 1.0 {
        return Err(Error::domain(
            "appell_f4",
            format!("outside convergence region: sqrt|w| + sqrt|z| = {radius} >= 1"),
        ));
    }
    if radius > BOUNDARY_GUARD {
        return Err(Error::Convergence {
            op: "appell_f4",
            terms: 0,
            partial: f64::NAN,
        });
    }

    // coeff_k = (a)_k (b)_k z^k / (k! (c')_k), updated multiplicatively so
    // signs of negative parameters or z < 0 come out naturally.
    let mut coeff = Scaled::ONE;
    let mut sum = Scaled::ZERO;
    let mut small_streak = 0usize;
    for k in 0..ctrl.max_terms {
        let kf = k as f64;
        let f21 = gauss_2f1_scaled(a + kf, b + kf, c, w, ctrl)?;
        let term = coeff.mul(&f21);
        sum = sum.add(&term);
        if term.abs_ratio(&sum) < ctrl.tolerance {
            small_streak += 1;
            if small_streak >= 2 {
                return Ok(sum);
            }
        } else {
            small_streak = 0;
        }
        coeff = coeff.mul_f64((a + kf) * (b + kf) / ((kf + 1.0) * (cp + kf)) * z);
        if coeff.is_zero() {
            return Ok(sum);
        }
    }
    Err(Error::Convergence {
        op: "appell_f4",
        terms: ctrl.max_terms,
        partial: sum.to_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gauss_2f1;
    use approx::assert_relative_eq;

    fn ctrl() -> SeriesControl {
        SeriesControl::default()
    }

    /// Brute-force double sum of the defining series
    /// Σ_k Σ_m (a)_{k+m} (b)_{k+m} w^k z^m / (k! m! (c)_k (c')_m),
    /// with terms updated by ratios so nothing overflows.
    fn f4_double_sum(a: f64, b: f64, c: f64, cp: f64, w: f64, z: f64, kmax: usize) -> f64 {
        let mut total = 0.0;
        // term(k, 0) tracked along k, then inner loop over m.
        let mut row = 1.0; // term at (k, 0)
        for k in 0..=kmax {
            let kf = k as f64;
            let mut t = row;
            let mut inner = 0.0;
            for m in 0..=kmax {
                inner += t;
                let mf = m as f64;
                t *= (a + kf + mf) * (b + kf + mf) / ((mf + 1.0) * (cp + mf)) * z;
            }
            total += inner;
            row *= (a + kf) * (b + kf) / ((kf + 1.0) * (c + kf)) * w;
        }
        total
    }

    #[test]
    fn degenerate_cases() {
        // F4(a,b;c,c';0,0) = 1
        assert_relative_eq!(
            appell_f4(2.0, 3.5, 1.5, 3.0, 0.0, 0.0, &ctrl()).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        // F4(a,b;c,c';w,0) = 2F1(a,b;c;w)
        let (a, b, c, cp, w) = (1.7, 2.4, 1.5, 3.0, 0.3);
        assert_relative_eq!(
            appell_f4(a, b, c, cp, w, 0.0, &ctrl()).unwrap(),
            gauss_2f1(a, b, c, w, &ctrl()).unwrap(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn matches_brute_force_double_sum() {
        let cases = [
            (2.0, 2.0, 1.5, 3.0, 0.05, 0.1),
            (3.5, 3.5, 0.5, 3.0, 0.02, 0.4),
            (4.0, 4.0, 1.5, 3.0, 0.1, 0.2),
            (0.7, 1.2, 2.5, 0.8, 0.15, 0.15),
        ];
        for (a, b, c, cp, w, z) in cases {
            let direct = f4_double_sum(a, b, c, cp, w, z, 300);
            let reduced = appell_f4(a, b, c, cp, w, z, &ctrl()).unwrap();
            assert_relative_eq!(reduced, direct, max_relative = 1e-10);
        }
    }

    #[test]
    fn series_symmetry_in_w_c_and_z_cp() {
        // exchanging (w,c) with (z,c') leaves the double series unchanged
        let (a, b, c, cp, w, z) = (1.3, 2.2, 0.9, 1.7, 0.12, 0.22);
        let lhs = appell_f4(a, b, c, cp, w, z, &ctrl()).unwrap();
        let rhs = appell_f4(a, b, cp, c, z, w, &ctrl()).unwrap();
        assert_relative_eq!(lhs, rhs, max_relative = 1e-10);
    }

    #[test]
    fn rejects_outside_convergence_region() {
        assert!(appell_f4(1.0, 1.0, 1.0, 1.0, 0.5, 0.5, &ctrl()).is_err());
        match appell_f4(1.0, 1.0, 1.0, 1.0, 0.6, 0.15999, &ctrl()) {
            Err(Error::Convergence { .. }) => {}
            other => panic!("expected boundary-guard convergence error, got {other:?}"),
        }
    }

    #[test]
    fn large_dof_terms_overflow_f64_but_not_the_sum() {
        // parameters of the bivariate t density with nu = 300: individual
        // Pochhammer factors overflow f64 while F4 itself stays modest.
        let nu = 300.0;
        let v = appell_f4(
            (nu + 1.0) / 2.0,
            (nu + 1.0) / 2.0,
            0.5,
            nu / 2.0,
            1e-4,
            0.3,
            &ctrl(),
        )
        .unwrap();
        assert!(v.is_finite() && v > 0.0);
    }
}
