//! Multivariate normal CDF by randomized quasi-Monte Carlo (Genz's
//! separation-of-variables transform over a shifted rank-1 lattice).

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use super::gamma::{normal_cdf, normal_quantile};
use crate::error::{Error, Result};

/// Structural cap: the joint skew-Gaussian density enumerates 2^(n−1)
/// signature classes, so CDF dimensions beyond 12 are never requested.
pub const MAX_DIM: usize = 12;

const SHIFTS: usize = 12;
const N_START: usize = 512;
const N_MAX: usize = 65_536;

/// square roots of the first primes, one generator per integration axis
const PRIMES: [f64; 11] = [2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0, 23.0, 29.0, 31.0];

#[derive(Debug, Clone, Copy)]
pub struct MvnCdf {
    pub value: f64,
    pub std_error: f64,
}

/// P(Z ≤ upper) for Z centered normal with correlation (or covariance)
/// matrix `corr`; covariance input is normalized internally.
pub fn mvn_cdf(upper: &[f64], corr: &DMatrix<f64>, rng_seed: u64) -> Result<f64> {
    Ok(mvn_cdf_with_error(upper, corr, rng_seed, 1e-4)?.value)
}

pub fn mvn_cdf_with_error(
    upper: &[f64],
    corr: &DMatrix<f64>,
    rng_seed: u64,
    target_se: f64,
) -> Result<MvnCdf> {
    let n = upper.len();
    if n == 0 {
        return Err(Error::domain("mvn_cdf", "empty limit vector"));
    }
    if n > MAX_DIM {
        return Err(Error::UnsupportedDimension {
            op: "mvn_cdf",
            dim: n,
            max: MAX_DIM,
        });
    }
    if corr.nrows() != n || corr.ncols() != n {
        return Err(Error::domain(
            "mvn_cdf",
            format!("matrix is {}x{}, limits have length {n}", corr.nrows(), corr.ncols()),
        ));
    }
    for i in 0..n {
        if !(corr[(i, i)] > 0.0) {
            return Err(Error::domain("mvn_cdf", "nonpositive diagonal entry"));
        }
        for j in 0..i {
            if (corr[(i, j)] - corr[(j, i)]).abs() > 1e-10 * corr[(i, i)].abs().max(1.0) {
                return Err(Error::domain("mvn_cdf", "matrix is not symmetric"));
            }
        }
    }

    // normalize a covariance to unit diagonal
    let scales: Vec<f64> = (0..n).map(|i| corr[(i, i)].sqrt()).collect();
    let mut b: Vec<f64> = (0..n).map(|i| upper[i] / scales[i]).collect();
    let mut r = DMatrix::from_fn(n, n, |i, j| corr[(i, j)] / (scales[i] * scales[j]));

    if n == 1 {
        return Ok(MvnCdf {
            value: normal_cdf(b[0]),
            std_error: 0.0,
        });
    }

    // most restrictive limit first: cheap variance-reduction reordering
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| b[i].partial_cmp(&b[j]).unwrap_or(std::cmp::Ordering::Equal));
    b = order.iter().map(|&i| b[i]).collect();
    r = DMatrix::from_fn(n, n, |i, j| r[(order[i], order[j])]);

    let chol = match nalgebra::Cholesky::new(r.clone()) {
        Some(c) => c,
        None => {
            for i in 0..n {
                r[(i, i)] += 1e-12;
            }
            nalgebra::Cholesky::new(r)
                .ok_or(Error::domain("mvn_cdf", "matrix is not positive semi-definite"))?
        }
    };
    let l = chol.l();

    let mut rng = ChaCha12Rng::seed_from_u64(rng_seed);
    let dim = n - 1;
    let gens: Vec<f64> = PRIMES[..dim].iter().map(|p| p.sqrt().fract()).collect();

    let mut points = N_START;
    loop {
        let mut shift_means = [0.0f64; SHIFTS];
        let mut rng_run = rng.clone();
        for mean in shift_means.iter_mut() {
            let shift: Vec<f64> = (0..dim).map(|_| rng_run.random::<f64>()).collect();
            let mut acc = 0.0;
            let mut x = vec![0.0f64; dim];
            for i in 0..points {
                let step = (i + 1) as f64;
                for d in 0..dim {
                    x[d] = (step * gens[d] + shift[d]).fract();
                }
                acc += genz_integrand(&b, &l, &x);
            }
            *mean = acc / points as f64;
        }
        let value = shift_means.iter().sum::<f64>() / SHIFTS as f64;
        let var = shift_means
            .iter()
            .map(|m| (m - value) * (m - value))
            .sum::<f64>()
            / (SHIFTS - 1) as f64;
        let se = (var / SHIFTS as f64).sqrt();
        if se <= target_se || points >= N_MAX {
            return Ok(MvnCdf {
                value: value.clamp(0.0, 1.0),
                std_error: se,
            });
        }
        points *= 2;
    }
}

fn genz_integrand(b: &[f64], l: &nalgebra::DMatrix<f64>, u: &[f64]) -> f64 {
    let n = b.len();
    let mut y = vec![0.0f64; n - 1];
    let mut e = normal_cdf(b[0] / l[(0, 0)]);
    let mut prod = e;
    for i in 1..n {
        y[i - 1] = normal_quantile(u[i - 1] * e);
        let mut num = b[i];
        for j in 0..i {
            num -= l[(i, j)] * y[j];
        }
        e = normal_cdf(num / l[(i, i)]);
        prod *= e;
    }
    prod
}
