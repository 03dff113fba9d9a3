//! Parent correlation models and the correlations of the derived
//! heavy-tailed processes.
//!
//! Every process is driven by a `parent' Gaussian correlation ρ(h); the
//! t, skew-Gaussian and skew-t fields transform ρ pointwise:
//!
//! * t:  ρ_t = a(ν) ₂F₁(½, ½; ν/2; ρ²) ρ with
//!   a(ν) = (ν−2)Γ²((ν−1)/2) / (2Γ²(ν/2));
//! * skew-Gaussian: the arcsine-type expression in η² and ρ;
//! * skew-t: the composition of the two.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use nalgebra::DMatrix;
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::geometry::{distance, Lag, Site};
use crate::specfun::{gauss_2f1, log_gamma, SeriesControl};

const PI: f64 = std::f64::consts::PI;

/// Underlying ("parent") correlation model plus nugget.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationSpec {
    pub family: CorrelationFamily,
    /// nugget τ² ∈ [0, 1): ρ*(0) = 1, ρ*(h) = (1 − τ²) ρ(h) for h ≠ 0
    pub nugget: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CorrelationFamily {
    /// Matérn with range α and smoothness ψ.
    Matern { alpha: f64, psi: f64 },
    /// Generalized Wendland with compact support α, smoothness ψ ≥ 0 and
    /// exponent δ (δ ≥ (d+1)/2 + ψ for validity in dimension d).
    GenWendland { alpha: f64, psi: f64, delta: f64 },
    /// Non-separable space-time model
    /// ρ(h, u) = γ(u/α_t)^{−2.5} GW_{α_s γ(u/α_t)^{1/2}, 0, 4}(h),
    /// γ(u) = 1 + |u|.
    SpacetimeGw { alpha_s: f64, alpha_t: f64 },
}

impl CorrelationSpec {
    pub fn matern(alpha: f64, psi: f64, nugget: f64) -> Self {
        CorrelationSpec {
            family: CorrelationFamily::Matern { alpha, psi },
            nugget,
        }
    }

    pub fn gen_wendland(alpha: f64, psi: f64, delta: f64, nugget: f64) -> Self {
        CorrelationSpec {
            family: CorrelationFamily::GenWendland { alpha, psi, delta },
            nugget,
        }
    }

    pub fn spacetime_gw(alpha_s: f64, alpha_t: f64, nugget: f64) -> Self {
        CorrelationSpec {
            family: CorrelationFamily::SpacetimeGw { alpha_s, alpha_t },
            nugget,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.nugget) {
            return Err(Error::domain(
                "CorrelationSpec",
                format!("nugget must lie in [0,1), got {}", self.nugget),
            ));
        }
        match self.family {
            CorrelationFamily::Matern { alpha, psi } => {
                if !(alpha > 0.0) || !(psi > 0.0) {
                    return Err(Error::domain(
                        "CorrelationSpec",
                        format!("Matern needs alpha, psi > 0, got ({alpha}, {psi})"),
                    ));
                }
            }
            CorrelationFamily::GenWendland { alpha, psi, delta } => {
                if !(alpha > 0.0) || !(psi >= 0.0) || !delta.is_finite() {
                    return Err(Error::domain(
                        "CorrelationSpec",
                        format!("GenWendland needs alpha > 0, psi >= 0, got ({alpha}, {psi}, {delta})"),
                    ));
                }
            }
            CorrelationFamily::SpacetimeGw { alpha_s, alpha_t } => {
                if !(alpha_s > 0.0) || !(alpha_t > 0.0) {
                    return Err(Error::domain(
                        "CorrelationSpec",
                        format!("space-time model needs alpha_s, alpha_t > 0, got ({alpha_s}, {alpha_t})"),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Positive-definiteness constraint of the Generalized Wendland family
    /// in spatial dimension `d`: δ ≥ (d+1)/2 + ψ.
    pub fn validate_for_dim(&self, d: usize) -> Result<()> {
        self.validate()?;
        if let CorrelationFamily::GenWendland { psi, delta, .. } = self.family {
            let bound = (d as f64 + 1.0) / 2.0 + psi;
            if delta < bound {
                return Err(Error::domain(
                    "CorrelationSpec",
                    format!("GenWendland in dimension {d} needs delta >= {bound}, got {delta}"),
                ));
            }
        }
        Ok(())
    }
}

/// Process family of the observed field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProcessFamily {
    Gaussian,
    T,
    SkewGaussian,
    SkewT,
}

/// Regression, scale and shape parameters of the observed process.
///
/// For the t families the tail parameter is carried as λ = 1/ν ∈ (0, ½), so
/// ν > 2 by construction. Skew families impose η² + ω² = 1, hence |η| < 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ProcessParams {
    pub family: ProcessFamily,
    pub beta: nalgebra::DVector<f64>,
    pub sigma2: f64,
    pub lambda: f64,
    pub eta: f64,
}

impl ProcessParams {
    pub fn gaussian(beta: &[f64], sigma2: f64) -> Self {
        ProcessParams {
            family: ProcessFamily::Gaussian,
            beta: nalgebra::DVector::from_row_slice(beta),
            sigma2,
            lambda: 0.0,
            eta: 0.0,
        }
    }

    pub fn t(beta: &[f64], sigma2: f64, lambda: f64) -> Self {
        ProcessParams {
            family: ProcessFamily::T,
            beta: nalgebra::DVector::from_row_slice(beta),
            sigma2,
            lambda,
            eta: 0.0,
        }
    }

    pub fn skew_gaussian(beta: &[f64], sigma2: f64, eta: f64) -> Self {
        ProcessParams {
            family: ProcessFamily::SkewGaussian,
            beta: nalgebra::DVector::from_row_slice(beta),
            sigma2,
            lambda: 0.0,
            eta,
        }
    }

    pub fn skew_t(beta: &[f64], sigma2: f64, lambda: f64, eta: f64) -> Self {
        ProcessParams {
            family: ProcessFamily::SkewT,
            beta: nalgebra::DVector::from_row_slice(beta),
            sigma2,
            lambda,
            eta,
        }
    }

    /// Degrees of freedom ν = 1/λ.
    pub fn nu(&self) -> f64 {
        1.0 / self.lambda
    }

    pub fn uses_lambda(&self) -> bool {
        matches!(self.family, ProcessFamily::T | ProcessFamily::SkewT)
    }

    pub fn uses_eta(&self) -> bool {
        matches!(self.family, ProcessFamily::SkewGaussian | ProcessFamily::SkewT)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma2 > 0.0) || !self.sigma2.is_finite() {
            return Err(Error::domain(
                "ProcessParams",
                format!("sigma2 must be positive, got {}", self.sigma2),
            ));
        }
        if self.beta.iter().any(|b| !b.is_finite()) {
            return Err(Error::domain("ProcessParams", "non-finite regression coefficient"));
        }
        if self.uses_lambda() && !(self.lambda > 0.0 && self.lambda < 0.5) {
            return Err(Error::domain(
                "ProcessParams",
                format!("lambda = 1/nu must lie in (0, 1/2), got {}", self.lambda),
            ));
        }
        if self.uses_eta() && !(self.eta.abs() < 1.0) {
            return Err(Error::domain(
                "ProcessParams",
                format!("skewness eta must satisfy |eta| < 1, got {}", self.eta),
            ));
        }
        Ok(())
    }

    /// Marginal variance of the process (σ² times the family factor).
    pub fn variance(&self) -> Result<f64> {
        let factor = match self.family {
            ProcessFamily::Gaussian => 1.0,
            ProcessFamily::T => {
                let nu = self.nu();
                nu / (nu - 2.0)
            }
            ProcessFamily::SkewGaussian => 1.0 - 2.0 * self.eta * self.eta / PI,
            ProcessFamily::SkewT => {
                let nu = self.nu();
                let e2 = self.eta * self.eta;
                let g = gamma_ratio_sq(nu)?; // Γ²((ν−1)/2)/Γ²(ν/2)
                nu / (nu - 2.0) * (1.0 + e2) - nu * g * e2 / PI
            }
        };
        Ok(self.sigma2 * factor)
    }

    /// Mean of the standardized process scaled by σ (zero for the
    /// symmetric families); the observed mean is X β plus this offset.
    pub fn mean_offset(&self) -> Result<f64> {
        let offset = match self.family {
            ProcessFamily::Gaussian | ProcessFamily::T => 0.0,
            ProcessFamily::SkewGaussian => self.eta * (2.0 / PI).sqrt(),
            ProcessFamily::SkewT => {
                let nu = self.nu();
                nu.sqrt() * gamma_ratio(nu)? * self.eta / PI.sqrt()
            }
        };
        Ok(self.sigma2.sqrt() * offset)
    }
}

/// Γ((ν−1)/2) / Γ(ν/2)
fn gamma_ratio(nu: f64) -> Result<f64> {
    Ok((log_gamma((nu - 1.0) / 2.0)? - log_gamma(nu / 2.0)?).exp())
}

/// Γ²((ν−1)/2) / Γ²(ν/2)
fn gamma_ratio_sq(nu: f64) -> Result<f64> {
    Ok((2.0 * (log_gamma((nu - 1.0) / 2.0)? - log_gamma(nu / 2.0)?)).exp())
}

// ---------------------------------------------------------------------------
// parent models
// ---------------------------------------------------------------------------

/// Parent correlation ρ*(lag) including the nugget.
pub fn parent_corr(spec: &CorrelationSpec, lag: &Lag) -> Result<f64> {
    spec.validate()?;
    if lag.is_zero() {
        return Ok(1.0);
    }
    let rho = match spec.family {
        CorrelationFamily::Matern { alpha, psi } => matern(lag.spatial / alpha, psi)?,
        CorrelationFamily::GenWendland { alpha, psi, delta } => {
            gen_wendland(lag.spatial / alpha, psi, delta)?
        }
        CorrelationFamily::SpacetimeGw { alpha_s, alpha_t } => {
            let gamma = 1.0 + (lag.temporal / alpha_t).abs();
            let support = alpha_s * gamma.sqrt();
            gamma.powf(-2.5) * gen_wendland(lag.spatial / support, 0.0, 4.0)?
        }
    };
    Ok((1.0 - spec.nugget) * rho)
}

/// Matérn correlation at scaled distance t = ‖h‖/α.
fn matern(t: f64, psi: f64) -> Result<f64> {
    if t == 0.0 {
        return Ok(1.0);
    }
    let (ln_k, _) = crate::specfun::bessel_k_ln(psi, t)?;
    let ln_m = (1.0 - psi) * std::f64::consts::LN_2 - log_gamma(psi)? + psi * t.ln() + ln_k;
    Ok(ln_m.exp().min(1.0))
}

/// Generalized Wendland at scaled distance r = ‖h‖/α.
fn gen_wendland(r: f64, psi: f64, delta: f64) -> Result<f64> {
    if r >= 1.0 {
        return Ok(0.0);
    }
    if r <= 0.0 {
        return Ok(1.0);
    }
    if psi == 0.0 {
        return Ok((1.0 - r).powf(delta));
    }
    let quad = GwQuad::cached(psi, delta)?;
    Ok(quad.eval(r))
}

/// Fixed 64-node quadrature of the ψ > 0 Generalized Wendland integral.
///
/// After substituting u² = r² + (1 − r²)v² the integral becomes
/// (1−r²)^(ψ+δ) ∫₀¹ v^(2ψ−1) (1−v)^δ [(1+v)/(1+u(v))]^δ dv / B(2ψ, δ+1);
/// the algebraic endpoint factors are absorbed into a Gauss–Jacobi weight
/// so the quadrature sees an analytic integrand for every ψ > 0. Nodes come
/// from the Golub–Welsch eigenproblem, weights are normalized so the Beta
/// normalizer cancels and GW(0) = 1 holds to machine precision.
#[derive(Debug)]
struct GwQuad {
    delta: f64,
    psi: f64,
    /// nodes in (0, 1)
    nodes: Vec<f64>,
    /// normalized weights (sum = 1)
    weights: Vec<f64>,
}

const GW_NODES: usize = 64;

static GW_CACHE: Lazy<Mutex<HashMap<(u64, u64), Arc<GwQuad>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

impl GwQuad {
    fn cached(psi: f64, delta: f64) -> Result<Arc<GwQuad>> {
        let key = (psi.to_bits(), delta.to_bits());
        let mut cache = GW_CACHE.lock().expect("GW cache poisoned");
        if let Some(q) = cache.get(&key) {
            return Ok(Arc::clone(q));
        }
        let q = Arc::new(GwQuad::build(psi, delta)?);
        cache.insert(key, Arc::clone(&q));
        Ok(q)
    }

    fn build(psi: f64, delta: f64) -> Result<GwQuad> {
        // Jacobi weight (1−t)^a (1+t)^b on [−1,1] with a = δ, b = 2ψ−1
        let a = delta;
        let b = 2.0 * psi - 1.0;
        let n = GW_NODES;
        let mut diag = vec![0.0f64; n];
        let mut off = vec![0.0f64; n - 1];
        diag[0] = (b - a) / (a + b + 2.0);
        for k in 1..n {
            let kf = k as f64;
            let den = 2.0 * kf + a + b;
            diag[k] = (b * b - a * a) / (den * (den + 2.0));
            let beta = 4.0 * kf * (kf + a) * (kf + b) * (kf + a + b)
                / (den * den * (den + 1.0) * (den - 1.0));
            off[k - 1] = beta.sqrt();
        }
        let mut jac = DMatrix::zeros(n, n);
        for k in 0..n {
            jac[(k, k)] = diag[k];
            if k + 1 < n {
                jac[(k, k + 1)] = off[k];
                jac[(k + 1, k)] = off[k];
            }
        }
        let eig = nalgebra::SymmetricEigen::new(jac);
        let mut pairs: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let t = eig.eigenvalues[i];
                let w = eig.eigenvectors[(0, i)] * eig.eigenvectors[(0, i)];
                ((t + 1.0) / 2.0, w)
            })
            .collect();
        pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        let wsum: f64 = pairs.iter().map(|p| p.1).sum();
        Ok(GwQuad {
            delta,
            psi,
            nodes: pairs.iter().map(|p| p.0).collect(),
            weights: pairs.iter().map(|p| p.1 / wsum).collect(),
        })
    }

    fn eval(&self, r: f64) -> f64 {
        let s = 1.0 - r * r;
        let mut acc = 0.0;
        for (v, w) in self.nodes.iter().zip(&self.weights) {
            let u = (r * r + s * v * v).sqrt();
            acc += w * ((1.0 + v) / (1.0 + u)).powf(self.delta);
        }
        s.powf(self.psi + self.delta) * acc
    }
}

// ---------------------------------------------------------------------------
// derived process correlations
// ---------------------------------------------------------------------------

/// series control used inside the correlation transforms; the ₂F₁ at
/// ρ² → 1 converges slowly, so the term budget is generous
fn corr_ctrl() -> SeriesControl {
    SeriesControl {
        tolerance: 1e-12,
        max_terms: 1_000_000,
    }
}

/// a(ν) = (ν−2)Γ²((ν−1)/2) / (2Γ²(ν/2))
fn t_corr_factor(nu: f64) -> Result<f64> {
    Ok(((nu - 2.0).ln() + 2.0 * log_gamma((nu - 1.0) / 2.0)? - std::f64::consts::LN_2
        - 2.0 * log_gamma(nu / 2.0)?)
        .exp())
}

/// Correlation of the standardized t process given the parent ρ.
pub fn t_corr(rho: f64, nu: f64) -> Result<f64> {
    if !(nu > 2.0) {
        return Err(Error::domain(
            "t_corr",
            format!("degrees of freedom must exceed 2, got {nu}"),
        ));
    }
    if !(rho.abs() <= 1.0) {
        return Err(Error::domain("t_corr", format!("|rho| must be <= 1, got {rho}")));
    }
    if rho == 0.0 {
        return Ok(0.0);
    }
    if rho.abs() == 1.0 {
        return Ok(rho.signum());
    }
    let f = gauss_2f1(0.5, 0.5, nu / 2.0, rho * rho, &corr_ctrl())?;
    Ok((t_corr_factor(nu)? * f * rho).clamp(-1.0, 1.0))
}

/// Correlation of the skew-Gaussian process (ω² = 1 − η²).
pub fn skew_gauss_corr(rho: f64, eta: f64) -> Result<f64> {
    if !(eta.abs() < 1.0) {
        return Err(Error::domain(
            "skew_gauss_corr",
            format!("|eta| must be < 1, got {eta}"),
        ));
    }
    if !(rho.abs() <= 1.0) {
        return Err(Error::domain(
            "skew_gauss_corr",
            format!("|rho| must be <= 1, got {rho}"),
        ));
    }
    if rho == 1.0 {
        return Ok(1.0);
    }
    let e2 = eta * eta;
    let w2 = 1.0 - e2;
    let num = 2.0 * e2 * ((1.0 - rho * rho).sqrt() + rho * rho.asin() - 1.0) + PI * w2 * rho;
    Ok(num / (PI - 2.0 * e2))
}

/// Correlation of the standardized skew-t process.
pub fn skew_t_corr(rho: f64, nu: f64, eta: f64) -> Result<f64> {
    if !(nu > 2.0) {
        return Err(Error::domain(
            "skew_t_corr",
            format!("degrees of freedom must exceed 2, got {nu}"),
        ));
    }
    if !(eta.abs() < 1.0) {
        return Err(Error::domain(
            "skew_t_corr",
            format!("|eta| must be < 1, got {eta}"),
        ));
    }
    if !(rho.abs() <= 1.0) {
        return Err(Error::domain(
            "skew_t_corr",
            format!("|rho| must be <= 1, got {rho}"),
        ));
    }
    if rho == 1.0 {
        return Ok(1.0);
    }
    let e2 = eta * eta;
    // g = (ν−2) Γ²((ν−1)/2) / Γ²(ν/2) = 2 a(ν)
    let g = 2.0 * t_corr_factor(nu)?;
    let pre = PI * g / (2.0 * (PI * (1.0 + e2) - e2 * g));
    let f = gauss_2f1(0.5, 0.5, nu / 2.0, rho * rho, &corr_ctrl())?;
    let rho_u = skew_gauss_corr(rho, eta)?;
    let inner = (1.0 + e2 * (1.0 - 2.0 / PI)) * rho_u + 2.0 * e2 / PI;
    Ok((pre * (f * inner - 2.0 * e2 / PI)).clamp(-1.0, 1.0))
}

/// Family transform applied to a parent correlation value.
pub fn process_corr(params: &ProcessParams, rho_star: f64) -> Result<f64> {
    match params.family {
        ProcessFamily::Gaussian => Ok(rho_star),
        ProcessFamily::T => t_corr(rho_star, params.nu()),
        ProcessFamily::SkewGaussian => skew_gauss_corr(rho_star, params.eta),
        ProcessFamily::SkewT => skew_t_corr(rho_star, params.nu(), params.eta),
    }
}

/// n × n process correlation matrix over a site set: nugget on the parent
/// first, then the family transform; unit diagonal by construction.
pub fn corr_matrix(
    spec: &CorrelationSpec,
    params: &ProcessParams,
    sites: &[Site],
) -> Result<DMatrix<f64>> {
    if sites.is_empty() {
        return Err(Error::domain("corr_matrix", "need at least one site"));
    }
    spec.validate()?;
    params.validate()?;
    let n = sites.len();
    let mut m = DMatrix::identity(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let lag = distance(&sites[i], &sites[j])?;
            let rho_star = parent_corr(spec, &lag)?;
            let value = process_corr(params, rho_star)?;
            m[(i, j)] = value;
            m[(j, i)] = value;
        }
    }
    Ok(m)
}
