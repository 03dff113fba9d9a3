//! Stationary random fields with Student-t, skew-Gaussian and skew-t marginals.
//!
//! The library builds every heavy-tailed process from a `parent' Gaussian
//! process with correlation `ρ(h)`: the t field is a scale mixture
//! `G / √W_ν` with a Gamma mixing field, the skew-Gaussian field is
//! `η|X₁| + ωX₂`, and the skew-t field mixes the two constructions.
//!
//! Modules follow the pipeline:
//!
//! * [`specfun`] — scalar kernels: log-gamma, Gauss ₂F₁, Appell F₄,
//!   modified Bessel functions, Student-t CDF, multivariate normal CDF.
//! * [`geometry`] — Euclidean, spherical and space-time index sets.
//! * [`correlation`] — parent correlation models (Matérn, Generalized
//!   Wendland, non-separable space-time) and the derived process
//!   correlations.
//! * [`density`] — marginal and bivariate densities, including the exact
//!   bivariate t density and the closed-form joint skew-Gaussian density.
//! * [`simulate`] — exact simulation via Cholesky factorization.
//! * [`estimate`] — weighted pairwise likelihood, two-step selection of the
//!   degrees of freedom, parametric-bootstrap Godambe information,
//!   PLIC/BLIC, Gaussian maximum likelihood.
//! * [`predict`] — optimal linear prediction, CRPS scoring and a
//!   cross-validation harness.

pub mod correlation;
pub mod data;
pub mod density;
pub mod error;
pub mod estimate;
pub mod geometry;
pub mod predict;
pub mod simulate;
pub mod specfun;

pub use data::Dataset;
pub use error::{Error, Result};
