//! Observation container shared by estimation and prediction.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::geometry::Site;

/// Sites, covariate matrix X (n × k, possibly k = 0) and observations y.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub sites: Vec<Site>,
    pub covariates: DMatrix<f64>,
    pub y: DVector<f64>,
}

impl Dataset {
    pub fn new(sites: Vec<Site>, covariates: DMatrix<f64>, y: DVector<f64>) -> Result<Self> {
        let n = sites.len();
        if n == 0 {
            return Err(Error::Data("dataset has no rows".into()));
        }
        if covariates.nrows() != n || y.len() != n {
            return Err(Error::Data(format!(
                "row counts disagree: {} sites, {} covariate rows, {} observations",
                n,
                covariates.nrows(),
                y.len()
            )));
        }
        let dim = sites[0].spatial_dim();
        let spacetime = sites[0].is_spacetime();
        for s in &sites {
            s.validate()?;
            if s.spatial_dim() != dim
                || s.is_spacetime() != spacetime
                || std::mem::discriminant(s) != std::mem::discriminant(&sites[0])
            {
                return Err(Error::Data("mixed site kinds within a dataset".into()));
            }
        }
        if covariates.iter().any(|v| !v.is_finite()) {
            return Err(Error::Data("non-finite covariate value".into()));
        }
        Ok(Dataset {
            sites,
            covariates,
            y,
        })
    }

    /// Dataset with no covariates (zero-mean modeling).
    pub fn without_covariates(sites: Vec<Site>, y: DVector<f64>) -> Result<Self> {
        let n = sites.len();
        Self::new(sites, DMatrix::zeros(n, 0), y)
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn n_covariates(&self) -> usize {
        self.covariates.ncols()
    }

    /// Spatial dimension used to validate compact-support parameters.
    pub fn spatial_dim(&self) -> usize {
        self.sites[0].spatial_dim()
    }

    /// μ = X β (zero vector when k = 0).
    pub fn mean_vector(&self, beta: &DVector<f64>) -> Result<DVector<f64>> {
        if beta.len() != self.n_covariates() {
            return Err(Error::Data(format!(
                "beta has length {}, dataset has {} covariates",
                beta.len(),
                self.n_covariates()
            )));
        }
        if beta.is_empty() {
            return Ok(DVector::zeros(self.len()));
        }
        Ok(&self.covariates * beta)
    }

    /// Row subset in the given order.
    pub fn subset(&self, idx: &[usize]) -> Result<Dataset> {
        let sites: Vec<Site> = idx.iter().map(|&i| self.sites[i].clone()).collect();
        let cov = DMatrix::from_fn(idx.len(), self.n_covariates(), |r, c| {
            self.covariates[(idx[r], c)]
        });
        let y = DVector::from_iterator(idx.len(), idx.iter().map(|&i| self.y[i]));
        Dataset::new(sites, cov, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_validation() {
        let sites = vec![Site::euclidean(&[0.0]), Site::euclidean(&[1.0])];
        let x = DMatrix::from_row_slice(2, 1, &[0.2, 0.8]);
        let y = DVector::from_vec(vec![1.0, -1.0]);
        let d = Dataset::new(sites.clone(), x.clone(), y.clone()).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.n_covariates(), 1);

        let bad_y = DVector::from_vec(vec![1.0]);
        assert!(Dataset::new(sites.clone(), x, bad_y).is_err());

        let mixed = vec![Site::euclidean(&[0.0]), Site::spherical(0.0, 0.0)];
        assert!(Dataset::without_covariates(mixed, y).is_err());
    }

    #[test]
    fn mean_and_subset() {
        let sites = vec![
            Site::euclidean(&[0.0]),
            Site::euclidean(&[0.5]),
            Site::euclidean(&[1.0]),
        ];
        let x = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 1.0, 0.5, 1.0, 1.0]);
        let y = DVector::from_vec(vec![0.0, 1.0, 2.0]);
        let d = Dataset::new(sites, x, y).unwrap();
        let mu = d.mean_vector(&DVector::from_vec(vec![0.5, -0.25])).unwrap();
        assert_eq!(mu[0], 0.5);
        assert_eq!(mu[2], 0.25);
        let s = d.subset(&[2, 0]).unwrap();
        assert_eq!(s.y[0], 2.0);
        assert_eq!(s.y[1], 0.0);
        assert!(d.mean_vector(&DVector::from_vec(vec![1.0])).is_err());
    }
}
