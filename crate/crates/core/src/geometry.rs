//! Index sets and distances: Euclidean, spherical (great-circle) and
//! space-time domains.

use crate::error::{Error, Result};

/// Earth radius in kilometres used for great-circle distances.
pub const EARTH_RADIUS_KM: f64 = 6371.0;

/// A point of the index set.
#[derive(Debug, Clone, PartialEq)]
pub enum Site {
    Euclidean(Vec<f64>),
    Spherical { lon_deg: f64, lat_deg: f64 },
    SpaceTime { coords: Vec<f64>, t: f64 },
}

impl Site {
    pub fn euclidean(coords: &[f64]) -> Site {
        Site::Euclidean(coords.to_vec())
    }

    pub fn spherical(lon_deg: f64, lat_deg: f64) -> Site {
        Site::Spherical { lon_deg, lat_deg }
    }

    pub fn spacetime(coords: &[f64], t: f64) -> Site {
        Site::SpaceTime {
            coords: coords.to_vec(),
            t,
        }
    }

    /// Spatial dimension of the site (2 for spherical coordinates).
    pub fn spatial_dim(&self) -> usize {
        match self {
            Site::Euclidean(c) => c.len(),
            Site::Spherical { .. } => 2,
            Site::SpaceTime { coords, .. } => coords.len(),
        }
    }

    pub fn is_spacetime(&self) -> bool {
        matches!(self, Site::SpaceTime { .. })
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self {
            Site::Euclidean(c) => c.iter().all(|v| v.is_finite()),
            Site::Spherical { lon_deg, lat_deg } => {
                lon_deg.is_finite()
                    && lat_deg.is_finite()
                    && (-180.0..=180.0).contains(lon_deg)
                    && (-90.0..=90.0).contains(lat_deg)
            }
            Site::SpaceTime { coords, t } => {
                t.is_finite() && coords.iter().all(|v| v.is_finite())
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain("Site", format!("invalid coordinates: {self:?}")))
        }
    }
}

/// Isotropic lag: spatial modulus (Euclidean norm or great-circle km) plus
/// a signed temporal separation (0 on purely spatial domains).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lag {
    pub spatial: f64,
    pub temporal: f64,
}

impl Lag {
    pub fn spatial_only(spatial: f64) -> Lag {
        Lag {
            spatial,
            temporal: 0.0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.spatial == 0.0 && self.temporal == 0.0
    }
}

/// Separation between two sites of the same kind.
pub fn distance(a: &Site, b: &Site) -> Result<Lag> {
    match (a, b) {
        (Site::Euclidean(x), Site::Euclidean(y)) => {
            if x.len() != y.len() {
                return Err(Error::domain(
                    "distance",
                    format!("coordinate dimensions differ: {} vs {}", x.len(), y.len()),
                ));
            }
            Ok(Lag::spatial_only(euclidean_norm(x, y)))
        }
        (
            Site::Spherical {
                lon_deg: lon_a,
                lat_deg: lat_a,
            },
            Site::Spherical {
                lon_deg: lon_b,
                lat_deg: lat_b,
            },
        ) => Ok(Lag::spatial_only(great_circle(
            EARTH_RADIUS_KM,
            *lon_a,
            *lat_a,
            *lon_b,
            *lat_b,
        ))),
        (
            Site::SpaceTime { coords: x, t: ta },
            Site::SpaceTime { coords: y, t: tb },
        ) => {
            if x.len() != y.len() {
                return Err(Error::domain(
                    "distance",
                    format!("coordinate dimensions differ: {} vs {}", x.len(), y.len()),
                ));
            }
            Ok(Lag {
                spatial: euclidean_norm(x, y),
                temporal: tb - ta,
            })
        }
        _ => Err(Error::domain(
            "distance",
            "sites of mixed kinds cannot be compared",
        )),
    }
}

fn euclidean_norm(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// Great-circle distance on a sphere of the given radius; the arccos
/// argument is clamped into [−1, 1] so numerically identical sites map to
/// a distance of exactly zero.
pub fn great_circle(radius: f64, lon_a: f64, lat_a: f64, lon_b: f64, lat_b: f64) -> f64 {
    let to_rad = std::f64::consts::PI / 180.0;
    let (ai, aj) = (lat_a * to_rad, lat_b * to_rad);
    let (bi, bj) = (lon_a * to_rad, lon_b * to_rad);
    let cosine = ai.sin() * aj.sin() + ai.cos() * aj.cos() * (bi - bj).cos();
    radius * cosine.clamp(-1.0, 1.0).acos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn identical_sites_have_zero_lag() {
        let e = Site::euclidean(&[0.3, -0.7]);
        assert_eq!(distance(&e, &e).unwrap(), Lag::spatial_only(0.0));
        let s = Site::spherical(131.2, -25.4);
        assert_eq!(distance(&s, &s).unwrap().spatial, 0.0);
    }

    #[test]
    fn quarter_great_circle() {
        let a = Site::spherical(0.0, 0.0);
        let b = Site::spherical(90.0, 0.0);
        assert_relative_eq!(
            distance(&a, &b).unwrap().spatial,
            EARTH_RADIUS_KM * std::f64::consts::FRAC_PI_2,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            distance(&a, &b).unwrap().spatial,
            10007.543398,
            max_relative = 1e-9
        );
    }

    #[test]
    fn spacetime_three_four_five() {
        let a = Site::spacetime(&[0.0, 0.0], 1.0);
        let b = Site::spacetime(&[0.3, 0.4], 3.0);
        let lag = distance(&a, &b).unwrap();
        assert_relative_eq!(lag.spatial, 0.5, max_relative = 1e-14);
        assert_relative_eq!(lag.temporal, 2.0);
        // spatial part is symmetric, temporal carries the sign
        let rev = distance(&b, &a).unwrap();
        assert_eq!(rev.spatial, lag.spatial);
        assert_relative_eq!(rev.temporal, -2.0);
    }

    #[test]
    fn mixed_kinds_rejected() {
        let e = Site::euclidean(&[0.0]);
        let s = Site::spherical(0.0, 0.0);
        assert!(distance(&e, &s).is_err());
        let short = Site::euclidean(&[0.0]);
        let long = Site::euclidean(&[0.0, 1.0]);
        assert!(distance(&short, &long).is_err());
    }

    #[test]
    fn triangle_inequality_on_sphere() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(17);
        for _ in 0..200 {
            let mut site = || {
                Site::spherical(
                    rng.random_range(-180.0..180.0),
                    rng.random_range(-90.0..90.0),
                )
            };
            let (a, b, c) = (site(), site(), site());
            let ab = distance(&a, &b).unwrap().spatial;
            let bc = distance(&b, &c).unwrap().spatial;
            let ac = distance(&a, &c).unwrap().spatial;
            assert!(ac <= ab + bc + 1e-9 * EARTH_RADIUS_KM);
        }
    }

    #[test]
    fn validation() {
        assert!(Site::spherical(200.0, 0.0).validate().is_err());
        assert!(Site::spherical(20.0, 95.0).validate().is_err());
        assert!(Site::euclidean(&[f64::NAN]).validate().is_err());
        assert!(Site::spherical(-180.0, 90.0).validate().is_ok());
    }
}
