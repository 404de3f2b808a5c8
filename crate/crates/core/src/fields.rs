//! Named, versioned test fields. Every built-in is radial about an origin;
//! space-time variants apply the same profile to the time-space distance
//! from an apex, gated by the closed forward cone.

use serde::{Deserialize, Serialize};

use crate::domain::{dist_unchecked, heaviside, Dimension, WaveContext};
use crate::error::{Error, Result};
use crate::series::radial_kernel;
use crate::specfun::{bessel_zeros, Order};

/// Bumped whenever the definition of any built-in changes.
pub const FIELD_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum BuiltinField {
    Zero,
    /// `exp(-r^2)`.
    Gaussian,
    /// Series mode `m`: `r^{1-n/2} J_{n/2-1}(lambda_m r / R)` on `r <= R`, zero outside.
    CosineMode { m: usize },
    /// `(1 - r^2/R^2)^2` on `r <= R`.
    Bump,
    /// `(1 - r^2/R^2) exp(-r^2)` on `r <= R`.
    Decay,
    /// Radial profile through `(r, value)` samples, linear in between, zero past the last.
    Tabulated { samples: Vec<[f64; 2]> },
}

impl BuiltinField {
    pub fn label(&self) -> String {
        match self {
            BuiltinField::Zero => "zero".into(),
            BuiltinField::Gaussian => "gaussian".into(),
            BuiltinField::CosineMode { m } => format!("cosine_mode_{m}"),
            BuiltinField::Bump => "bump".into(),
            BuiltinField::Decay => "decay".into(),
            BuiltinField::Tabulated { .. } => "tabulated".into(),
        }
    }

    /// Fixes dimension, radius and origin.
    pub fn bind(&self, n: Dimension, radius: f64, origin: Vec<f64>) -> Result<Field> {
        if origin.len() != n.get() {
            return Err(Error::DimensionMismatch {
                expected: n.get(),
                found: origin.len(),
            });
        }
        if !(radius > 0.0) {
            return Err(Error::invalid(format!("field radius must be positive, got {radius}")));
        }
        let profile = match self {
            BuiltinField::Zero => Profile::Zero,
            BuiltinField::Gaussian => Profile::Gaussian,
            BuiltinField::Bump => Profile::Bump,
            BuiltinField::Decay => Profile::Decay,
            BuiltinField::CosineMode { m } => {
                if *m == 0 {
                    return Err(Error::invalid("cosine_mode index m must be at least 1"));
                }
                let order = Order::for_dimension(n.get());
                let lambda = bessel_zeros(order, *m)?.zeros()[m - 1];
                Profile::Mode {
                    order,
                    kappa: lambda / radius,
                }
            }
            BuiltinField::Tabulated { samples } => {
                if samples.is_empty() {
                    return Err(Error::invalid("tabulated field needs at least one sample"));
                }
                if samples.windows(2).any(|w| !(w[1][0] > w[0][0])) || samples[0][0] < 0.0 {
                    return Err(Error::invalid(
                        "tabulated radii must be non-negative and strictly increasing",
                    ));
                }
                if samples.iter().flatten().any(|v| !v.is_finite()) {
                    return Err(Error::invalid("tabulated samples must be finite"));
                }
                Profile::Table(samples.clone())
            }
        };
        Ok(Field {
            n,
            radius,
            origin,
            profile,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Profile {
    Zero,
    Gaussian,
    Bump,
    Decay,
    Mode { order: Order, kappa: f64 },
    Table(Vec<[f64; 2]>),
}

/// A built-in bound to a dimension, radius and origin.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    n: Dimension,
    radius: f64,
    origin: Vec<f64>,
    profile: Profile,
}

impl Field {
    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    /// Value at distance `r` from the origin.
    pub fn profile(&self, r: f64) -> f64 {
        let q = 1.0 - (r / self.radius).powi(2);
        match &self.profile {
            Profile::Zero => 0.0,
            Profile::Gaussian => (-r * r).exp(),
            Profile::Bump => {
                if q > 0.0 {
                    q * q
                } else {
                    0.0
                }
            }
            Profile::Decay => {
                if q > 0.0 {
                    q * (-r * r).exp()
                } else {
                    0.0
                }
            }
            Profile::Mode { order, kappa } => {
                if r > self.radius * (1.0 + 1e-12) {
                    0.0
                } else {
                    radial_kernel(self.n, *order, *kappa, r)
                }
            }
            Profile::Table(samples) => interpolate(samples, r),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.profile(dist_unchecked(x, &self.origin))
    }

    /// Causal variant on `(x..., t)` nodes: the profile of `r_hat` from
    /// `(origin, t0)`, zero outside the closed cone.
    pub fn eval_causal(&self, node: &[f64], t0: f64, ctx: WaveContext) -> f64 {
        let (x, t) = node.split_at(node.len() - 1);
        let r = dist_unchecked(x, &self.origin);
        let ct = ctx.speed() * (t[0] - t0);
        let gap = ct - r;
        if heaviside(gap) == 0.0 {
            return 0.0;
        }
        self.profile((gap * (ct + r)).sqrt())
    }
}

fn interpolate(samples: &[[f64; 2]], r: f64) -> f64 {
    let last = samples[samples.len() - 1];
    if r > last[0] {
        return 0.0;
    }
    if r <= samples[0][0] {
        return samples[0][1];
    }
    let i = samples.partition_point(|s| s[0] < r);
    let [r0, v0] = samples[i - 1];
    let [r1, v1] = samples[i];
    v0 + (v1 - v0) * (r - r0) / (r1 - r0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn one() -> Dimension {
        Dimension::new(1).unwrap()
    }

    #[test]
    fn cosine_mode_one_in_one_dimension() {
        let f = BuiltinField::CosineMode { m: 1 }.bind(one(), 2.0, vec![0.0]).unwrap();
        let lambda = PI / 2.0;
        let scale = (2.0 * 2.0 / (PI * lambda)).sqrt();
        for &x in &[0.0, 0.3, -1.1, 2.0] {
            let expected = scale * (lambda * x / 2.0).cos();
            assert!((f.eval(&[x]) - expected).abs() < 1e-13);
        }
        assert_eq!(f.eval(&[2.5]), 0.0);
    }

    #[test]
    fn compact_fields_vanish_outside() {
        for field in [BuiltinField::Bump, BuiltinField::Decay] {
            let f = field.bind(one(), 1.0, vec![0.5]).unwrap();
            assert_eq!(f.eval(&[1.5]), 0.0);
            assert_eq!(f.eval(&[2.0]), 0.0);
            assert!(f.eval(&[0.5]) > 0.0);
        }
    }

    #[test]
    fn tabulated_profile_interpolates() {
        let field = BuiltinField::Tabulated {
            samples: vec![[0.0, 1.0], [1.0, 3.0], [2.0, 0.0]],
        };
        let f = field.bind(one(), 1.0, vec![0.0]).unwrap();
        assert_eq!(f.eval(&[0.5]), 2.0);
        assert_eq!(f.eval(&[-1.5]), 1.5);
        assert_eq!(f.eval(&[2.5]), 0.0);
        let bad = BuiltinField::Tabulated {
            samples: vec![[1.0, 0.0], [0.5, 0.0]],
        };
        assert!(bad.bind(one(), 1.0, vec![0.0]).is_err());
    }

    #[test]
    fn causal_field_is_gated() {
        let f = BuiltinField::Gaussian.bind(one(), 1.0, vec![0.0]).unwrap();
        let c = WaveContext::new(1.0).unwrap();
        assert_eq!(f.eval_causal(&[2.0, 1.0], 0.0, c), 0.0);
        // on the cone surface r_hat = 0
        assert_eq!(f.eval_causal(&[1.0, 1.0], 0.0, c), 1.0);
        assert!((f.eval_causal(&[0.0, 0.5], 0.0, c) - (-0.25f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn labels_round_trip_through_serde() {
        let f: BuiltinField = serde_json::from_str(r#"{"name":"cosine_mode","m":3}"#).unwrap();
        assert_eq!(f, BuiltinField::CosineMode { m: 3 });
        assert_eq!(f.label(), "cosine_mode_3");
    }
}
