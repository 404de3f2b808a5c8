//! Geometry of n-balls and of the forward space-time cone, plus the
//! quadrature rules that realise every volume integral in the crate.

mod cone;
mod quadrature;

pub use cone::{cone_rule, ConeRuleSpec, SpaceTimeBox};
pub use quadrature::{
    ball_rule, gauss_legendre, gauss_legendre_interval, gauss_legendre_on, integrate, integrate_par,
    mc_standard_error, select_r_cut, truncated_infinite_rule, union_rule, AngularSpec,
    BallRuleSpec, QuadratureRule, RadialMap, RuleKind, RuleMeta, MAX_GAUSS_LEGENDRE, REDUCTION_BLOCK,
};

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::gamma;

/// Spatial dimension `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Dimension(usize);

impl Dimension {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        Ok(Dimension(n))
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64
    }
}

/// Closed ball `B(center, radius)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallDomain {
    center: Vec<f64>,
    radius: f64,
}

impl BallDomain {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::invalid(format!("ball radius must be positive, got {radius}")));
        }
        if center.is_empty() || center.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid("ball centre must be a finite point"));
        }
        Ok(Self { center, radius })
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn dimension(&self) -> usize {
        self.center.len()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        dist_unchecked(&self.center, x) <= self.radius * (1.0 + 1e-12)
    }

    pub fn volume(&self) -> f64 {
        ball_volume(self.center.len(), self.radius)
    }
}

/// A point `(x, t)` of space-time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceTimePoint {
    pub x: Vec<f64>,
    pub t: f64,
}

impl SpaceTimePoint {
    pub fn new(x: Vec<f64>, t: f64) -> Self {
        Self { x, t }
    }

    /// Splits a flat `(x..., t)` node.
    pub fn from_node(node: &[f64]) -> Self {
        let (x, t) = node.split_at(node.len() - 1);
        Self {
            x: x.to_vec(),
            t: t[0],
        }
    }
}

/// Wave speed `c > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveContext {
    c: f64,
}

impl WaveContext {
    pub fn new(c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::invalid(format!("wave speed must be positive, got {c}")));
        }
        Ok(Self { c })
    }

    pub fn speed(self) -> f64 {
        self.c
    }
}

/// Surface measure of the unit sphere in `R^n`, `2 pi^{n/2} / Gamma(n/2)`.
pub fn unit_sphere_area(n: Dimension) -> f64 {
    let half = 0.5 * n.as_f64();
    2.0 * PI.powf(half) / gamma(half)
}

pub fn ball_volume(n: usize, radius: f64) -> f64 {
    let dim = Dimension(n.max(1));
    unit_sphere_area(dim) * radius.powi(n as i32) / n as f64
}

/// Euclidean distance.
pub fn dist(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    Ok(dist_unchecked(x, y))
}

#[inline]
pub(crate) fn dist_unchecked(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// `c (t_p - t_k) - |x_p - x_k|`, non-negative exactly inside the closed cone of `k`.
pub fn cone_gap(p: &SpaceTimePoint, k: &SpaceTimePoint, ctx: WaveContext) -> Result<f64> {
    let r = dist(&p.x, &k.x)?;
    Ok(ctx.c * (p.t - k.t) - r)
}

/// Time-space distance `sqrt(c^2 dt^2 - r^2)` inside the closed forward cone of `k`.
pub fn spacetime_dist(p: &SpaceTimePoint, k: &SpaceTimePoint, ctx: WaveContext) -> Result<f64> {
    let r = dist(&p.x, &k.x)?;
    let ct = ctx.c * (p.t - k.t);
    let gap = ct - r;
    if gap < 0.0 {
        return Err(Error::OutsideCone { gap });
    }
    Ok((gap * (ct + r)).sqrt())
}

/// Heaviside step with the closed convention `H(0) = 1`.
pub fn heaviside(s: f64) -> f64 {
    if s >= 0.0 {
        1.0
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(x: &[f64], t: f64) -> SpaceTimePoint {
        SpaceTimePoint::new(x.to_vec(), t)
    }

    #[test]
    fn sphere_areas() {
        let s = |n| unit_sphere_area(Dimension::new(n).unwrap());
        assert!((s(1) - 2.0).abs() < 1e-14);
        assert!((s(2) - 2.0 * PI).abs() < 1e-14);
        assert!((s(3) - 4.0 * PI).abs() < 1e-13);
        assert!((s(4) - 2.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn distances() {
        assert_eq!(dist(&[0.0], &[0.0]).unwrap(), 0.0);
        assert_eq!(dist(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 5.0);
        assert_eq!(dist(&[1.0], &[-1.0]).unwrap(), 2.0);
        assert!(matches!(
            dist(&[1.0], &[1.0, 2.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn spacetime_distance_examples() {
        let c1 = WaveContext::new(1.0).unwrap();
        let c2 = WaveContext::new(2.0).unwrap();
        let k = st(&[0.0], 0.0);
        assert_eq!(spacetime_dist(&st(&[3.0], 5.0), &k, c1).unwrap(), 4.0);
        assert_eq!(spacetime_dist(&st(&[2.0], 1.0), &k, c2).unwrap(), 0.0);
        assert!(matches!(
            spacetime_dist(&st(&[2.0], 1.0), &k, c1),
            Err(Error::OutsideCone { .. })
        ));
    }

    #[test]
    fn heaviside_convention() {
        assert_eq!(heaviside(3.0), 1.0);
        assert_eq!(heaviside(-3.0), 0.0);
        assert_eq!(heaviside(0.0), 1.0);
    }

    #[test]
    fn invalid_parameters() {
        assert!(Dimension::new(0).is_err());
        assert!(BallDomain::new(vec![0.0], 0.0).is_err());
        assert!(WaveContext::new(-1.0).is_err());
    }
}
