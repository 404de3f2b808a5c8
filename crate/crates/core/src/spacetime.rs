//! Causal RBF wavelets in space-time. Mode `j` of centre `(x_k, t_k)` is the
//! series mode evaluated at the time-space distance
//! `r_hat = sqrt(c^2 dt^2 - r^2)`, gated by the closed forward cone
//! `H(c dt - r)`. Nothing here assumes orthogonality over the cone; the cone
//! Gram matrix and least-squares oracle give the reference coefficients.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::{dist_unchecked, heaviside, unit_sphere_area, Dimension, QuadratureRule, SpaceTimePoint, WaveContext};
use crate::error::{Error, Result};
use crate::series::{radial_kernel, sample_field, solve_truncated, weighted_sum, OracleSolution, WeightMode};
use crate::specfun::{bessel_zeros, j_unchecked, Order, ZeroTable};

/// Which distance enters the coefficient integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMode {
    /// `r_hat` in both the weight and the Bessel argument.
    #[default]
    RhatThroughout,
    /// Spatial `r` in the weight and the Bessel argument, with the cone gate.
    AsPrintedMixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceTimeBasis {
    n: Dimension,
    radius: f64,
    ctx: WaveContext,
    centers: Vec<SpaceTimePoint>,
    modes: usize,
    order: Order,
    zeros: ZeroTable,
    weight_mode: WeightMode,
    distance_mode: DistanceMode,
}

impl SpaceTimeBasis {
    pub fn new(
        n: Dimension,
        radius: f64,
        ctx: WaveContext,
        centers: Vec<SpaceTimePoint>,
        modes: usize,
        weight_mode: WeightMode,
        distance_mode: DistanceMode,
    ) -> Result<Self> {
        if modes == 0 {
            return Err(Error::invalid("mode count J must be at least 1"));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::invalid(format!("radius must be positive, got {radius}")));
        }
        if centers.is_empty() {
            return Err(Error::invalid("at least one centre is required"));
        }
        for c in &centers {
            if c.x.len() != n.get() {
                return Err(Error::DimensionMismatch {
                    expected: n.get(),
                    found: c.x.len(),
                });
            }
        }
        for (a, ca) in centers.iter().enumerate() {
            if centers[a + 1..].contains(ca) {
                return Err(Error::invalid("space-time centres must be pairwise distinct"));
            }
        }
        let order = Order::for_dimension(n.get());
        let zeros = bessel_zeros(order, modes)?;
        Ok(Self {
            n,
            radius,
            ctx,
            centers,
            modes,
            order,
            zeros,
            weight_mode,
            distance_mode,
        })
    }

    pub fn dimension(&self) -> Dimension {
        self.n
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn context(&self) -> WaveContext {
        self.ctx
    }

    pub fn centers(&self) -> &[SpaceTimePoint] {
        &self.centers
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn zeros(&self) -> &ZeroTable {
        &self.zeros
    }

    pub fn weight_mode(&self) -> WeightMode {
        self.weight_mode
    }

    pub fn distance_mode(&self) -> DistanceMode {
        self.distance_mode
    }

    pub fn size(&self) -> usize {
        self.modes * self.centers.len()
    }

    fn kappa(&self, j: usize) -> Result<f64> {
        if j == 0 || j > self.modes {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.modes,
            });
        }
        Ok(self.zeros.zeros()[j - 1] / self.radius)
    }

    fn center(&self, k: usize) -> Result<&SpaceTimePoint> {
        k.checked_sub(1).and_then(|i| self.centers.get(i)).ok_or(Error::IndexOutOfRange {
            index: k,
            len: self.centers.len(),
        })
    }

    /// `(gate, r, r_hat)` of a flat `(x..., t)` node relative to `apex`.
    fn cone_coordinates(&self, node: &[f64], apex: &SpaceTimePoint) -> (bool, f64, f64) {
        let (x, t) = node.split_at(node.len() - 1);
        let r = dist_unchecked(x, &apex.x);
        let ct = self.ctx.speed() * (t[0] - apex.t);
        let gap = ct - r;
        if heaviside(gap) == 0.0 {
            return (false, r, 0.0);
        }
        (true, r, (gap * (ct + r)).sqrt())
    }

    fn prefactor(&self, j: usize) -> Result<f64> {
        let lambda = self.kappa(j)? * self.radius;
        let n = self.n.as_f64();
        let s_n = unit_sphere_area(self.n);
        let jn = j_unchecked(self.order.value() + 1.0, lambda);
        Ok(match self.weight_mode {
            WeightMode::AsPrinted => {
                2.0 / (s_n * self.radius.powf(n + 1.0) * jn * jn)
                    * (lambda / (2.0 * std::f64::consts::PI)).powf(1.0 - 0.5 * n)
            }
            WeightMode::OrthogonalityConsistent => 2.0 / (s_n * self.radius * self.radius * jn * jn),
        })
    }

    fn weight(&self, kappa: f64, d: f64) -> f64 {
        let k = radial_kernel(self.n, self.order, kappa, d);
        match self.weight_mode {
            WeightMode::AsPrinted => d.powi(self.n.get() as i32 - 1) * k,
            WeightMode::OrthogonalityConsistent => k,
        }
    }

    fn eval_node(&self, j: usize, apex: &SpaceTimePoint, node: &[f64]) -> f64 {
        let (inside, _, r_hat) = self.cone_coordinates(node, apex);
        if !inside {
            return 0.0;
        }
        radial_kernel(self.n, self.order, self.zeros.zeros()[j - 1] / self.radius, r_hat)
    }
}

/// `phi_j(r_hat_k) H(c dt_k - r_k)`: zero outside the closed cone of centre `k`.
pub fn st_basis_eval(basis: &SpaceTimeBasis, j: usize, k: usize, p: &SpaceTimePoint) -> Result<f64> {
    basis.kappa(j)?;
    let apex = basis.center(k)?;
    if p.x.len() != basis.n.get() {
        return Err(Error::DimensionMismatch {
            expected: basis.n.get(),
            found: p.x.len(),
        });
    }
    let mut node = p.x.clone();
    node.push(p.t);
    Ok(basis.eval_node(j, apex, &node))
}

fn check_rule(basis: &SpaceTimeBasis, rule: &QuadratureRule) -> Result<()> {
    if rule.dim() != basis.n.get() + 1 {
        return Err(Error::DimensionMismatch {
            expected: basis.n.get() + 1,
            found: rule.dim(),
        });
    }
    Ok(())
}

/// `2 / ((n+2) S_n R^{n+1}) int r_hat^{n/2} f H` with `r_hat` from `base`.
pub fn st_coeff_alpha0(
    f: impl Fn(&[f64]) -> f64 + Sync,
    basis: &SpaceTimeBasis,
    base: &SpaceTimePoint,
    rule: &QuadratureRule,
) -> Result<f64> {
    check_rule(basis, rule)?;
    let values = sample_field(&f, rule)?;
    let half = 0.5 * basis.n.as_f64();
    let mut any = false;
    let terms: Vec<f64> = (0..rule.len())
        .map(|i| {
            let (inside, _, r_hat) = basis.cone_coordinates(rule.node(i), base);
            if inside {
                any = true;
                r_hat.powf(half) * values[i]
            } else {
                0.0
            }
        })
        .collect();
    if !any {
        return Err(Error::EmptyDomain);
    }
    let n = basis.n.as_f64();
    let pref = 2.0 / ((n + 2.0) * unit_sphere_area(basis.n) * basis.radius.powf(n + 1.0));
    Ok(pref * weighted_sum(rule.weights(), terms.into_iter()))
}

fn st_moment(basis: &SpaceTimeBasis, j: usize, apex: &SpaceTimePoint, rule: &QuadratureRule, values: &[f64]) -> Result<f64> {
    let kappa = basis.kappa(j)?;
    let mut any = false;
    let terms: Vec<f64> = (0..rule.len())
        .map(|i| {
            let (inside, r, r_hat) = basis.cone_coordinates(rule.node(i), apex);
            if !inside {
                return 0.0;
            }
            any = true;
            let d = match basis.distance_mode {
                DistanceMode::RhatThroughout => r_hat,
                DistanceMode::AsPrintedMixed => r,
            };
            basis.weight(kappa, d) * values[i]
        })
        .collect();
    if !any {
        return Err(Error::EmptyDomain);
    }
    Ok(basis.prefactor(j)? * weighted_sum(rule.weights(), terms.into_iter()))
}

/// `alpha_jk` with cone gating; distances follow the basis' [`DistanceMode`].
pub fn st_coeff_alpha(
    f: impl Fn(&[f64]) -> f64 + Sync,
    basis: &SpaceTimeBasis,
    j: usize,
    k: usize,
    rule: &QuadratureRule,
) -> Result<f64> {
    check_rule(basis, rule)?;
    let apex = basis.center(k)?.clone();
    basis.kappa(j)?;
    let values = sample_field(&f, rule)?;
    st_moment(basis, j, &apex, rule, &values)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceTimeExpansion {
    basis: SpaceTimeBasis,
    alpha0: f64,
    alpha: Vec<f64>,
}

impl SpaceTimeExpansion {
    pub fn new(basis: SpaceTimeBasis, alpha0: f64, alpha: Vec<f64>) -> Result<Self> {
        if alpha.len() != basis.size() {
            return Err(Error::invalid(format!(
                "coefficient count {} does not match J*K = {}",
                alpha.len(),
                basis.size()
            )));
        }
        if let Some(i) = alpha.iter().position(|a| !a.is_finite()) {
            return Err(Error::NonFinite { index: i });
        }
        if !alpha0.is_finite() {
            return Err(Error::NonFinite { index: alpha.len() });
        }
        Ok(Self { basis, alpha0, alpha })
    }

    pub fn basis(&self) -> &SpaceTimeBasis {
        &self.basis
    }

    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.alpha
    }

    pub fn coefficients_mut(&mut self) -> &mut [f64] {
        &mut self.alpha
    }

    pub fn get(&self, j: usize, k: usize) -> Option<f64> {
        if j == 0 || k == 0 || j > self.basis.modes || k > self.basis.centers.len() {
            return None;
        }
        Some(self.alpha[(k - 1) * self.basis.modes + j - 1])
    }
}

fn centroid(points: &[SpaceTimePoint]) -> SpaceTimePoint {
    let k = points.len() as f64;
    let n = points[0].x.len();
    SpaceTimePoint::new(
        (0..n).map(|d| points.iter().map(|p| p.x[d]).sum::<f64>() / k).collect(),
        points.iter().map(|p| p.t).sum::<f64>() / k,
    )
}

/// All coefficients; `rules[k]` covers the box part of centre `k`'s cone.
/// `alpha_0` uses the space-time centroid of the centres and `rules[0]`.
pub fn st_expand(
    f: impl Fn(&[f64]) -> f64 + Sync,
    basis: &SpaceTimeBasis,
    rules: &[QuadratureRule],
) -> Result<SpaceTimeExpansion> {
    if rules.len() != basis.centers.len() {
        return Err(Error::invalid(format!(
            "expected one rule per centre ({}), got {}",
            basis.centers.len(),
            rules.len()
        )));
    }
    let modes = basis.modes;
    let mut alpha = vec![0.0; basis.size()];
    for (k, (apex, rule)) in basis.centers.iter().zip(rules).enumerate() {
        check_rule(basis, rule)?;
        let values = sample_field(&f, rule).map_err(|e| Error::Coefficient {
            j: 0,
            k: k + 1,
            source: Box::new(e),
        })?;
        let row: Vec<Result<f64>> = (1..=modes)
            .into_par_iter()
            .map(|j| st_moment(basis, j, apex, rule, &values))
            .collect();
        for (j, v) in row.into_iter().enumerate() {
            alpha[k * modes + j] = v.map_err(|e| Error::Coefficient {
                j: j + 1,
                k: k + 1,
                source: Box::new(e),
            })?;
        }
    }
    let alpha0 = st_coeff_alpha0(&f, basis, &centroid(&basis.centers), &rules[0])?;
    SpaceTimeExpansion::new(basis.clone(), alpha0, alpha)
}

/// `alpha_0 + sum_jk alpha_jk phi_j(r_hat_k) H(c dt_k - r_k)`. The constant
/// term is the expansion's `alpha_0` in the as-printed mode and zero in the
/// consistent mode, unless `zeroth` overrides it.
pub fn st_reconstruct(exp: &SpaceTimeExpansion, p: &SpaceTimePoint, zeroth: Option<f64>) -> Result<f64> {
    let basis = &exp.basis;
    if p.x.len() != basis.n.get() {
        return Err(Error::DimensionMismatch {
            expected: basis.n.get(),
            found: p.x.len(),
        });
    }
    let head = zeroth.unwrap_or(match basis.weight_mode {
        WeightMode::AsPrinted => exp.alpha0,
        WeightMode::OrthogonalityConsistent => 0.0,
    });
    let mut node = p.x.clone();
    node.push(p.t);
    let mut sum = 0.0;
    for (k, apex) in basis.centers.iter().enumerate() {
        let (inside, _, r_hat) = basis.cone_coordinates(&node, apex);
        if !inside {
            continue;
        }
        for j in 0..basis.modes {
            let kappa = basis.zeros.zeros()[j] / basis.radius;
            sum += exp.alpha[k * basis.modes + j] * radial_kernel(basis.n, basis.order, kappa, r_hat);
        }
    }
    Ok(head + sum)
}

fn st_design(basis: &SpaceTimeBasis, rule: &QuadratureRule) -> DMatrix<f64> {
    let cols = basis.size();
    let rows: Vec<Vec<f64>> = (0..rule.len())
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0.0; cols];
            for (k, apex) in basis.centers.iter().enumerate() {
                for j in 1..=basis.modes {
                    row[k * basis.modes + j - 1] = basis.eval_node(j, apex, rule.node(i));
                }
            }
            row
        })
        .collect();
    DMatrix::from_fn(rule.len(), cols, |i, c| rows[i][c])
}

/// Raw inner products `<phi_a, phi_b>` over the rule (not normalised).
pub fn st_gram(basis: &SpaceTimeBasis, rule: &QuadratureRule) -> Result<DMatrix<f64>> {
    check_rule(basis, rule)?;
    let phi = st_design(basis, rule);
    let weighted = DMatrix::from_fn(phi.nrows(), phi.ncols(), |i, c| phi[(i, c)] * rule.weights()[i]);
    Ok(phi.transpose() * weighted)
}

/// Least-squares coefficients over the cone part of `rule`, solved by
/// truncated SVD on the Gram system scaled to unit diagonal.
pub fn st_project_oracle(
    f: impl Fn(&[f64]) -> f64 + Sync,
    basis: &SpaceTimeBasis,
    rule: &QuadratureRule,
    svd_cutoff: f64,
) -> Result<OracleSolution> {
    if !(svd_cutoff > 0.0 && svd_cutoff < 1.0) {
        return Err(Error::invalid(format!("svd cutoff must lie in (0, 1), got {svd_cutoff}")));
    }
    check_rule(basis, rule)?;
    let values = sample_field(&f, rule)?;
    let phi = st_design(basis, rule);
    let w = rule.weights();
    let weighted = DMatrix::from_fn(phi.nrows(), phi.ncols(), |i, c| phi[(i, c)] * w[i]);
    let g = phi.transpose() * &weighted;
    let b = weighted.transpose() * DVector::from_column_slice(&values);
    let scale: Vec<f64> = (0..g.ncols())
        .map(|a| if g[(a, a)] > 0.0 { 1.0 / g[(a, a)].sqrt() } else { 1.0 })
        .collect();
    let gs = DMatrix::from_fn(g.nrows(), g.ncols(), |a, c| g[(a, c)] * scale[a] * scale[c]);
    let bs = DVector::from_iterator(b.len(), b.iter().zip(&scale).map(|(v, s)| v * s));
    let (a, singular_values, discarded) = solve_truncated(&gs, &bs, svd_cutoff)?;
    Ok(OracleSolution {
        coefficients: a.iter().zip(&scale).map(|(a, s)| a * s).collect(),
        singular_values,
        discarded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(mode: WeightMode) -> SpaceTimeBasis {
        SpaceTimeBasis::new(
            Dimension::new(1).unwrap(),
            1.0,
            WaveContext::new(1.0).unwrap(),
            vec![SpaceTimePoint::new(vec![0.0], 0.0)],
            3,
            mode,
            DistanceMode::RhatThroughout,
        )
        .unwrap()
    }

    #[test]
    fn gated_outside_the_cone() {
        let b = basis(WeightMode::OrthogonalityConsistent);
        let p = SpaceTimePoint::new(vec![2.0], 1.0);
        assert_eq!(st_basis_eval(&b, 1, 1, &p).unwrap(), 0.0);
    }

    #[test]
    fn on_axis_and_on_surface() {
        let b = basis(WeightMode::OrthogonalityConsistent);
        let lambda = std::f64::consts::PI / 2.0;
        let axis = SpaceTimePoint::new(vec![0.0], 0.5);
        let expected = (2.0 / (std::f64::consts::PI * lambda)).sqrt() * (lambda * 0.5).cos();
        assert!((st_basis_eval(&b, 1, 1, &axis).unwrap() - expected).abs() < 1e-14);
        let surface = SpaceTimePoint::new(vec![0.7], 0.7);
        let limit = (2.0 / (std::f64::consts::PI * lambda)).sqrt();
        assert!((st_basis_eval(&b, 1, 1, &surface).unwrap() - limit).abs() < 1e-14);
    }

    #[test]
    fn reconstruct_returns_constant_outside_every_cone() {
        let b = basis(WeightMode::AsPrinted);
        let e = SpaceTimeExpansion::new(b, 0.25, vec![1.0, 2.0, 3.0]).unwrap();
        let p = SpaceTimePoint::new(vec![3.0], 1.0);
        assert_eq!(st_reconstruct(&e, &p, None).unwrap(), 0.25);
        let zero = SpaceTimeExpansion::new(basis(WeightMode::AsPrinted), 0.5, vec![0.0; 3]).unwrap();
        assert_eq!(st_reconstruct(&zero, &SpaceTimePoint::new(vec![0.0], 0.5), None).unwrap(), 0.5);
    }

    #[test]
    fn duplicate_centres_rejected() {
        let p = SpaceTimePoint::new(vec![0.0], 0.0);
        assert!(SpaceTimeBasis::new(
            Dimension::new(1).unwrap(),
            1.0,
            WaveContext::new(1.0).unwrap(),
            vec![p.clone(), p],
            2,
            WeightMode::AsPrinted,
            DistanceMode::RhatThroughout,
        )
        .is_err());
    }
}
