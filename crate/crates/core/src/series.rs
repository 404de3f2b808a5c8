//! Orthonormal Bessel RBF series on balls around a set of centres.
//!
//! Each centre `x_k` carries the modes
//! `phi_jk(x) = r^{1-n/2} J_{n/2-1}(lambda_j r / R)`, `r = |x - x_k| <= R`,
//! where `lambda_j` are the positive zeros of `J_{n/2-1}`. Mode functions are
//! supported on their own ball, where they vanish continuously at `r = R`.
//!
//! Two coefficient conventions are provided (see [`WeightMode`]); a Gram
//! matrix and an SVD least-squares projection give the ground truth both
//! are measured against.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::{
    ball_rule, dist_unchecked, unit_sphere_area, BallDomain, BallRuleSpec, Dimension, QuadratureRule, RadialMap,
    RuleKind, REDUCTION_BLOCK,
};
use crate::error::{Error, Result};
use crate::specfun::{bessel_zeros, gamma, j_unchecked, Order, ZeroTable};

/// Coefficient convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightMode {
    /// Weight `r^{n/2}`, prefactor `2 (lambda_j / 2 pi)^{1-n/2} / (S_n R^{n+1} J_{n/2}(lambda_j)^2)`.
    AsPrinted,
    /// Weight `r^{1-n/2}`, prefactor `2 / (S_n R^2 J_{n/2}(lambda_j)^2)`: the
    /// orthogonal projection onto each mode.
    OrthogonalityConsistent,
}

impl WeightMode {
    pub fn label(self) -> &'static str {
        match self {
            WeightMode::AsPrinted => "as_printed",
            WeightMode::OrthogonalityConsistent => "orthogonality_consistent",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BesselRbfBasis {
    n: Dimension,
    radius: f64,
    centers: Vec<Vec<f64>>,
    modes: usize,
    order: Order,
    zeros: ZeroTable,
    weight_mode: WeightMode,
}

impl BesselRbfBasis {
    pub fn new(
        n: Dimension,
        radius: f64,
        centers: Vec<Vec<f64>>,
        modes: usize,
        weight_mode: WeightMode,
    ) -> Result<Self> {
        if modes == 0 {
            return Err(Error::invalid("mode count J must be at least 1"));
        }
        let order = Order::for_dimension(n.get());
        let zeros = bessel_zeros(order, modes)?;
        Self::with_zero_table(n, radius, centers, zeros, weight_mode)
    }

    /// Builds a basis on a caller-supplied zero table. The table's order must
    /// be `n/2 - 1`; its entries are not re-checked.
    pub fn with_zero_table(
        n: Dimension,
        radius: f64,
        centers: Vec<Vec<f64>>,
        zeros: ZeroTable,
        weight_mode: WeightMode,
    ) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::invalid(format!("radius must be positive, got {radius}")));
        }
        if centers.is_empty() {
            return Err(Error::invalid("at least one centre is required"));
        }
        for c in &centers {
            if c.len() != n.get() {
                return Err(Error::DimensionMismatch {
                    expected: n.get(),
                    found: c.len(),
                });
            }
        }
        for (a, ca) in centers.iter().enumerate() {
            for cb in &centers[a + 1..] {
                if ca == cb {
                    return Err(Error::invalid("centres must be pairwise distinct"));
                }
            }
        }
        let order = Order::for_dimension(n.get());
        if zeros.order() != order {
            return Err(Error::invalid(format!(
                "zero table order {} does not match n/2 - 1 = {}",
                zeros.order().value(),
                order.value()
            )));
        }
        if zeros.is_empty() {
            return Err(Error::invalid("mode count J must be at least 1"));
        }
        Ok(Self {
            n,
            radius,
            centers,
            modes: zeros.len(),
            order,
            zeros,
            weight_mode,
        })
    }

    pub fn dimension(&self) -> Dimension {
        self.n
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn centers(&self) -> &[Vec<f64>] {
        &self.centers
    }

    /// Mode count `J`.
    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn zeros(&self) -> &ZeroTable {
        &self.zeros
    }

    pub fn weight_mode(&self) -> WeightMode {
        self.weight_mode
    }

    pub fn with_weight_mode(mut self, mode: WeightMode) -> Self {
        self.weight_mode = mode;
        self
    }

    /// `lambda_j`, 1-based.
    pub fn lambda(&self, j: usize) -> Result<f64> {
        self.zeros.get(j).filter(|_| j <= self.modes).ok_or(Error::IndexOutOfRange {
            index: j,
            len: self.modes,
        })
    }

    fn check_center(&self, k: usize) -> Result<&[f64]> {
        k.checked_sub(1)
            .and_then(|i| self.centers.get(i))
            .map(Vec::as_slice)
            .ok_or(Error::IndexOutOfRange {
                index: k,
                len: self.centers.len(),
            })
    }

    /// `r^{1-n/2} J_{n/2-1}(lambda_j r / R)`, with its finite limit at `r = 0`.
    pub fn eval(&self, j: usize, r: f64) -> Result<f64> {
        let lambda = self.lambda(j)?;
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::Domain {
                function: "basis_eval",
                value: r,
            });
        }
        Ok(radial_kernel(self.n, self.order, lambda / self.radius, r))
    }

    /// `||phi_j||^2` over one ball: `S_n R^2 J_{n/2}(lambda_j)^2 / 2`.
    pub fn norm_squared(&self, j: usize) -> Result<f64> {
        let lambda = self.lambda(j)?;
        let jn = j_unchecked(self.order.value() + 1.0, lambda);
        Ok(unit_sphere_area(self.n) * self.radius * self.radius * jn * jn / 2.0)
    }

    /// Mode `(j, k)` at `x`, zero outside `B(x_k, R)`.
    pub fn function(&self, j: usize, k: usize, x: &[f64]) -> Result<f64> {
        let center = self.check_center(k)?;
        let lambda = self.lambda(j)?;
        let r = dist_unchecked(x, center);
        if r > self.radius * (1.0 + 1e-12) {
            return Ok(0.0);
        }
        Ok(radial_kernel(self.n, self.order, lambda / self.radius, r))
    }

    /// Number of basis functions `J * K`; flat index is `(k - 1) * J + (j - 1)`.
    pub fn size(&self) -> usize {
        self.modes * self.centers.len()
    }

    /// Centroid of the centres, the default distance origin of `alpha_0`.
    pub fn centroid(&self) -> Vec<f64> {
        let k = self.centers.len() as f64;
        (0..self.n.get())
            .map(|d| self.centers.iter().map(|c| c[d]).sum::<f64>() / k)
            .collect()
    }

    fn coefficient_prefactor(&self, j: usize) -> Result<f64> {
        let lambda = self.lambda(j)?;
        let n = self.n.as_f64();
        let s_n = unit_sphere_area(self.n);
        let jn = j_unchecked(self.order.value() + 1.0, lambda);
        Ok(match self.weight_mode {
            WeightMode::AsPrinted => {
                2.0 / (s_n * self.radius.powf(n + 1.0) * jn * jn)
                    * (lambda / (2.0 * PI)).powf(1.0 - 0.5 * n)
            }
            WeightMode::OrthogonalityConsistent => 2.0 / (s_n * self.radius * self.radius * jn * jn),
        })
    }

    /// The coefficient weight at distance `r`, including the Bessel factor.
    fn coefficient_weight(&self, wavenumber: f64, r: f64) -> f64 {
        let kernel = radial_kernel(self.n, self.order, wavenumber, r);
        match self.weight_mode {
            // r^{n/2} J = r^{n-1} r^{1-n/2} J
            WeightMode::AsPrinted => r.powi(self.n.get() as i32 - 1) * kernel,
            WeightMode::OrthogonalityConsistent => kernel,
        }
    }
}

/// `r^{1-n/2} J_{n/2-1}(kappa r)` with the `r -> 0` limit `(kappa/2)^v / Gamma(v+1)`.
pub(crate) fn radial_kernel(n: Dimension, order: Order, kappa: f64, r: f64) -> f64 {
    let v = order.value();
    if r == 0.0 {
        return (0.5 * kappa).powf(v) / gamma(v + 1.0);
    }
    let z = kappa * r;
    match n.get() {
        1 => (2.0 / (PI * kappa)).sqrt() * z.cos(),
        2 => j_unchecked(0.0, z),
        3 => (2.0 * kappa / PI).sqrt() * z.sin() / z,
        _ => r.powf(-v) * j_unchecked(v, z),
    }
}

/// Coefficients `alpha_0` and `alpha_jk` attached to a basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expansion {
    basis: BesselRbfBasis,
    alpha0: f64,
    /// Row-major by centre: `alpha[(k-1) * J + (j-1)]`.
    alpha: Vec<f64>,
}

impl Expansion {
    pub fn new(basis: BesselRbfBasis, alpha0: f64, alpha: Vec<f64>) -> Result<Self> {
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
        Ok(Self {
            basis,
            alpha0,
            alpha,
        })
    }

    pub fn basis(&self) -> &BesselRbfBasis {
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

    /// `alpha_jk`, 1-based.
    pub fn get(&self, j: usize, k: usize) -> Option<f64> {
        if j == 0 || k == 0 || j > self.basis.modes || k > self.basis.centers.len() {
            return None;
        }
        Some(self.alpha[(k - 1) * self.basis.modes + j - 1])
    }

    /// Coefficients of one centre, `j = 1..=J`.
    pub fn center_coefficients(&self, k: usize) -> &[f64] {
        let m = self.basis.modes;
        &self.alpha[(k - 1) * m..k * m]
    }
}

pub(crate) fn sample_field(
    f: &(impl Fn(&[f64]) -> f64 + Sync),
    rule: &QuadratureRule,
) -> Result<Vec<f64>> {
    let values: Vec<f64> = (0..rule.len()).into_par_iter().map(|i| f(rule.node(i))).collect();
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    Ok(values)
}

/// Block-ordered `sum w_i g_i`, matching [`crate::domain::integrate`].
pub(crate) fn weighted_sum(weights: &[f64], values: impl Iterator<Item = f64>) -> f64 {
    let mut total = 0.0;
    let mut partial = 0.0;
    for (i, (w, v)) in weights.iter().zip(values).enumerate() {
        partial += w * v;
        if (i + 1) % REDUCTION_BLOCK == 0 {
            total += partial;
            partial = 0.0;
        }
    }
    total + partial
}

/// `alpha_0 = 2 / ((n+2) S_n R^{n+1}) int r^{n/2} f`, with `r` measured from `base_point`.
pub fn coeff_alpha0(
    f: impl Fn(&[f64]) -> f64 + Sync,
    basis: &BesselRbfBasis,
    base_point: &[f64],
    rule: &QuadratureRule,
) -> Result<f64> {
    let n = basis.n.as_f64();
    let pref = 2.0 / ((n + 2.0) * unit_sphere_area(basis.n) * basis.radius.powf(n + 1.0));
    Ok(pref * weighted_radial_moment(&f, base_point, 0.5 * n, basis.radius, rule)?)
}

/// `int_{B(base, R)} r^p f`.
fn weighted_radial_moment(
    f: &(impl Fn(&[f64]) -> f64 + Sync),
    base: &[f64],
    power: f64,
    radius: f64,
    rule: &QuadratureRule,
) -> Result<f64> {
    if base.len() != rule.dim() {
        return Err(Error::DimensionMismatch {
            expected: rule.dim(),
            found: base.len(),
        });
    }
    let values = sample_field(f, rule)?;
    let limit = radius * (1.0 + 1e-12);
    Ok(weighted_sum(
        rule.weights(),
        (0..rule.len()).map(|i| {
            let r = dist_unchecked(rule.node(i), base);
            if r > limit {
                0.0
            } else {
                r.powf(power) * values[i]
            }
        }),
    ))
}

/// The x-dependent zeroth term `1 / (S_n R^{n+1}) int_{B(x, R)} r_{x zeta}^{n/2} f`.
/// Equals `(n + 2) / 2` times [`coeff_alpha0`] taken at base point `x`.
pub fn reconstruct_zeroth(
    f: impl Fn(&[f64]) -> f64 + Sync,
    basis: &BesselRbfBasis,
    x: &[f64],
    rule: &QuadratureRule,
) -> Result<f64> {
    let n = basis.n.as_f64();
    let pref = 1.0 / (unit_sphere_area(basis.n) * basis.radius.powf(n + 1.0));
    Ok(pref * weighted_radial_moment(&f, x, 0.5 * n, basis.radius, rule)?)
}

/// Moments of mode `j` about centre `k` from pre-sampled values.
fn mode_moment(basis: &BesselRbfBasis, j: usize, center: &[f64], rule: &QuadratureRule, values: &[f64]) -> Result<f64> {
    let kappa = basis.lambda(j)? / basis.radius;
    let limit = basis.radius * (1.0 + 1e-12);
    let integral = weighted_sum(
        rule.weights(),
        (0..rule.len()).map(|i| {
            let r = dist_unchecked(rule.node(i), center);
            if r > limit {
                0.0
            } else {
                basis.coefficient_weight(kappa, r) * values[i]
            }
        }),
    );
    Ok(basis.coefficient_prefactor(j)? * integral)
}

/// `alpha_jk` in the basis' [`WeightMode`]; the rule must cover `B(x_k, R)`.
pub fn coeff_alpha(
    f: impl Fn(&[f64]) -> f64 + Sync,
    basis: &BesselRbfBasis,
    j: usize,
    k: usize,
    rule: &QuadratureRule,
) -> Result<f64> {
    let center = basis.check_center(k)?.to_vec();
    basis.lambda(j)?;
    let values = sample_field(&f, rule)?;
    mode_moment(basis, j, &center, rule, &values)
}

/// All coefficients, with `alpha_0` taken about the centroid of the centres.
pub fn expand(
    f: impl Fn(&[f64]) -> f64 + Sync,
    basis: &BesselRbfBasis,
    rules: &[QuadratureRule],
) -> Result<Expansion> {
    expand_about(f, basis, rules, &basis.centroid())
}

/// As [`expand`] with an explicit base point for `alpha_0`. `rules[k]` covers
/// `B(x_k, R)`; `alpha_0` integrates over `rules[0]` moved onto the base point.
pub fn expand_about(
    f: impl Fn(&[f64]) -> f64 + Sync,
    basis: &BesselRbfBasis,
    rules: &[QuadratureRule],
    base_point: &[f64],
) -> Result<Expansion> {
    if rules.len() != basis.centers.len() {
        return Err(Error::invalid(format!(
            "expected one rule per centre ({}), got {}",
            basis.centers.len(),
            rules.len()
        )));
    }
    let modes = basis.modes;
    let mut alpha = vec![0.0; basis.size()];
    for (k, (center, rule)) in basis.centers.iter().zip(rules).enumerate() {
        let values = sample_field(&f, rule).map_err(|e| Error::Coefficient {
            j: 0,
            k: k + 1,
            source: Box::new(e),
        })?;
        let row: Vec<Result<f64>> = (1..=modes)
            .into_par_iter()
            .map(|j| mode_moment(basis, j, center, rule, &values))
            .collect();
        for (j, value) in row.into_iter().enumerate() {
            alpha[k * modes + j] = value.map_err(|e| Error::Coefficient {
                j: j + 1,
                k: k + 1,
                source: Box::new(e),
            })?;
        }
    }
    let alpha0_rule = alpha0_rule(basis, &rules[0], base_point)?;
    let alpha0 = coeff_alpha0(&f, basis, base_point, &alpha0_rule)?;
    Expansion::new(basis.clone(), alpha0, alpha)
}

/// Ball rules are rebuilt about `base` with the quadratic radial map, which
/// absorbs the `r^{n/2}` weight; other rules are translated as they are.
fn alpha0_rule(basis: &BesselRbfBasis, rule: &QuadratureRule, base: &[f64]) -> Result<QuadratureRule> {
    let meta = rule.meta();
    if let (RuleKind::Ball, Some(radial_order), Some(angular), Some(radius)) =
        (meta.kind, meta.radial_order, meta.angular, meta.radius)
    {
        let spec = BallRuleSpec {
            radial_order,
            angular,
            radial_map: RadialMap::Quadratic,
        };
        return ball_rule(basis.n, &BallDomain::new(base.to_vec(), radius)?, &spec);
    }
    let offset: Vec<f64> = base.iter().zip(&basis.centers[0]).map(|(b, c)| b - c).collect();
    rule.translated(&offset)
}

/// `zeroth + sum_jk alpha_jk phi_jk(x)`. The as-printed convention needs the
/// x-dependent zeroth term from [`reconstruct_zeroth`].
pub fn reconstruct(exp: &Expansion, x: &[f64], zeroth: Option<f64>) -> Result<f64> {
    let basis = &exp.basis;
    if x.len() != basis.n.get() {
        return Err(Error::DimensionMismatch {
            expected: basis.n.get(),
            found: x.len(),
        });
    }
    let head = match (basis.weight_mode, zeroth) {
        (WeightMode::AsPrinted, None) => return Err(Error::MissingZeroth),
        (_, z) => z.unwrap_or(0.0),
    };
    let limit = basis.radius * (1.0 + 1e-12);
    let mut sum = 0.0;
    for (k, center) in basis.centers.iter().enumerate() {
        let r = dist_unchecked(x, center);
        if r > limit {
            continue;
        }
        for j in 1..=basis.modes {
            let kappa = basis.zeros.zeros()[j - 1] / basis.radius;
            sum += exp.alpha[k * basis.modes + j - 1] * radial_kernel(basis.n, basis.order, kappa, r);
        }
    }
    Ok(head + sum)
}

/// Values of every basis function at every node: `rows = nodes`, `cols = J*K`.
fn design_matrix(basis: &BesselRbfBasis, rule: &QuadratureRule) -> DMatrix<f64> {
    let cols = basis.size();
    let rows: Vec<Vec<f64>> = (0..rule.len())
        .into_par_iter()
        .map(|i| {
            let x = rule.node(i);
            let mut row = vec![0.0; cols];
            for (k, center) in basis.centers.iter().enumerate() {
                let r = dist_unchecked(x, center);
                if r > basis.radius * (1.0 + 1e-12) {
                    continue;
                }
                for j in 0..basis.modes {
                    let kappa = basis.zeros.zeros()[j] / basis.radius;
                    row[k * basis.modes + j] = radial_kernel(basis.n, basis.order, kappa, r);
                }
            }
            row
        })
        .collect();
    DMatrix::from_fn(rule.len(), cols, |i, c| rows[i][c])
}

fn norms(basis: &BesselRbfBasis) -> Result<Vec<f64>> {
    let per_center: Vec<f64> = (1..=basis.modes)
        .map(|j| basis.norm_squared(j))
        .collect::<Result<_>>()?;
    Ok((0..basis.centers.len()).flat_map(|_| per_center.iter().copied()).collect())
}

/// Inner products of the unit-normalised basis functions over `rule`.
pub fn gram(basis: &BesselRbfBasis, rule: &QuadratureRule) -> Result<DMatrix<f64>> {
    let phi = design_matrix(basis, rule);
    let scale: Vec<f64> = norms(basis)?.iter().map(|n| 1.0 / n.sqrt()).collect();
    let scaled = DMatrix::from_fn(phi.nrows(), phi.ncols(), |i, c| phi[(i, c)] * scale[c]);
    let weighted = DMatrix::from_fn(phi.nrows(), phi.ncols(), |i, c| scaled[(i, c)] * rule.weights()[i]);
    Ok(scaled.transpose() * weighted)
}

/// Output of [`project_oracle`].
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSolution {
    /// Same layout as [`Expansion::coefficients`].
    pub coefficients: Vec<f64>,
    pub singular_values: Vec<f64>,
    /// Singular values dropped below the cutoff; non-zero means rank-deficient.
    pub discarded: usize,
}

impl OracleSolution {
    pub fn into_expansion(self, basis: &BesselRbfBasis, alpha0: f64) -> Result<Expansion> {
        Expansion::new(basis.clone(), alpha0, self.coefficients)
    }
}

/// L2-optimal coefficients over `rule`: solves `G a = b` (Gram matrix,
/// moments) by truncated SVD on the unit-normalised system.
pub fn project_oracle(
    f: impl Fn(&[f64]) -> f64 + Sync,
    basis: &BesselRbfBasis,
    rule: &QuadratureRule,
    svd_cutoff: f64,
) -> Result<OracleSolution> {
    if !(svd_cutoff > 0.0 && svd_cutoff < 1.0) {
        return Err(Error::invalid(format!("svd cutoff must lie in (0, 1), got {svd_cutoff}")));
    }
    let values = sample_field(&f, rule)?;
    let phi = design_matrix(basis, rule);
    let scale: Vec<f64> = norms(basis)?.iter().map(|n| 1.0 / n.sqrt()).collect();
    let scaled = DMatrix::from_fn(phi.nrows(), phi.ncols(), |i, c| phi[(i, c)] * scale[c]);
    let w = DVector::from_column_slice(rule.weights());
    let wf = DVector::from_iterator(values.len(), values.iter().zip(w.iter()).map(|(v, w)| v * w));
    let weighted = DMatrix::from_fn(scaled.nrows(), scaled.ncols(), |i, c| scaled[(i, c)] * w[i]);
    let g = scaled.transpose() * &weighted;
    let b = scaled.transpose() * wf;
    solve_truncated(&g, &b, svd_cutoff).map(|(a, singular_values, discarded)| OracleSolution {
        coefficients: a.iter().zip(&scale).map(|(a, s)| a * s).collect(),
        singular_values,
        discarded,
    })
}

/// Pseudo-inverse solve keeping singular values above `cutoff * max`.
pub(crate) fn solve_truncated(
    g: &DMatrix<f64>,
    b: &DVector<f64>,
    cutoff: f64,
) -> Result<(Vec<f64>, Vec<f64>, usize)> {
    let svd = g.clone().svd(true, true);
    let u = svd.u.as_ref().ok_or_else(|| Error::invalid("SVD failed to produce U"))?;
    let v_t = svd.v_t.as_ref().ok_or_else(|| Error::invalid("SVD failed to produce V"))?;
    let sigma = &svd.singular_values;
    let largest = sigma.iter().copied().fold(0.0, f64::max);
    let mut x = DVector::zeros(g.ncols());
    let mut discarded = 0;
    for i in 0..sigma.len() {
        if largest == 0.0 || sigma[i] <= cutoff * largest {
            discarded += 1;
            continue;
        }
        let coef = u.column(i).dot(b) / sigma[i];
        x += v_t.row(i).transpose() * coef;
    }
    let mut singular: Vec<f64> = sigma.iter().copied().collect();
    singular.sort_by(|a, b| b.total_cmp(a));
    Ok((x.iter().copied().collect(), singular, discarded))
}

/// `sqrt(int (f - g)^2)` over `rule`.
pub fn l2_error(
    f: impl Fn(&[f64]) -> f64 + Sync,
    g: impl Fn(&[f64]) -> f64 + Sync,
    rule: &QuadratureRule,
) -> Result<f64> {
    let fv = sample_field(&f, rule)?;
    let gv = sample_field(&g, rule)?;
    let sq = weighted_sum(rule.weights(), fv.iter().zip(&gv).map(|(a, b)| (a - b) * (a - b)));
    Ok(sq.max(0.0).sqrt())
}

/// `sqrt(int f^2)`.
pub fn l2_norm(f: impl Fn(&[f64]) -> f64 + Sync, rule: &QuadratureRule) -> Result<f64> {
    l2_error(f, |_| 0.0, rule)
}
