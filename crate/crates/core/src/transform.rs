//! Continuous Bessel transform pair and the bi-orthogonal inverse on
//! discrete `(lambda, xi)` grids.
//!
//! Forward: `F(lambda, xi) = int r^{n/2} f(zeta) J_{n/2-1}(lambda r) dzeta`, `r = |xi - zeta|`.
//! Inverse: `f(x) = 1/(C S_n) int int F(lambda, xi) r^{1-n/2} J_{n/2-1}(lambda r) dxi dmu(lambda)`,
//! `r = |x - xi|`, with `dmu` either `dlambda` or `lambda dlambda`.
//! The normalising constants are never fixed analytically; they come out of
//! [`calibrate_constant`] as the least-squares ratio on a reference field.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domain::{dist_unchecked, unit_sphere_area, Dimension, QuadratureRule};
use crate::error::{Error, Result};
use crate::series::{radial_kernel, sample_field, weighted_sum};
use crate::specfun::{y_unchecked, Order};

/// Measure of the spectral integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureMode {
    Flat,
    LambdaWeighted,
}

impl MeasureMode {
    pub const ALL: [MeasureMode; 2] = [MeasureMode::Flat, MeasureMode::LambdaWeighted];

    fn factor(self, lambda: f64) -> f64 {
        match self {
            MeasureMode::Flat => 1.0,
            MeasureMode::LambdaWeighted => lambda,
        }
    }
}

/// Radial weight of the forward integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ForwardWeight {
    /// `r^{n/2}`.
    #[default]
    AsPrinted,
    /// `r^{1-n/2}`, the same kernel as the inverse.
    Symmetric,
}

/// Midpoint nodes on `(0, lambda_max]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralGrid {
    lambdas: Vec<f64>,
    weights: Vec<f64>,
    lambda_max: f64,
    measure_mode: MeasureMode,
}

impl SpectralGrid {
    pub fn midpoint(lambda_max: f64, count: usize, measure_mode: MeasureMode) -> Result<Self> {
        if !(lambda_max > 0.0) || !lambda_max.is_finite() {
            return Err(Error::invalid(format!("lambda_max must be positive, got {lambda_max}")));
        }
        if count == 0 {
            return Err(Error::invalid("spectral grid needs at least one node"));
        }
        let h = lambda_max / count as f64;
        Ok(Self {
            lambdas: (0..count).map(|i| (i as f64 + 0.5) * h).collect(),
            weights: vec![h; count],
            lambda_max,
            measure_mode,
        })
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    /// `dlambda` weights; the measure factor is applied by the inverses.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    pub fn measure_mode(&self) -> MeasureMode {
        self.measure_mode
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    pub fn with_measure(mut self, mode: MeasureMode) -> Self {
        self.measure_mode = mode;
        self
    }
}

/// Centre nodes `xi` standing in for all of space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CenterGrid {
    dim: usize,
    xis: Vec<f64>,
    weights: Vec<f64>,
    extent: f64,
}

impl CenterGrid {
    /// Trapezoid rule with `count` equispaced nodes on `[-half_width, half_width]`.
    pub fn uniform_line(half_width: f64, count: usize) -> Result<Self> {
        if !(half_width > 0.0) || count < 2 {
            return Err(Error::invalid("centre grid needs a positive width and at least two nodes"));
        }
        let h = 2.0 * half_width / (count - 1) as f64;
        let xis: Vec<f64> = (0..count).map(|i| -half_width + i as f64 * h).collect();
        let mut weights = vec![h; count];
        weights[0] *= 0.5;
        weights[count - 1] *= 0.5;
        Ok(Self {
            dim: 1,
            xis,
            weights,
            extent: half_width,
        })
    }

    /// Any quadrature rule as a centre grid.
    pub fn from_rule(rule: &QuadratureRule) -> Self {
        let extent = rule
            .iter()
            .map(|(x, _)| x.iter().map(|v| v * v).sum::<f64>().sqrt())
            .fold(0.0, f64::max);
        Self {
            dim: rule.dim(),
            xis: (0..rule.len()).flat_map(|i| rule.node(i).to_vec()).collect(),
            weights: rule.weights().to_vec(),
            extent,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn xi(&self, i: usize) -> &[f64] {
        &self.xis[i * self.dim..(i + 1) * self.dim]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Sampled `F(lambda_i, xi_m)`, row-major in `lambda`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformData {
    n: Dimension,
    spectral: SpectralGrid,
    centers: CenterGrid,
    values: Vec<f64>,
    forward_weight: ForwardWeight,
    /// Share of `int |f|` carried by the outer tenth of the forward rule.
    tail_fraction: f64,
}

impl TransformData {
    pub fn new(n: Dimension, spectral: SpectralGrid, centers: CenterGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != spectral.len() * centers.len() {
            return Err(Error::invalid(format!(
                "transform values: expected {} entries, got {}",
                spectral.len() * centers.len(),
                values.len()
            )));
        }
        if centers.dim() != n.get() {
            return Err(Error::DimensionMismatch {
                expected: n.get(),
                found: centers.dim(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            n,
            spectral,
            centers,
            values,
            forward_weight: ForwardWeight::AsPrinted,
            tail_fraction: 0.0,
        })
    }

    pub fn dimension(&self) -> Dimension {
        self.n
    }

    pub fn spectral(&self) -> &SpectralGrid {
        &self.spectral
    }

    pub fn centers(&self) -> &CenterGrid {
        &self.centers
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, lambda_index: usize, xi_index: usize) -> f64 {
        self.values[lambda_index * self.centers.len() + xi_index]
    }

    pub fn forward_weight(&self) -> ForwardWeight {
        self.forward_weight
    }

    pub fn tail_fraction(&self) -> f64 {
        self.tail_fraction
    }

    /// Rough decay diagnostic: the forward rule's outer shell carries less
    /// than `1e-6` of `int |f|`.
    pub fn decays(&self) -> bool {
        self.tail_fraction <= 1e-6
    }

    pub fn with_measure(mut self, mode: MeasureMode) -> Self {
        self.spectral.measure_mode = mode;
        self
    }

    pub fn scaled(&self, a: f64) -> Self {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= a);
        out
    }
}

fn forward_kernel(n: Dimension, order: Order, weight: ForwardWeight, lambda: f64, r: f64) -> f64 {
    let k = radial_kernel(n, order, lambda, r);
    match weight {
        ForwardWeight::AsPrinted => r.powi(n.get() as i32 - 1) * k,
        ForwardWeight::Symmetric => k,
    }
}

/// `F(lambda, xi)` by the truncated rule.
pub fn forward_bessel(
    f: impl Fn(&[f64]) -> f64 + Sync,
    n: Dimension,
    lambda: f64,
    xi: &[f64],
    rule: &QuadratureRule,
) -> Result<f64> {
    forward_bessel_weighted(f, n, lambda, xi, rule, ForwardWeight::AsPrinted)
}

pub fn forward_bessel_weighted(
    f: impl Fn(&[f64]) -> f64 + Sync,
    n: Dimension,
    lambda: f64,
    xi: &[f64],
    rule: &QuadratureRule,
    weight: ForwardWeight,
) -> Result<f64> {
    check_lambda(lambda)?;
    check_dim(n, xi.len())?;
    check_dim(n, rule.dim())?;
    let values = sample_field(&f, rule)?;
    Ok(forward_entry(n, weight, lambda, xi, rule, &values))
}

fn forward_entry(n: Dimension, weight: ForwardWeight, lambda: f64, xi: &[f64], rule: &QuadratureRule, values: &[f64]) -> f64 {
    let order = Order::for_dimension(n.get());
    weighted_sum(
        rule.weights(),
        (0..rule.len()).map(|i| {
            if values[i] == 0.0 {
                0.0
            } else {
                forward_kernel(n, order, weight, lambda, dist_unchecked(xi, rule.node(i))) * values[i]
            }
        }),
    )
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Domain {
            function: "transform",
            value: lambda,
        });
    }
    Ok(())
}

fn check_dim(n: Dimension, found: usize) -> Result<()> {
    if found != n.get() {
        return Err(Error::DimensionMismatch {
            expected: n.get(),
            found,
        });
    }
    Ok(())
}

/// `F` on every `(lambda, xi)` pair.
pub fn forward_grid(
    f: impl Fn(&[f64]) -> f64 + Sync,
    n: Dimension,
    spectral: &SpectralGrid,
    centers: &CenterGrid,
    rule: &QuadratureRule,
    weight: ForwardWeight,
) -> Result<TransformData> {
    check_dim(n, centers.dim())?;
    check_dim(n, rule.dim())?;
    let values = sample_field(&f, rule)?;
    let cols = centers.len();
    let entries: Vec<f64> = (0..spectral.len() * cols)
        .into_par_iter()
        .map(|e| {
            let (i, m) = (e / cols, e % cols);
            forward_entry(n, weight, spectral.lambdas[i], centers.xi(m), rule, &values)
        })
        .collect();
    if let Some(e) = entries.iter().position(|v| !v.is_finite()) {
        return Err(Error::TransformEntry {
            lambda: e / cols,
            xi: e % cols,
            source: Box::new(Error::NonFinite { index: e }),
        });
    }
    let mut td = TransformData::new(n, spectral.clone(), centers.clone(), entries)?;
    td.forward_weight = weight;
    td.tail_fraction = tail_fraction(rule, &values);
    Ok(td)
}

fn tail_fraction(rule: &QuadratureRule, values: &[f64]) -> f64 {
    let total_w = rule.total_weight();
    if rule.is_empty() || total_w == 0.0 {
        return 0.0;
    }
    let centroid: Vec<f64> = (0..rule.dim())
        .map(|d| rule.iter().map(|(x, w)| w * x[d]).sum::<f64>() / total_w)
        .collect();
    let radii: Vec<f64> = (0..rule.len()).map(|i| dist_unchecked(rule.node(i), &centroid)).collect();
    let outer = radii.iter().copied().fold(0.0, f64::max);
    let (mut tail, mut all) = (0.0, 0.0);
    for ((r, v), w) in radii.iter().zip(values).zip(rule.weights()) {
        let a = (w * v).abs();
        all += a;
        if *r > 0.9 * outer {
            tail += a;
        }
    }
    if all == 0.0 {
        0.0
    } else {
        tail / all
    }
}

/// Inverse with constant `c`, under the grid's measure mode.
pub fn inverse_bessel(td: &TransformData, c: f64, x: &[f64]) -> Result<f64> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::invalid(format!("inverse constant must be positive, got {c}")));
    }
    check_dim(td.n, x.len())?;
    let order = Order::for_dimension(td.n.get());
    let cols = td.centers.len();
    let radii: Vec<f64> = (0..cols).map(|m| dist_unchecked(x, td.centers.xi(m))).collect();
    let mut total = 0.0;
    for (i, (&lambda, &wl)) in td.spectral.lambdas.iter().zip(&td.spectral.weights).enumerate() {
        let row = &td.values[i * cols..(i + 1) * cols];
        let inner = weighted_sum(
            &td.centers.weights,
            row.iter().zip(&radii).map(|(fv, &r)| fv * radial_kernel(td.n, order, lambda, r)),
        );
        total += wl * td.spectral.measure_mode.factor(lambda) * inner;
    }
    if !total.is_finite() {
        return Err(Error::NonFinite { index: 0 });
    }
    Ok(total / (c * unit_sphere_area(td.n)))
}

/// A pluggable `g_n(lambda r)` for the bi-orthogonal inverse.
pub trait BiorthogonalKernel: Send + Sync {
    fn name(&self) -> &str;
    /// Value at `r > 0`; a divergence error at points where it is singular.
    fn eval(&self, n: Dimension, lambda: f64, r: f64) -> Result<f64>;
}

/// `r^{1-n/2} Y_{n/2-1}(lambda r)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SecondKindKernel;

impl BiorthogonalKernel for SecondKindKernel {
    fn name(&self) -> &str {
        "second_kind"
    }

    fn eval(&self, n: Dimension, lambda: f64, r: f64) -> Result<f64> {
        kernel_g(n, lambda, r)
    }
}

/// Kernel from a closure, for experiments with other `g_n`.
#[derive(Clone)]
pub struct FnKernel {
    name: String,
    f: Arc<dyn Fn(Dimension, f64, f64) -> Result<f64> + Send + Sync>,
}

impl FnKernel {
    pub fn new(name: impl Into<String>, f: impl Fn(Dimension, f64, f64) -> Result<f64> + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            f: Arc::new(f),
        }
    }
}

impl fmt::Debug for FnKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnKernel").field("name", &self.name).finish()
    }
}

impl BiorthogonalKernel for FnKernel {
    fn name(&self) -> &str {
        &self.name
    }

    fn eval(&self, n: Dimension, lambda: f64, r: f64) -> Result<f64> {
        (self.f)(n, lambda, r)
    }
}

/// Default `g_n`: `r^{1-n/2} Y_{n/2-1}(lambda r)` for `r > 0`.
pub fn kernel_g(n: Dimension, lambda: f64, r: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if r == 0.0 {
        return Err(Error::Divergence {
            function: "kernel_g",
            order: Order::for_dimension(n.get()).value(),
        });
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain {
            function: "kernel_g",
            value: r,
        });
    }
    let v = Order::for_dimension(n.get()).value();
    let z = lambda * r;
    Ok(match n.get() {
        1 => (2.0 / (std::f64::consts::PI * lambda)).sqrt() * z.sin(),
        2 => y_unchecked(0.0, z),
        _ => r.powf(-v) * y_unchecked(v, z),
    })
}

/// Value of the bi-orthogonal inverse with the `(lambda, xi)` pairs skipped
/// because the kernel was singular there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BiorthogonalValue {
    pub value: f64,
    pub collisions: Vec<(usize, usize)>,
}

/// `1/C_g int int F(lambda, xi) g_n(lambda |x - xi|) dxi dmu(lambda)` over `lambda > 0`.
pub fn inverse_biorthogonal(
    td: &TransformData,
    c_g: f64,
    x: &[f64],
    kernel: &dyn BiorthogonalKernel,
) -> Result<BiorthogonalValue> {
    if c_g == 0.0 || !c_g.is_finite() {
        return Err(Error::invalid(format!("C_g must be finite and non-zero, got {c_g}")));
    }
    check_dim(td.n, x.len())?;
    let cols = td.centers.len();
    let radii: Vec<f64> = (0..cols).map(|m| dist_unchecked(x, td.centers.xi(m))).collect();
    let mut collisions = Vec::new();
    let mut total = 0.0;
    for (i, (&lambda, &wl)) in td.spectral.lambdas.iter().zip(&td.spectral.weights).enumerate() {
        let row = &td.values[i * cols..(i + 1) * cols];
        let mut terms = Vec::with_capacity(cols);
        for (m, (fv, &r)) in row.iter().zip(&radii).enumerate() {
            match kernel.eval(td.n, lambda, r) {
                Ok(g) => terms.push(fv * g),
                Err(Error::Divergence { .. }) => {
                    collisions.push((i, m));
                    terms.push(0.0);
                }
                Err(e) => {
                    return Err(Error::TransformEntry {
                        lambda: i,
                        xi: m,
                        source: Box::new(e),
                    })
                }
            }
        }
        total += wl * td.spectral.measure_mode.factor(lambda) * weighted_sum(&td.centers.weights, terms.into_iter());
    }
    Ok(BiorthogonalValue {
        value: total / c_g,
        collisions,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalibrationResult {
    pub measure_mode: MeasureMode,
    pub constant: f64,
    /// `||f - u / C|| / ||f||` on the evaluation rule.
    pub residual: f64,
    pub converged: bool,
}

/// Residual threshold behind [`CalibrationResult::converged`].
pub const CALIBRATION_THRESHOLD: f64 = 1e-2;

/// Least-squares constant `C = <u, u> / <f, u>` for the unit-constant
/// reconstruction `u` sampled on `eval_rule`.
pub fn calibrate_from_samples(reference: &[f64], unit: &[f64], eval_rule: &QuadratureRule, mode: MeasureMode) -> Result<CalibrationResult> {
    let w = eval_rule.weights();
    let uu = weighted_sum(w, unit.iter().map(|u| u * u));
    let fu = weighted_sum(w, reference.iter().zip(unit).map(|(f, u)| f * u));
    let ff = weighted_sum(w, reference.iter().map(|f| f * f));
    if !(uu > 1e-300) || fu == 0.0 || !(ff > 0.0) {
        return Err(Error::Degenerate(format!(
            "reconstruction or reference is numerically zero (<u,u> = {uu:e}, <f,u> = {fu:e}, <f,f> = {ff:e})"
        )));
    }
    let constant = uu / fu;
    let err = weighted_sum(w, reference.iter().zip(unit).map(|(f, u)| (f - u / constant).powi(2)));
    let residual = (err.max(0.0) / ff).sqrt();
    Ok(CalibrationResult {
        measure_mode: mode,
        constant,
        residual,
        converged: residual <= CALIBRATION_THRESHOLD,
    })
}

/// Calibrates `C` for the inverse of [`inverse_bessel`] in one measure mode.
pub fn calibrate_mode(
    f_ref: impl Fn(&[f64]) -> f64 + Sync,
    td: &TransformData,
    eval_rule: &QuadratureRule,
    mode: MeasureMode,
) -> Result<CalibrationResult> {
    let td = td.clone().with_measure(mode);
    let reference = sample_field(&f_ref, eval_rule)?;
    let unit: Vec<f64> = (0..eval_rule.len())
        .into_par_iter()
        .map(|i| inverse_bessel(&td, 1.0, eval_rule.node(i)))
        .collect::<Result<_>>()?;
    calibrate_from_samples(&reference, &unit, eval_rule, mode)
}

/// Both measure modes, best first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationPair {
    pub best: CalibrationResult,
    pub other: CalibrationResult,
}

/// Forward transform of `f_ref`, then calibration in both measure modes.
pub fn calibrate_constant(
    f_ref: impl Fn(&[f64]) -> f64 + Sync,
    n: Dimension,
    spectral: &SpectralGrid,
    centers: &CenterGrid,
    rule: &QuadratureRule,
    eval_rule: &QuadratureRule,
) -> Result<CalibrationPair> {
    let td = forward_grid(&f_ref, n, spectral, centers, rule, ForwardWeight::AsPrinted)?;
    let a = calibrate_mode(&f_ref, &td, eval_rule, MeasureMode::Flat)?;
    let b = calibrate_mode(&f_ref, &td, eval_rule, MeasureMode::LambdaWeighted)?;
    Ok(if b.residual < a.residual {
        CalibrationPair { best: b, other: a }
    } else {
        CalibrationPair { best: a, other: b }
    })
}

/// Calibrates `C_g` for [`inverse_biorthogonal`].
pub fn calibrate_biorthogonal(
    f_ref: impl Fn(&[f64]) -> f64 + Sync,
    td: &TransformData,
    eval_rule: &QuadratureRule,
    kernel: &dyn BiorthogonalKernel,
    mode: MeasureMode,
) -> Result<(CalibrationResult, usize)> {
    let td = td.clone().with_measure(mode);
    let reference = sample_field(&f_ref, eval_rule)?;
    let values: Vec<BiorthogonalValue> = (0..eval_rule.len())
        .into_par_iter()
        .map(|i| inverse_biorthogonal(&td, 1.0, eval_rule.node(i), kernel))
        .collect::<Result<_>>()?;
    let collisions = values.iter().map(|v| v.collisions.len()).sum();
    let unit: Vec<f64> = values.iter().map(|v| v.value).collect();
    Ok((calibrate_from_samples(&reference, &unit, eval_rule, mode)?, collisions))
}

/// Default spectral cut-off `4 pi / feature_scale`.
pub fn default_lambda_max(feature_scale: f64) -> Result<f64> {
    if !(feature_scale > 0.0) || !feature_scale.is_finite() {
        return Err(Error::invalid("feature scale must be positive"));
    }
    Ok(4.0 * std::f64::consts::PI / feature_scale)
}

/// Doubles `lambda_max` from `start` until the residual reported by
/// `residual_at` changes by at most 5%, for at most `max_doublings` steps.
/// Returns the last `lambda_max` and its residual.
pub fn select_lambda_max(
    start: f64,
    max_doublings: usize,
    mut residual_at: impl FnMut(f64) -> Result<f64>,
) -> Result<(f64, f64)> {
    let mut lambda_max = start;
    let mut previous = residual_at(lambda_max)?;
    for _ in 0..max_doublings {
        let next = residual_at(2.0 * lambda_max)?;
        lambda_max *= 2.0;
        let stable = (next - previous).abs() <= 0.05 * previous.abs();
        previous = next;
        if stable {
            break;
        }
    }
    Ok((lambda_max, previous))
}

/// Calibration outcome that records degeneracy instead of failing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationEntry {
    pub kernel: String,
    pub measure_mode: MeasureMode,
    pub constant: Option<f64>,
    pub residual: Option<f64>,
    pub converged: bool,
    pub degenerate: bool,
    pub collisions: usize,
    pub error: Option<String>,
}

impl CalibrationEntry {
    fn from_result(kernel: &str, mode: MeasureMode, r: Result<(CalibrationResult, usize)>) -> Self {
        match r {
            Ok((c, collisions)) => Self {
                kernel: kernel.into(),
                measure_mode: mode,
                constant: Some(c.constant),
                residual: Some(c.residual),
                converged: c.converged,
                degenerate: false,
                collisions,
                error: None,
            },
            Err(e) => Self {
                kernel: kernel.into(),
                measure_mode: mode,
                constant: None,
                residual: None,
                converged: false,
                degenerate: matches!(e, Error::Degenerate(_)),
                collisions: 0,
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSummary {
    pub n: usize,
    pub lambda_max: f64,
    pub spectral_nodes: usize,
    pub center_nodes: usize,
    pub center_extent: f64,
    pub forward_rule_nodes: usize,
    pub forward_r_cut: Option<f64>,
    pub eval_nodes: usize,
    pub forward_weight: ForwardWeight,
    pub tail_fraction: f64,
}

/// Round-trip record: grids, and the calibrated constant and residual of
/// both inverses in both measure modes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundTripReport {
    pub grids: GridSummary,
    pub bessel: Vec<CalibrationEntry>,
    pub biorthogonal: Vec<CalibrationEntry>,
    pub best_bessel_mode: Option<MeasureMode>,
}

impl RoundTripReport {
    pub fn best_bessel(&self) -> Option<&CalibrationEntry> {
        self.best_bessel_mode
            .and_then(|m| self.bessel.iter().find(|e| e.measure_mode == m))
    }

    pub fn biorthogonal_for(&self, mode: MeasureMode) -> Option<&CalibrationEntry> {
        self.biorthogonal.iter().find(|e| e.measure_mode == mode)
    }
}

/// Forward transform plus calibration of both inverses; failures land in the report.
pub fn roundtrip_report(
    f: impl Fn(&[f64]) -> f64 + Sync,
    n: Dimension,
    spectral: &SpectralGrid,
    centers: &CenterGrid,
    rule: &QuadratureRule,
    eval_rule: &QuadratureRule,
    kernel: &dyn BiorthogonalKernel,
) -> Result<(TransformData, RoundTripReport)> {
    let td = forward_grid(&f, n, spectral, centers, rule, ForwardWeight::AsPrinted)?;
    let bessel: Vec<CalibrationEntry> = MeasureMode::ALL
        .iter()
        .map(|&mode| {
            let r = calibrate_mode(&f, &td, eval_rule, mode).map(|c| (c, 0));
            CalibrationEntry::from_result("bessel_j", mode, r)
        })
        .collect();
    let biorthogonal: Vec<CalibrationEntry> = MeasureMode::ALL
        .iter()
        .map(|&mode| {
            let r = calibrate_biorthogonal(&f, &td, eval_rule, kernel, mode);
            CalibrationEntry::from_result(kernel.name(), mode, r)
        })
        .collect();
    let best_bessel_mode = bessel
        .iter()
        .filter_map(|e| e.residual.map(|r| (r, e.measure_mode)))
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, m)| m);
    let report = RoundTripReport {
        grids: GridSummary {
            n: n.get(),
            lambda_max: spectral.lambda_max(),
            spectral_nodes: spectral.len(),
            center_nodes: centers.len(),
            center_extent: centers.extent(),
            forward_rule_nodes: rule.len(),
            forward_r_cut: rule.meta().r_cut,
            eval_nodes: eval_rule.len(),
            forward_weight: td.forward_weight(),
            tail_fraction: td.tail_fraction(),
        },
        bessel,
        biorthogonal,
        best_bessel_mode,
    };
    Ok((td, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{gauss_legendre_on, truncated_infinite_rule, BallRuleSpec};
    use std::f64::consts::PI;

    fn one() -> Dimension {
        Dimension::new(1).unwrap()
    }

    fn gaussian(x: &[f64]) -> f64 {
        (-x[0] * x[0]).exp()
    }

    fn line_rule() -> QuadratureRule {
        truncated_infinite_rule(one(), &[0.0], 8.0, &BallRuleSpec::product(96, 1)).unwrap()
    }

    #[test]
    fn gaussian_forward_closed_form() {
        for &lambda in &[0.25, 1.0, 3.0, 7.5] {
            let f = forward_bessel(gaussian, one(), lambda, &[0.0], &line_rule()).unwrap();
            let exact = (2.0 / (PI * lambda)).sqrt() * PI.sqrt() * (-lambda * lambda / 4.0).exp();
            assert!((f - exact).abs() < 1e-10, "lambda {lambda}: {f} vs {exact}");
        }
    }

    #[test]
    fn forward_rejects_non_positive_lambda() {
        assert!(forward_bessel(gaussian, one(), 0.0, &[0.0], &line_rule()).is_err());
    }

    #[test]
    fn zero_transform_inverts_to_zero() {
        let sg = SpectralGrid::midpoint(4.0, 8, MeasureMode::Flat).unwrap();
        let cg = CenterGrid::uniform_line(2.0, 9).unwrap();
        let td = forward_grid(|_| 0.0, one(), &sg, &cg, &line_rule(), ForwardWeight::AsPrinted).unwrap();
        assert!(td.values().iter().all(|v| *v == 0.0));
        assert_eq!(inverse_bessel(&td, 1.0, &[0.3]).unwrap(), 0.0);
        let b = inverse_biorthogonal(&td, 1.0, &[0.3], &SecondKindKernel).unwrap();
        assert_eq!(b.value, 0.0);
    }

    #[test]
    fn inverse_scales_with_constant() {
        let sg = SpectralGrid::midpoint(6.0, 24, MeasureMode::LambdaWeighted).unwrap();
        let cg = CenterGrid::uniform_line(4.0, 33).unwrap();
        let td = forward_grid(gaussian, one(), &sg, &cg, &line_rule(), ForwardWeight::AsPrinted).unwrap();
        let a = inverse_bessel(&td, 1.5, &[0.2]).unwrap();
        let b = inverse_bessel(&td, 3.0, &[0.2]).unwrap();
        assert!((a - 2.0 * b).abs() <= 1e-14 * a.abs());
        let g1 = inverse_biorthogonal(&td, 1.5, &[0.2], &SecondKindKernel).unwrap().value;
        let g2 = inverse_biorthogonal(&td, 3.0, &[0.2], &SecondKindKernel).unwrap().value;
        assert!((g1 - 2.0 * g2).abs() <= 1e-14 * g1.abs());
    }

    #[test]
    fn centre_grid_weights_cover_the_window() {
        let cg = CenterGrid::uniform_line(8.0, 160).unwrap();
        assert!((cg.total_weight() - 16.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_g_closed_forms_and_singularity() {
        let n1 = one();
        let n2 = Dimension::new(2).unwrap();
        for &(lambda, r) in &[(1.0, 0.5), (3.0, 2.0)] {
            let expected = (2.0 / (PI * lambda)).sqrt() * (lambda * r).sin();
            assert!((kernel_g(n1, lambda, r).unwrap() - expected).abs() < 1e-14);
        }
        assert!(matches!(kernel_g(n2, 1.0, 0.0), Err(Error::Divergence { .. })));
        // g depends on lambda r apart from the r^{1-n/2} prefactor
        let n3 = Dimension::new(3).unwrap();
        for &r in &[0.3, 1.0, 2.5] {
            let lhs = kernel_g(n3, 2.0, r).unwrap();
            let rhs = kernel_g(n3, 1.0, 2.0 * r).unwrap() * 2f64.powf(0.5);
            assert!((lhs - rhs).abs() < 1e-12 * lhs.abs().max(1.0));
        }
    }

    #[test]
    fn calibration_is_scale_free() {
        let sg = SpectralGrid::midpoint(8.0, 48, MeasureMode::Flat).unwrap();
        let cg = CenterGrid::uniform_line(6.0, 97).unwrap();
        let eval = gauss_legendre_on(41, -3.0, 3.0).unwrap();
        let a = calibrate_constant(gaussian, one(), &sg, &cg, &line_rule(), &eval).unwrap();
        let b = calibrate_constant(|x| 3.0 * gaussian(x), one(), &sg, &cg, &line_rule(), &eval).unwrap();
        assert!((a.best.constant - b.best.constant).abs() <= 1e-10 * a.best.constant.abs());
        assert!(calibrate_constant(|_| 0.0, one(), &sg, &cg, &line_rule(), &eval).is_err());
    }

    #[test]
    fn lambda_max_selection_stops_when_stable() {
        let mut calls = Vec::new();
        let (lm, r) = select_lambda_max(1.0, 10, |l| {
            calls.push(l);
            Ok(1.0 / l + 0.1)
        })
        .unwrap();
        assert!(lm > 1.0 && r > 0.1);
        assert!(calls.len() < 11);
        assert!((default_lambda_max(1.0).unwrap() - 4.0 * PI).abs() < 1e-15);
    }
}
