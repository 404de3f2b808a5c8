use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{unit_sphere_area, BallDomain, Dimension};
use crate::error::{Error, Result};

/// Fixed reduction block; partial sums are combined in block order so the
/// result does not depend on how many workers evaluated the blocks.
pub const REDUCTION_BLOCK: usize = 512;

pub const MAX_GAUSS_LEGENDRE: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleKind {
    GaussLegendre,
    Ball,
    TruncatedInfinite,
    Union,
    ConeSliced,
    ConeMonteCarlo,
    Tensor,
}

/// How radial Gauss nodes on `[0, 1]` are mapped to `[0, R]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialMap {
    /// `r = R u`; exact for `r^p r^{n-1}` with `p + n - 1 <= 2m - 1`.
    #[default]
    Linear,
    /// `r = R u^2`; smooths `r^{1/2}`-type behaviour at the centre.
    Quadratic,
}

/// Angular part of a ball rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum AngularSpec {
    /// Deterministic product rule: reflection in 1-D, `order` trapezoid
    /// points on the circle, Gauss-Legendre in `cos(theta)` times `2 * order`
    /// trapezoid points in `phi` on the 2-sphere.
    Product { order: usize },
    /// `samples` random directions drawn from `seed`.
    MonteCarlo { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallRuleSpec {
    pub radial_order: usize,
    pub angular: AngularSpec,
    #[serde(default)]
    pub radial_map: RadialMap,
}

impl BallRuleSpec {
    pub fn product(radial_order: usize, angular_order: usize) -> Self {
        Self {
            radial_order,
            angular: AngularSpec::Product {
                order: angular_order,
            },
            radial_map: RadialMap::Linear,
        }
    }

    pub fn with_map(mut self, map: RadialMap) -> Self {
        self.radial_map = map;
        self
    }
}

/// Construction record of a rule, serialised into run manifests.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleMeta {
    pub kind: RuleKind,
    pub dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radial_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angular: Option<AngularSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radial_map: Option<RadialMap>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_cut: Option<f64>,
    /// Total Monte Carlo draws, including rejected ones.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Measure of the sampling region for rejection rules.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampled_measure: Option<f64>,
}

impl RuleMeta {
    fn new(kind: RuleKind, dimension: usize) -> Self {
        Self {
            kind,
            dimension,
            radial_order: None,
            angular: None,
            radial_map: None,
            seed: None,
            radius: None,
            r_cut: None,
            samples: None,
            sampled_measure: None,
        }
    }
}

/// Nodes and weights in `R^dim`, stored flat.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    dim: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    meta: RuleMeta,
}

impl QuadratureRule {
    pub(crate) fn from_parts(dim: usize, nodes: Vec<f64>, weights: Vec<f64>, meta: RuleMeta) -> Self {
        debug_assert_eq!(nodes.len(), dim * weights.len());
        Self {
            dim,
            nodes,
            weights,
            meta,
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

    pub fn node(&self, i: usize) -> &[f64] {
        &self.nodes[i * self.dim..(i + 1) * self.dim]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn meta(&self) -> &RuleMeta {
        &self.meta
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], f64)> + '_ {
        self.nodes
            .chunks_exact(self.dim)
            .zip(self.weights.iter().copied())
    }

    pub fn total_weight(&self) -> f64 {
        block_sum(&self.weights)
    }

    /// The same rule shifted by `offset`.
    pub fn translated(&self, offset: &[f64]) -> Result<Self> {
        if offset.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: offset.len(),
            });
        }
        let mut nodes = self.nodes.clone();
        for node in nodes.chunks_exact_mut(self.dim) {
            for (x, o) in node.iter_mut().zip(offset) {
                *x += o;
            }
        }
        Ok(Self {
            dim: self.dim,
            nodes,
            weights: self.weights.clone(),
            meta: self.meta.clone(),
        })
    }

    /// Keeps only nodes accepted by `keep`.
    pub fn filtered(&self, keep: impl Fn(&[f64]) -> bool) -> Self {
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for (x, w) in self.iter() {
            if keep(x) {
                nodes.extend_from_slice(x);
                weights.push(w);
            }
        }
        Self {
            dim: self.dim,
            nodes,
            weights,
            meta: self.meta.clone(),
        }
    }
}

pub(crate) fn block_sum(values: &[f64]) -> f64 {
    values
        .chunks(REDUCTION_BLOCK)
        .map(|c| c.iter().sum::<f64>())
        .sum()
}

/// `sum_i w_i f(x_i)`, reduced block by block in node order.
pub fn integrate(f: impl Fn(&[f64]) -> f64, rule: &QuadratureRule) -> Result<f64> {
    let mut total = 0.0;
    for (b, block) in rule.weights.chunks(REDUCTION_BLOCK).enumerate() {
        let mut partial = 0.0;
        for (i, w) in block.iter().enumerate() {
            let index = b * REDUCTION_BLOCK + i;
            let value = f(rule.node(index));
            if !value.is_finite() {
                return Err(Error::NonFinite { index });
            }
            partial += w * value;
        }
        total += partial;
    }
    Ok(total)
}

/// Parallel [`integrate`]; bit-identical to the sequential result.
pub fn integrate_par(f: impl Fn(&[f64]) -> f64 + Sync, rule: &QuadratureRule) -> Result<f64> {
    let partials: Vec<Result<f64>> = rule
        .weights
        .par_chunks(REDUCTION_BLOCK)
        .enumerate()
        .map(|(b, block)| {
            let mut partial = 0.0;
            for (i, w) in block.iter().enumerate() {
                let index = b * REDUCTION_BLOCK + i;
                let value = f(rule.node(index));
                if !value.is_finite() {
                    return Err(Error::NonFinite { index });
                }
                partial += w * value;
            }
            Ok(partial)
        })
        .collect();
    let mut total = 0.0;
    for p in partials {
        total += p?;
    }
    Ok(total)
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, ascending.
fn legendre_nodes(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; m];
    let mut w = vec![0.0; m];
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
        let mut derivative = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=m {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pm = if m == 1 { z } else { p1 };
            let pm1 = if m == 1 { 1.0 } else { p0 };
            derivative = mf * (z * pm - pm1) / (z * z - 1.0);
            let dz = pm / derivative;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        if m == 1 {
            z = 0.0;
            derivative = 1.0;
        }
        let weight = 2.0 / ((1.0 - z * z) * derivative * derivative);
        x[i] = -z;
        x[m - 1 - i] = z;
        w[i] = weight;
        w[m - 1 - i] = weight;
    }
    if m % 2 == 1 {
        x[m / 2] = 0.0;
    }
    (x, w)
}

/// `m`-point Gauss-Legendre rule on `[-1, 1]`, exact to degree `2m - 1`.
pub fn gauss_legendre(m: usize) -> Result<QuadratureRule> {
    if m == 0 || m > MAX_GAUSS_LEGENDRE {
        return Err(Error::invalid(format!(
            "Gauss-Legendre order must lie in 1..={MAX_GAUSS_LEGENDRE}, got {m}"
        )));
    }
    let (x, w) = legendre_nodes(m);
    let mut meta = RuleMeta::new(RuleKind::GaussLegendre, 1);
    meta.radial_order = Some(m);
    Ok(QuadratureRule::from_parts(1, x, w, meta))
}

/// Gauss-Legendre nodes and weights mapped to `[a, b]`.
pub fn gauss_legendre_interval(m: usize, a: f64, b: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let rule = gauss_legendre(m)?;
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let nodes = rule.nodes.iter().map(|x| mid + half * x).collect();
    let weights = rule.weights.iter().map(|w| half * w).collect();
    Ok((nodes, weights))
}

/// `m`-point Gauss-Legendre rule on `[a, b]` as a 1-D [`QuadratureRule`].
pub fn gauss_legendre_on(m: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if !(b > a) {
        return Err(Error::invalid(format!("interval [{a}, {b}] is empty")));
    }
    let (x, w) = gauss_legendre_interval(m, a, b)?;
    let mut meta = RuleMeta::new(RuleKind::GaussLegendre, 1);
    meta.radial_order = Some(m);
    meta.radius = Some(0.5 * (b - a));
    Ok(QuadratureRule::from_parts(1, x, w, meta))
}

/// Unit directions and their weights; the weights sum to `S_n`.
fn directions(n: usize, angular: AngularSpec) -> Result<Vec<(Vec<f64>, f64)>> {
    match angular {
        AngularSpec::Product { order } => {
            if order == 0 && n > 1 {
                return Err(Error::invalid("angular order must be at least 1"));
            }
            match n {
                1 => Ok(vec![(vec![1.0], 1.0), (vec![-1.0], 1.0)]),
                2 => {
                    let w = 2.0 * PI / order as f64;
                    Ok((0..order)
                        .map(|i| {
                            let (s, c) = (2.0 * PI * i as f64 / order as f64).sin_cos();
                            (vec![c, s], w)
                        })
                        .collect())
                }
                3 => {
                    let (cos_theta, wt) = legendre_nodes(order);
                    let phi_count = 2 * order;
                    let wp = 2.0 * PI / phi_count as f64;
                    let mut out = Vec::with_capacity(order * phi_count);
                    for (ct, w) in cos_theta.iter().zip(&wt) {
                        let st = (1.0 - ct * ct).max(0.0).sqrt();
                        for p in 0..phi_count {
                            let (sp, cp) = (2.0 * PI * (p as f64 + 0.5) / phi_count as f64).sin_cos();
                            out.push((vec![st * cp, st * sp, *ct], w * wp));
                        }
                    }
                    Ok(out)
                }
                _ => Err(Error::UnsupportedRule {
                    rule: "product",
                    n,
                }),
            }
        }
        AngularSpec::MonteCarlo { samples, seed } => {
            if samples == 0 {
                return Err(Error::invalid("Monte Carlo sample count must be positive"));
            }
            let area = unit_sphere_area(Dimension::new(n)?);
            let w = area / samples as f64;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((0..samples)
                .map(|_| (random_direction(n, &mut rng), w))
                .collect())
        }
    }
}

pub(crate) fn random_direction(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|a| a / norm).collect();
        }
    }
}

/// Product rule on `B(center, R)`: Gauss-Legendre in `r` (with the `r^{n-1}`
/// Jacobian folded into the weights) times an angular rule.
pub fn ball_rule(n: Dimension, ball: &BallDomain, spec: &BallRuleSpec) -> Result<QuadratureRule> {
    let dim = n.get();
    if ball.dimension() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: ball.dimension(),
        });
    }
    if spec.radial_order < 2 {
        return Err(Error::invalid("radial order must be at least 2"));
    }
    let radius = ball.radius();
    let (u, wu) = gauss_legendre_interval(spec.radial_order, 0.0, 1.0)?;
    let radial: Vec<(f64, f64)> = u
        .iter()
        .zip(&wu)
        .map(|(&u, &w)| {
            let (r, dr) = match spec.radial_map {
                RadialMap::Linear => (radius * u, radius),
                RadialMap::Quadratic => (radius * u * u, 2.0 * radius * u),
            };
            (r, w * dr * r.powi(dim as i32 - 1))
        })
        .collect();
    let dirs = directions(dim, spec.angular)?;

    let mut nodes = Vec::with_capacity(dirs.len() * radial.len() * dim);
    let mut weights = Vec::with_capacity(dirs.len() * radial.len());
    for (dir, wd) in &dirs {
        for &(r, wr) in &radial {
            nodes.extend(ball.center().iter().zip(dir).map(|(c, d)| c + r * d));
            weights.push(wd * wr);
        }
    }
    let mut meta = RuleMeta::new(RuleKind::Ball, dim);
    meta.radial_order = Some(spec.radial_order);
    meta.angular = Some(spec.angular);
    meta.radial_map = Some(spec.radial_map);
    meta.radius = Some(radius);
    if let AngularSpec::MonteCarlo { samples, seed } = spec.angular {
        meta.seed = Some(seed);
        meta.samples = Some(samples);
    }
    Ok(QuadratureRule::from_parts(dim, nodes, weights, meta))
}

/// Ball rule of radius `r_cut` standing in for all of `R^n`.
pub fn truncated_infinite_rule(
    n: Dimension,
    center: &[f64],
    r_cut: f64,
    spec: &BallRuleSpec,
) -> Result<QuadratureRule> {
    let ball = BallDomain::new(center.to_vec(), r_cut)?;
    let mut rule = ball_rule(n, &ball, spec)?;
    rule.meta.kind = RuleKind::TruncatedInfinite;
    rule.meta.r_cut = Some(r_cut);
    Ok(rule)
}

/// Doubles the truncation radius from `length_scale` until the outermost
/// shell adds less than `1e-12` of the accumulated `int |f|`, capped at
/// `64 * length_scale`.
pub fn select_r_cut(
    f: impl Fn(&[f64]) -> f64,
    n: Dimension,
    center: &[f64],
    length_scale: f64,
    spec: &BallRuleSpec,
) -> Result<f64> {
    if !(length_scale > 0.0) {
        return Err(Error::invalid("length scale must be positive"));
    }
    let cap = 64.0 * length_scale;
    let mut inner = length_scale;
    let mut accumulated = integrate(
        |x| f(x).abs(),
        &truncated_infinite_rule(n, center, inner, spec)?,
    )?;
    while inner < cap {
        let outer = (2.0 * inner).min(cap);
        let total = integrate(
            |x| f(x).abs(),
            &truncated_infinite_rule(n, center, outer, spec)?,
        )?;
        let shell = (total - accumulated).abs();
        accumulated = total;
        inner = outer;
        if shell <= 1e-12 * total.abs() {
            break;
        }
    }
    Ok(inner)
}

/// Rule over the union of balls: per-ball rules with each node's weight
/// divided by the number of balls covering it.
pub fn union_rule(n: Dimension, balls: &[BallDomain], spec: &BallRuleSpec) -> Result<QuadratureRule> {
    if balls.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let dim = n.get();
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for ball in balls {
        let rule = ball_rule(n, ball, spec)?;
        for (x, w) in rule.iter() {
            let cover = balls.iter().filter(|b| b.contains(x)).count().max(1);
            nodes.extend_from_slice(x);
            weights.push(w / cover as f64);
        }
    }
    let mut meta = RuleMeta::new(RuleKind::Union, dim);
    meta.radial_order = Some(spec.radial_order);
    meta.angular = Some(spec.angular);
    meta.radial_map = Some(spec.radial_map);
    Ok(QuadratureRule::from_parts(dim, nodes, weights, meta))
}

/// Standard error of a Monte Carlo rule's estimate of `int f`; `None` for
/// deterministic rules.
pub fn mc_standard_error(f: impl Fn(&[f64]) -> f64, rule: &QuadratureRule) -> Option<f64> {
    let meta = &rule.meta;
    match (meta.kind, meta.angular, meta.samples) {
        (RuleKind::Ball | RuleKind::TruncatedInfinite, Some(AngularSpec::MonteCarlo { samples, .. }), _) => {
            // One radial line per direction; each line is an independent estimate.
            let per_line = rule.len() / samples;
            let estimates: Vec<f64> = (0..samples)
                .map(|d| {
                    (0..per_line)
                        .map(|i| {
                            let idx = d * per_line + i;
                            rule.weights[idx] * f(rule.node(idx))
                        })
                        .sum::<f64>()
                        * samples as f64
                })
                .collect();
            Some(sample_std(&estimates, samples) / (samples as f64).sqrt())
        }
        (RuleKind::ConeMonteCarlo, _, Some(total)) => {
            let measure = meta.sampled_measure?;
            let mut values: Vec<f64> = rule.iter().map(|(x, _)| measure * f(x)).collect();
            values.resize(total, 0.0);
            Some(sample_std(&values, total) / (total as f64).sqrt())
        }
        _ => None,
    }
}

fn sample_std(values: &[f64], count: usize) -> f64 {
    if count < 2 {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / count as f64;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (count - 1) as f64;
    var.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(n: usize) -> Dimension {
        Dimension::new(n).unwrap()
    }

    #[test]
    fn low_order_gauss_legendre() {
        let r1 = gauss_legendre(1).unwrap();
        assert_eq!(r1.node(0), &[0.0]);
        assert_eq!(r1.weights(), &[2.0]);
        let r2 = gauss_legendre(2).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert!((r2.node(0)[0] + s).abs() < 1e-15 && (r2.node(1)[0] - s).abs() < 1e-15);
        assert!((r2.weights()[0] - 1.0).abs() < 1e-15);
        let x2 = integrate(|x| x[0] * x[0], &r2).unwrap();
        assert!((x2 - 2.0 / 3.0).abs() < 1e-15);
        assert!(gauss_legendre(0).is_err());
        assert!(gauss_legendre(513).is_err());
    }

    #[test]
    fn gauss_legendre_polynomial_exactness() {
        for &m in &[3usize, 8, 17, 64, 200, 512] {
            let rule = gauss_legendre(m).unwrap();
            for p in [0usize, 1, 2, 2 * m - 2, 2 * m - 1] {
                let exact = if p % 2 == 1 { 0.0 } else { 2.0 / (p as f64 + 1.0) };
                let got = integrate(|x| x[0].powi(p as i32), &rule).unwrap();
                assert!((got - exact).abs() < 1e-13, "m={m} p={p}: {got}");
            }
        }
    }

    #[test]
    fn ball_volumes() {
        let check = |n: usize, r: f64, exact: f64, spec: BallRuleSpec| {
            let ball = BallDomain::new(vec![0.3; n], r).unwrap();
            let rule = ball_rule(dim(n), &ball, &spec).unwrap();
            let v = rule.total_weight();
            assert!((v - exact).abs() < 1e-10 * exact, "n={n}: {v} vs {exact}");
        };
        check(1, 2.5, 5.0, BallRuleSpec::product(4, 1));
        check(2, 1.0, PI, BallRuleSpec::product(4, 7));
        check(3, 1.0, 4.0 * PI / 3.0, BallRuleSpec::product(4, 5));
        check(3, 1.0, 4.0 * PI / 3.0, BallRuleSpec::product(6, 5).with_map(RadialMap::Quadratic));
        let mc = BallRuleSpec {
            radial_order: 6,
            angular: AngularSpec::MonteCarlo { samples: 50, seed: 7 },
            radial_map: RadialMap::Linear,
        };
        check(5, 1.0, 8.0 * PI * PI / 15.0, mc);
    }

    #[test]
    fn product_rule_unavailable_in_high_dimension() {
        let ball = BallDomain::new(vec![0.0; 4], 1.0).unwrap();
        assert!(matches!(
            ball_rule(dim(4), &ball, &BallRuleSpec::product(4, 4)),
            Err(Error::UnsupportedRule { .. })
        ));
    }

    #[test]
    fn odd_function_integrates_to_zero() {
        let ball = BallDomain::new(vec![0.0, 0.0, 0.0], 1.0).unwrap();
        let rule = ball_rule(dim(3), &ball, &BallRuleSpec::product(8, 6)).unwrap();
        let v = integrate(|x| 2.0 * x[0] - x[1] + 0.5 * x[2], &rule).unwrap();
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn r_squared_over_unit_three_ball() {
        let ball = BallDomain::new(vec![0.0; 3], 1.0).unwrap();
        let rule = ball_rule(dim(3), &ball, &BallRuleSpec::product(6, 4)).unwrap();
        let v = integrate(|x| x.iter().map(|a| a * a).sum(), &rule).unwrap();
        assert!((v - 4.0 * PI / 5.0).abs() < 1e-8);
    }

    #[test]
    fn gaussian_over_truncated_line() {
        let rule = truncated_infinite_rule(dim(1), &[0.0], 8.0, &BallRuleSpec::product(96, 1)).unwrap();
        let v = integrate(|x| (-x[0] * x[0]).exp(), &rule).unwrap();
        assert!((v - PI.sqrt()).abs() < 1e-10);
        assert_eq!(rule.meta().r_cut, Some(8.0));
        assert_eq!(integrate(|_| 0.0, &rule).unwrap(), 0.0);
    }

    #[test]
    fn r_cut_selection_stops_when_tail_negligible() {
        let spec = BallRuleSpec::product(96, 1);
        let r = select_r_cut(|x| (-x[0] * x[0]).exp(), dim(1), &[0.0], 1.0, &spec).unwrap();
        assert!((4.0..=16.0).contains(&r), "r_cut = {r}");
        let r = select_r_cut(|_| 1.0, dim(1), &[0.0], 1.0, &spec).unwrap();
        assert_eq!(r, 64.0);
    }

    #[test]
    fn non_finite_values_are_reported() {
        let rule = gauss_legendre(4).unwrap();
        assert!(matches!(
            integrate(|x| if x[0] > 0.5 { f64::NAN } else { 1.0 }, &rule),
            Err(Error::NonFinite { index: 3 })
        ));
    }

    #[test]
    fn union_rule_counts_overlap_once() {
        let a = BallDomain::new(vec![0.0], 1.0).unwrap();
        let b = BallDomain::new(vec![1.0], 1.0).unwrap();
        let rule = union_rule(dim(1), &[a, b], &BallRuleSpec::product(40, 1)).unwrap();
        // union [-1, 2] has length 3; the multiplicity jump limits accuracy
        assert!((rule.total_weight() - 3.0).abs() < 5e-2);
    }

    #[test]
    fn monte_carlo_directions_are_reproducible() {
        let spec = BallRuleSpec {
            radial_order: 4,
            angular: AngularSpec::MonteCarlo { samples: 30, seed: 99 },
            radial_map: RadialMap::Linear,
        };
        let ball = BallDomain::new(vec![0.0; 4], 1.0).unwrap();
        let a = ball_rule(dim(4), &ball, &spec).unwrap();
        let b = ball_rule(dim(4), &ball, &spec).unwrap();
        assert_eq!(a, b);
        let se = mc_standard_error(|x| x[0] * x[0], &a).unwrap();
        assert!(se > 0.0);
        assert_eq!(mc_standard_error(|x| x[0], &gauss_legendre(3).unwrap()), None);
    }
}
