use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::quadrature::{gauss_legendre_interval, random_direction, RuleKind, RuleMeta};
use super::{dist_unchecked, BallDomain, QuadratureRule, SpaceTimePoint, WaveContext};
use crate::error::{Error, Result};

/// Space-time box `B(center, R) x [t0, t1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceTimeBox {
    pub ball: BallDomain,
    pub t0: f64,
    pub t1: f64,
}

impl SpaceTimeBox {
    pub fn new(ball: BallDomain, t0: f64, t1: f64) -> Result<Self> {
        if !(t1 > t0) {
            return Err(Error::invalid(format!("time interval [{t0}, {t1}] is empty")));
        }
        Ok(Self { ball, t0, t1 })
    }

    pub fn measure(&self) -> f64 {
        self.ball.volume() * (self.t1 - self.t0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ConeRuleSpec {
    /// One spatial dimension only: Gauss-Legendre in time on pieces split at
    /// the instants the cone front reaches the box walls, and on each slice
    /// Gauss-Legendre in `theta` with `x = x_k + c dt sin(theta)`, which
    /// absorbs the square-root behaviour at the cone front.
    Sliced { time_order: usize, space_order: usize },
    /// Uniform samples in the box, rejected outside the cone.
    MonteCarlo { samples: usize, seed: u64 },
}

/// Quadrature over `{(x, t) in box : c (t - t_k) >= |x - x_k|}`. Nodes are
/// `(x..., t)`.
pub fn cone_rule(
    bx: &SpaceTimeBox,
    apex: &SpaceTimePoint,
    ctx: WaveContext,
    spec: &ConeRuleSpec,
) -> Result<QuadratureRule> {
    let n = bx.ball.dimension();
    if apex.x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: apex.x.len(),
        });
    }
    match *spec {
        ConeRuleSpec::Sliced {
            time_order,
            space_order,
        } => sliced(bx, apex, ctx, time_order, space_order),
        ConeRuleSpec::MonteCarlo { samples, seed } => monte_carlo(bx, apex, ctx, samples, seed),
    }
}

fn sliced(
    bx: &SpaceTimeBox,
    apex: &SpaceTimePoint,
    ctx: WaveContext,
    time_order: usize,
    space_order: usize,
) -> Result<QuadratureRule> {
    if bx.ball.dimension() != 1 {
        return Err(Error::UnsupportedRule {
            rule: "sliced cone",
            n: bx.ball.dimension(),
        });
    }
    let c = ctx.speed();
    let xk = apex.x[0];
    let a = bx.ball.center()[0] - bx.ball.radius();
    let b = bx.ball.center()[0] + bx.ball.radius();
    let start = bx.t0.max(apex.t);
    if start >= bx.t1 {
        return Err(Error::EmptyDomain);
    }
    // Instant the front reaches the nearer wall, i.e. the slice becomes non-empty,
    // and the instants it crosses each wall.
    let reach = |wall: f64| apex.t + (wall - xk).abs() / c;
    let enter = if xk < a {
        reach(a)
    } else if xk > b {
        reach(b)
    } else {
        apex.t
    };
    let start = start.max(enter);
    if start >= bx.t1 {
        return Err(Error::EmptyDomain);
    }
    let mut cuts = vec![start, bx.t1];
    for wall in [a, b] {
        let t = reach(wall);
        if t > start && t < bx.t1 {
            cuts.push(t);
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for piece in cuts.windows(2) {
        let (ts, wts) = gauss_legendre_interval(time_order, piece[0], piece[1])?;
        for (&t, &wt) in ts.iter().zip(&wts) {
            let rho = c * (t - apex.t);
            if rho <= 0.0 {
                continue;
            }
            let lo = (xk - rho).max(a);
            let hi = (xk + rho).min(b);
            if lo >= hi {
                continue;
            }
            let th_lo = ((lo - xk) / rho).clamp(-1.0, 1.0).asin();
            let th_hi = ((hi - xk) / rho).clamp(-1.0, 1.0).asin();
            let (ths, wths) = gauss_legendre_interval(space_order, th_lo, th_hi)?;
            for (&th, &wth) in ths.iter().zip(&wths) {
                let (s, co) = th.sin_cos();
                nodes.push(xk + rho * s);
                nodes.push(t);
                weights.push(wt * wth * rho * co);
            }
        }
    }
    if weights.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let meta = RuleMeta {
        radial_order: Some(space_order),
        radius: Some(bx.ball.radius()),
        ..meta(RuleKind::ConeSliced, 2)
    };
    Ok(QuadratureRule::from_parts(2, nodes, weights, meta))
}

fn monte_carlo(
    bx: &SpaceTimeBox,
    apex: &SpaceTimePoint,
    ctx: WaveContext,
    samples: usize,
    seed: u64,
) -> Result<QuadratureRule> {
    if samples == 0 {
        return Err(Error::invalid("Monte Carlo sample count must be positive"));
    }
    let n = bx.ball.dimension();
    let measure = bx.measure();
    let w = measure / samples as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for _ in 0..samples {
        let dir = random_direction(n, &mut rng);
        let u: f64 = rng.gen();
        let r = bx.ball.radius() * u.powf(1.0 / n as f64);
        let x: Vec<f64> = bx
            .ball
            .center()
            .iter()
            .zip(&dir)
            .map(|(c, d)| c + r * d)
            .collect();
        let t = bx.t0 + (bx.t1 - bx.t0) * rng.gen::<f64>();
        if ctx.speed() * (t - apex.t) - dist_unchecked(&x, &apex.x) >= 0.0 {
            nodes.extend_from_slice(&x);
            nodes.push(t);
            weights.push(w);
        }
    }
    if weights.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let mut m = meta(RuleKind::ConeMonteCarlo, n + 1);
    m.seed = Some(seed);
    m.samples = Some(samples);
    m.sampled_measure = Some(measure);
    m.radius = Some(bx.ball.radius());
    Ok(QuadratureRule::from_parts(n + 1, nodes, weights, m))
}

fn meta(kind: RuleKind, dimension: usize) -> RuleMeta {
    RuleMeta {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{integrate, mc_standard_error};

    fn unit_box() -> SpaceTimeBox {
        SpaceTimeBox::new(BallDomain::new(vec![0.0], 1.0).unwrap(), 0.0, 1.0).unwrap()
    }

    fn origin() -> SpaceTimePoint {
        SpaceTimePoint::new(vec![0.0], 0.0)
    }

    fn c1() -> WaveContext {
        WaveContext::new(1.0).unwrap()
    }

    const SLICED: ConeRuleSpec = ConeRuleSpec::Sliced {
        time_order: 24,
        space_order: 24,
    };

    #[test]
    fn triangle_measure() {
        let rule = cone_rule(&unit_box(), &origin(), c1(), &SLICED).unwrap();
        assert!((rule.total_weight() - 1.0).abs() < 1e-13);
        for (x, _) in rule.iter() {
            assert!(x[1] - x[0].abs() >= -1e-14);
        }
    }

    #[test]
    fn clipped_cone_measure() {
        // apex off-centre: cone {t >= |x - 0.5|} inside [-1, 1] x [0, 2]
        let bx = SpaceTimeBox::new(BallDomain::new(vec![0.0], 1.0).unwrap(), 0.0, 2.0).unwrap();
        let apex = SpaceTimePoint::new(vec![0.5], 0.0);
        let rule = cone_rule(&bx, &apex, c1(), &SLICED).unwrap();
        // left part: int_0^2 min(t, 1.5) dt = 1.125 + 0.75; right part: int_0^2 min(t, 0.5) dt
        let exact = (1.125 + 0.75) + (0.125 + 0.75);
        assert!((rule.total_weight() - exact).abs() < 1e-12, "{}", rule.total_weight());
    }

    #[test]
    fn cone_missing_the_box_is_empty() {
        let late = SpaceTimePoint::new(vec![0.0], 5.0);
        assert!(matches!(
            cone_rule(&unit_box(), &late, c1(), &SLICED),
            Err(Error::EmptyDomain)
        ));
        let far = SpaceTimePoint::new(vec![10.0], 0.0);
        assert!(matches!(
            cone_rule(&unit_box(), &far, c1(), &SLICED),
            Err(Error::EmptyDomain)
        ));
        let mc = ConeRuleSpec::MonteCarlo { samples: 100, seed: 1 };
        assert!(matches!(cone_rule(&unit_box(), &late, c1(), &mc), Err(Error::EmptyDomain)));
    }

    #[test]
    fn monte_carlo_agrees_with_sliced_rule() {
        let mc = ConeRuleSpec::MonteCarlo { samples: 200_000, seed: 42 };
        let rule = cone_rule(&unit_box(), &origin(), c1(), &mc).unwrap();
        let f = |x: &[f64]| (x[1] * x[1] - x[0] * x[0]).max(0.0).powf(0.25);
        let est = integrate(f, &rule).unwrap();
        let se = mc_standard_error(f, &rule).unwrap();
        let det = integrate(f, &cone_rule(&unit_box(), &origin(), c1(), &SLICED).unwrap()).unwrap();
        assert!((est - det).abs() < 5.0 * se, "{est} vs {det} (se {se})");
    }

    #[test]
    fn two_dimensional_cone_uses_monte_carlo() {
        let bx = SpaceTimeBox::new(BallDomain::new(vec![0.0, 0.0], 1.0).unwrap(), 0.0, 1.0).unwrap();
        let apex = SpaceTimePoint::new(vec![0.0, 0.0], 0.0);
        assert!(cone_rule(&bx, &apex, c1(), &SLICED).is_err());
        let mc = ConeRuleSpec::MonteCarlo { samples: 100_000, seed: 3 };
        let rule = cone_rule(&bx, &apex, c1(), &mc).unwrap();
        // cone volume pi / 3
        let se = mc_standard_error(|_| 1.0, &rule).unwrap();
        assert!((rule.total_weight() - std::f64::consts::PI / 3.0).abs() < 5.0 * se);
    }
}
