//! Desk-scale invariant battery behind `verify`.

use std::f64::consts::PI;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use super::config::RunConfig;
use super::output::{fmt_f64, write_atomic, write_json, Table};
use super::{CliError, Outcome};
use crate::domain::{
    ball_rule, ball_volume, cone_gap, cone_rule, dist, integrate, integrate_par,
    mc_standard_error, spacetime_dist, truncated_infinite_rule, AngularSpec, BallDomain, BallRuleSpec,
    ConeRuleSpec, Dimension, QuadratureRule, RadialMap, SpaceTimeBox, SpaceTimePoint, WaveContext,
};
use crate::fields::BuiltinField;
use crate::series::{coeff_alpha, coeff_alpha0, expand, gram, project_oracle, reconstruct_zeroth, BesselRbfBasis, WeightMode};
use crate::spacetime::{st_basis_eval, st_project_oracle, st_reconstruct, DistanceMode, SpaceTimeBasis, SpaceTimeExpansion};
use crate::specfun::{bessel_j, bessel_j_asymptotic, bessel_zeros, interleaves, Order, ZeroTable};
use crate::transform::{forward_grid, CenterGrid, ForwardWeight, MeasureMode, SpectralGrid};
use crate::Result;

pub const WRONG_ZERO_TABLE: &str = "wrong_zero_table";

/// Shift applied to every zero when the zero table is corrupted on purpose.
const FAULT_SHIFT: f64 = 1e-3;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub invariant: &'static str,
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

struct Battery {
    checks: Vec<Check>,
    faulty: bool,
    seed: u64,
}

impl Battery {
    /// Records `value <= bound`; errors count as failures with a NaN value.
    fn at_most(&mut self, invariant: &'static str, bound: f64, value: Result<f64>) {
        let value = value.unwrap_or(f64::NAN);
        self.checks.push(Check {
            invariant,
            value,
            bound,
            pass: value <= bound,
        });
    }

    fn zeros(&self, order: Order, count: usize) -> Result<ZeroTable> {
        let table = bessel_zeros(order, count)?;
        if !self.faulty {
            return Ok(table);
        }
        let shifted = table.zeros().iter().map(|z| z + FAULT_SHIFT).collect();
        Ok(ZeroTable::from_values(order, shifted, table.tolerance()))
    }

    fn basis(&self, n: usize, modes: usize, mode: WeightMode) -> Result<BesselRbfBasis> {
        let dim = Dimension::new(n)?;
        let zeros = self.zeros(Order::for_dimension(n), modes)?;
        BesselRbfBasis::with_zero_table(dim, 1.0, vec![vec![0.0; n]], zeros, mode)
    }
}

fn unit_rule(n: usize, radial: usize) -> Result<QuadratureRule> {
    ball_rule(Dimension::new(n)?, &BallDomain::new(vec![0.0; n], 1.0)?, &BallRuleSpec::product(radial, 4))
}

fn orders() -> Result<Vec<Order>> {
    [-0.5, 0.0, 0.5, 1.0].into_iter().map(Order::new).collect()
}

fn zero_checks(b: &mut Battery) {
    let tables: Result<Vec<ZeroTable>> = orders().and_then(|os| os.into_iter().map(|o| b.zeros(o, 201)).collect());
    let residual = tables.as_ref().map_err(Clone::clone).map(|ts| {
        ts.iter()
            .flat_map(|t| t.residuals())
            .fold(0.0f64, f64::max)
    });
    b.at_most("zero_residual", 1e-12, residual);
    let spacing = tables.as_ref().map_err(Clone::clone).map(|ts| {
        ts.iter()
            .map(|t| (t.spacings()[99] - PI).abs())
            .fold(0.0f64, f64::max)
    });
    b.at_most("zero_spacing_at_100", 1e-4, spacing);
    // largest growth of |spacing - pi| over j in [50, 200]
    let growth = tables.as_ref().map_err(Clone::clone).map(|ts| {
        ts.iter()
            .flat_map(|t| {
                let gaps: Vec<f64> = t.spacings()[49..200].iter().map(|s| (s - PI).abs()).collect();
                gaps.windows(2).map(|w| w[1] - w[0]).collect::<Vec<_>>()
            })
            .fold(0.0f64, f64::max)
    });
    b.at_most("zero_spacing_non_increasing", 1e-12, growth);
    let interleaving = (|| {
        let a = b.zeros(Order::new(0.0)?, 50)?;
        let c = b.zeros(Order::new(1.0)?, 50)?;
        Ok(if interleaves(&a, &c) { 0.0 } else { 1.0 })
    })();
    b.at_most("zero_interleaving", 0.0, interleaving);
}

fn bessel_checks(b: &mut Battery) {
    let half = (|| {
        let (plus, minus) = (Order::new(0.5)?, Order::new(-0.5)?);
        let mut worst: f64 = 0.0;
        for i in 0..=999 {
            let x = 0.1 + 99.9 * i as f64 / 999.0;
            let amp = (2.0 / (PI * x)).sqrt();
            worst = worst.max((bessel_j(plus, x)? - amp * x.sin()).abs());
            worst = worst.max((bessel_j(minus, x)? - amp * x.cos()).abs());
        }
        Ok(worst)
    })();
    b.at_most("half_order_closed_form", 1e-12, half);
    let asymptotic = (|| {
        let zero = Order::new(0.0)?;
        let mut worst: f64 = 0.0;
        for i in 0..=2000 {
            let x = 50.0 + 50.0 * i as f64 / 2000.0;
            worst = worst.max((bessel_j(zero, x)? - bessel_j_asymptotic(zero, x)?).abs());
        }
        Ok(worst)
    })();
    b.at_most("j0_asymptotic_50_100", 5e-4, asymptotic);
}

fn quadrature_checks(b: &mut Battery) {
    let measure = (|| {
        let mut worst: f64 = 0.0;
        for n in 1..=3 {
            let w = unit_rule(n, 16)?.total_weight();
            worst = worst.max((w / ball_volume(n, 1.0) - 1.0).abs());
        }
        Ok(worst)
    })();
    b.at_most("ball_rule_measure", 1e-12, measure);
    let seed = b.seed;
    let mc = |s: u64| -> Result<QuadratureRule> {
        let spec = BallRuleSpec {
            radial_order: 16,
            angular: AngularSpec::MonteCarlo { samples: 2000, seed: s },
            radial_map: RadialMap::Linear,
        };
        ball_rule(Dimension::new(3)?, &BallDomain::new(vec![0.0; 3], 1.0)?, &spec)
    };
    let repeat = (|| {
        let (a, c) = (mc(seed)?, mc(seed)?);
        let same = a.weights() == c.weights() && (0..a.len()).all(|i| a.node(i) == c.node(i));
        Ok(if same { 0.0 } else { 1.0 })
    })();
    b.at_most("mc_rule_reproducible", 0.0, repeat);
    let f = |x: &[f64]| (x[0] + 0.3 * x[1] * x[2]).cos();
    let par = (|| {
        let rule = mc(seed)?;
        Ok((integrate(f, &rule)? - integrate_par(f, &rule)?).abs())
    })();
    b.at_most("parallel_sum_bit_identical", 0.0, par);
    // second moment of the unit 3-ball, exactly 4 pi / 15
    let moment = (|| {
        let rule = mc(seed)?;
        let g = |x: &[f64]| x[0] * x[0];
        let se = mc_standard_error(g, &rule).unwrap_or(0.0);
        let err = (integrate(g, &rule)? - 4.0 * PI / 15.0).abs();
        Ok(if se > 0.0 { err / se } else { err })
    })();
    b.at_most("mc_second_moment_in_se", 5.0, moment);
}

fn series_checks(b: &mut Battery) {
    let (gram_dev, delta_dev) = {
        let mut worst_g: Result<f64> = Ok(0.0);
        let mut worst_d: Result<f64> = Ok(0.0);
        for n in 1..=3 {
            let step: Result<(f64, f64)> = (|| {
                let basis = b.basis(n, 12, WeightMode::OrthogonalityConsistent)?;
                let rule = unit_rule(n, 96)?;
                let g = gram(&basis, &rule)?;
                let mut gd: f64 = 0.0;
                for i in 0..g.nrows() {
                    for j in 0..g.ncols() {
                        gd = gd.max((g[(i, j)] - if i == j { 1.0 } else { 0.0 }).abs());
                    }
                }
                let mut dd: f64 = 0.0;
                for m in [1, 6, 12] {
                    let f = BuiltinField::CosineMode { m }.bind(Dimension::new(n)?, 1.0, vec![0.0; n])?;
                    let exp = expand(|x| f.eval(x), &basis, std::slice::from_ref(&rule))?;
                    for (i, a) in exp.coefficients().iter().enumerate() {
                        dd = dd.max((a - if i + 1 == m { 1.0 } else { 0.0 }).abs());
                    }
                }
                Ok((gd, dd))
            })();
            match step {
                Ok((gd, dd)) => {
                    worst_g = worst_g.map(|w| w.max(gd));
                    worst_d = worst_d.map(|w| w.max(dd));
                }
                Err(e) => {
                    worst_g = Err(e.clone());
                    worst_d = Err(e);
                }
            }
        }
        (worst_g, worst_d)
    };
    b.at_most("gram_identity", 1e-6, gram_dev);
    b.at_most("delta_reproduction", 1e-6, delta_dev);

    let oracle = (|| {
        let mut worst: f64 = 0.0;
        for n in 1..=3 {
            let basis = b.basis(n, 8, WeightMode::OrthogonalityConsistent)?;
            let rule = unit_rule(n, 64)?;
            let f = BuiltinField::Bump.bind(Dimension::new(n)?, 1.0, vec![0.0; n])?;
            let exp = expand(|x| f.eval(x), &basis, std::slice::from_ref(&rule))?;
            let sol = project_oracle(|x| f.eval(x), &basis, &rule, 1e-10)?;
            for (a, o) in exp.coefficients().iter().zip(&sol.coefficients) {
                worst = worst.max((a - o).abs());
            }
        }
        Ok(worst)
    })();
    b.at_most("oracle_agreement", 1e-6, oracle);

    let printed = (|| {
        let basis = b.basis(1, 4, WeightMode::AsPrinted)?;
        let rule = unit_rule(1, 64)?;
        let mut worst: f64 = 0.0;
        for m in 1..=4 {
            let f = BuiltinField::CosineMode { m }.bind(Dimension::new(1)?, 1.0, vec![0.0])?;
            for j in 1..=4 {
                let lambda = (j as f64 - 0.5) * PI;
                let predicted = if j == m { (lambda / (2.0 * PI)).sqrt() } else { 0.0 };
                worst = worst.max((coeff_alpha(|x| f.eval(x), &basis, j, 1, &rule)? - predicted).abs());
            }
        }
        Ok(worst)
    })();
    b.at_most("printed_prediction_n1", 1e-8, printed);

    let zeroth = (|| {
        let mut worst: f64 = 0.0;
        for n in 1..=3 {
            let basis = b.basis(n, 1, WeightMode::AsPrinted)?;
            let x = vec![0.2; n];
            let spec = BallRuleSpec::product(40, 12).with_map(RadialMap::Quadratic);
            let rule = ball_rule(Dimension::new(n)?, &BallDomain::new(x.clone(), 1.0)?, &spec)?;
            let f = |z: &[f64]| (-z.iter().map(|v| v * v).sum::<f64>()).exp();
            let a0 = coeff_alpha0(f, &basis, &x, &rule)?;
            let z = reconstruct_zeroth(f, &basis, &x, &rule)?;
            worst = worst.max((z / a0 - (n as f64 + 2.0) / 2.0).abs());
        }
        Ok(worst)
    })();
    b.at_most("zeroth_term_factor", 1e-12, zeroth);
}

fn transform_checks(b: &mut Battery) {
    let column = (|| {
        let one = Dimension::new(1)?;
        let sg = SpectralGrid::midpoint(12.0, 24, MeasureMode::Flat)?;
        let cg = CenterGrid::uniform_line(2.0, 5)?;
        let rule = truncated_infinite_rule(one, &[0.0], 8.0, &BallRuleSpec::product(96, 1))?;
        let td = forward_grid(|x| (-x[0] * x[0]).exp(), one, &sg, &cg, &rule, ForwardWeight::AsPrinted)?;
        let mut worst: f64 = 0.0;
        for (i, &lambda) in sg.lambdas().iter().enumerate() {
            let exact = (2.0 / (PI * lambda)).sqrt() * PI.sqrt() * (-lambda * lambda / 4.0).exp();
            worst = worst.max((td.get(i, 2) - exact).abs());
        }
        Ok(worst)
    })();
    b.at_most("gaussian_transform_column", 1e-6, column);
}

fn spacetime_checks(b: &mut Battery) {
    let pythagoras = (|| {
        let ctx = WaveContext::new(1.7)?;
        let k = SpaceTimePoint::new(vec![0.3, -0.2], 0.1);
        let mut worst: f64 = 0.0;
        for i in 0..200 {
            let s = i as f64 * 0.37;
            let p = SpaceTimePoint::new(vec![0.3 + s.sin(), -0.2 + 0.5 * s.cos()], 1.0 + 0.1 * s);
            if cone_gap(&p, &k, ctx)? < 0.0 {
                continue;
            }
            let r = dist(&p.x, &k.x)?;
            let ct = 1.7 * (p.t - k.t);
            let rh = spacetime_dist(&p, &k, ctx)?;
            worst = worst.max((rh * rh + r * r - ct * ct).abs() / (ct * ct));
        }
        Ok(worst)
    })();
    b.at_most("rhat_pythagorean_identity", 1e-12, pythagoras);

    let make = |modes: usize, centers: Vec<SpaceTimePoint>| -> Result<SpaceTimeBasis> {
        SpaceTimeBasis::new(
            Dimension::new(1)?,
            1.0,
            WaveContext::new(1.0)?,
            centers,
            modes,
            WeightMode::OrthogonalityConsistent,
            DistanceMode::RhatThroughout,
        )
    };
    let causality = (|| {
        let centers = vec![SpaceTimePoint::new(vec![0.0], 0.0), SpaceTimePoint::new(vec![0.5], 0.6)];
        let mut exp = SpaceTimeExpansion::new(make(3, centers)?, 0.1, vec![0.3, -0.2, 0.1, 0.5, 0.4, -0.7])?;
        let p = SpaceTimePoint::new(vec![-0.4], 0.65);
        let before = st_reconstruct(&exp, &p, None)?;
        for a in &mut exp.coefficients_mut()[3..] {
            *a += 123.0;
        }
        Ok((st_reconstruct(&exp, &p, None)? - before).abs())
    })();
    b.at_most("causality_perturbation", 0.0, causality);

    let round_trip = (|| {
        let origin = SpaceTimePoint::new(vec![0.0], 0.0);
        let basis = make(4, vec![origin.clone()])?;
        let bx = SpaceTimeBox::new(BallDomain::new(vec![0.0], 1.0)?, 0.0, 1.0)?;
        let spec = ConeRuleSpec::Sliced {
            time_order: 32,
            space_order: 32,
        };
        let rule = cone_rule(&bx, &origin, WaveContext::new(1.0)?, &spec)?;
        let f = |node: &[f64]| st_basis_eval(&basis, 2, 1, &SpaceTimePoint::from_node(node)).unwrap_or(f64::NAN);
        let sol = st_project_oracle(f, &basis, &rule, 1e-10)?;
        let exp = SpaceTimeExpansion::new(basis.clone(), 0.0, sol.coefficients)?;
        let mut values = Vec::with_capacity(rule.len());
        for (x, _) in rule.iter() {
            values.push(st_reconstruct(&exp, &SpaceTimePoint::from_node(x), None)?);
        }
        let (mut err, mut norm) = (0.0, 0.0);
        for ((x, w), h) in rule.iter().zip(&values) {
            err += w * (f(x) - h).powi(2);
            norm += w * f(x).powi(2);
        }
        Ok((err / norm).sqrt())
    })();
    b.at_most("causal_single_mode_round_trip", 1e-3, round_trip);
}

/// Runs every check. `inject_fault = "wrong_zero_table"` shifts every zero
/// table the battery builds, which must make the zero-dependent checks fail.
pub fn checks(config: &RunConfig) -> std::result::Result<Vec<Check>, CliError> {
    let faulty = match config.inject_fault.as_deref() {
        None => false,
        Some(WRONG_ZERO_TABLE) => true,
        Some(other) => {
            return Err(CliError::Config(format!(
                "config key `inject_fault`: unknown fault `{other}` (known: {WRONG_ZERO_TABLE})"
            )))
        }
    };
    let mut b = Battery {
        checks: Vec::new(),
        faulty,
        seed: config.seed(),
    };
    zero_checks(&mut b);
    bessel_checks(&mut b);
    quadrature_checks(&mut b);
    series_checks(&mut b);
    transform_checks(&mut b);
    spacetime_checks(&mut b);
    Ok(b.checks)
}

pub fn run(config: &RunConfig, out: &Path) -> std::result::Result<Outcome, CliError> {
    let checks = checks(config)?;
    let mut csv = Table::new(["invariant", "value", "bound", "pass"]);
    for c in &checks {
        csv.push(vec![c.invariant.into(), fmt_f64(c.value), fmt_f64(c.bound), c.pass.to_string()]);
    }
    let mut outcome = Outcome::default();
    write_atomic(out, "verify.csv", &csv.to_bytes()?)?;
    outcome.outputs.push("verify.csv".into());
    write_json(out, "verify.json", &checks)?;
    outcome.outputs.push("verify.json".into());
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.invariant).collect();
    outcome.results = json!({
        "checks": checks.len(),
        "failed": failed,
        "seed": config.seed(),
    });
    if failed.is_empty() {
        outcome.summary = format!("all {} invariants hold", checks.len());
    } else {
        outcome.summary = format!("{} of {} invariants failed: {}", failed.len(), checks.len(), failed.join(", "));
        outcome.failure = Some(CliError::Verification(failed.join(", ")));
    }
    Ok(outcome)
}
