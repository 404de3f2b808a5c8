use std::path::Path;

use serde_json::json;

use super::config::RunConfig;
use super::output::{fmt_f64, write_atomic, write_json, Table};
use super::{CliError, Outcome};
use crate::domain::{
    ball_rule, cone_rule, dist, gauss_legendre_on, select_r_cut, truncated_infinite_rule, union_rule, BallDomain,
    BallRuleSpec, Dimension, QuadratureRule, RadialMap, SpaceTimeBox, SpaceTimePoint,
};
use crate::fields::{BuiltinField, Field};
use crate::series::{
    expand_about, gram as series_gram, l2_error, l2_norm, project_oracle, reconstruct as series_reconstruct,
    reconstruct_zeroth, BesselRbfBasis, Expansion, WeightMode,
};
use crate::spacetime::{st_expand, st_project_oracle, st_reconstruct, SpaceTimeBasis, SpaceTimeExpansion};
use crate::specfun::{bessel_zeros, Order};
use crate::transform::{
    default_lambda_max, roundtrip_report, select_lambda_max, CenterGrid, MeasureMode, RoundTripReport,
    SecondKindKernel, SpectralGrid, TransformData,
};

fn save(out: &Path, name: &str, table: &Table, outcome: &mut Outcome) -> Result<(), CliError> {
    write_atomic(out, name, &table.to_bytes()?)?;
    outcome.outputs.push(name.into());
    Ok(())
}

pub(super) fn zeros(config: &RunConfig, out: &Path) -> Result<Outcome, CliError> {
    let v = match (config.order, config.n) {
        (Some(v), _) => v,
        (None, Some(_)) => Order::for_dimension(config.dimension()?.get()).value(),
        (None, None) => return Err(CliError::Config("missing config key `order` (or `n`)".into())),
    };
    let order = Order::new(v).map_err(|e| CliError::Config(format!("config key `order`: {e}")))?;
    let count = match config.count {
        None => return Err(CliError::Config("missing config key `count`".into())),
        Some(0) => return Err(CliError::Config("config key `count`: must be at least 1".into())),
        Some(c) => c,
    };
    let table = bessel_zeros(order, count)?;
    let residuals = table.residuals();
    let mut csv = Table::new(["j", "lambda", "spacing", "residual"]);
    for (i, (&z, r)) in table.zeros().iter().zip(&residuals).enumerate() {
        let spacing = if i == 0 { String::new() } else { fmt_f64(z - table.zeros()[i - 1]) };
        csv.push(vec![(i + 1).to_string(), fmt_f64(z), spacing, fmt_f64(*r)]);
    }
    let mut outcome = Outcome::default();
    save(out, "zeros.csv", &csv, &mut outcome)?;
    let last_spacing = table.spacings().last().copied();
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    outcome.results = json!({
        "order": v,
        "count": count,
        "last_spacing": last_spacing,
        "last_spacing_minus_pi": last_spacing.map(|s| s - std::f64::consts::PI),
        "max_residual": max_residual,
    });
    outcome.summary = format!("{count} zeros of J_{v}; max residual {max_residual:.3e}");
    Ok(outcome)
}

struct SeriesSetup {
    n: Dimension,
    basis: BesselRbfBasis,
    field: Field,
    field_kind: BuiltinField,
    spec: BallRuleSpec,
    rules: Vec<QuadratureRule>,
    base: Vec<f64>,
}

fn series_setup(config: &RunConfig) -> Result<SeriesSetup, CliError> {
    let n = config.dimension()?;
    let radius = config.radius()?;
    let modes = config.modes()?;
    let centers = config.centers(n)?;
    let field_kind = config.field()?;
    let spec = config.ball_spec(n)?;
    let basis = BesselRbfBasis::new(n, radius, centers.clone(), modes, config.weight_mode())?;
    let field = field_kind.bind(n, radius, config.field_origin(n)?)?;
    let rules = centers
        .iter()
        .map(|c| ball_rule(n, &BallDomain::new(c.clone(), radius)?, &spec))
        .collect::<crate::Result<Vec<_>>>()?;
    let base = match &config.alpha0_base {
        Some(b) if b.len() != n.get() => {
            return Err(CliError::Config(format!("config key `alpha0_base`: needs {} coordinates", n.get())))
        }
        Some(b) => b.clone(),
        None => basis.centroid(),
    };
    Ok(SeriesSetup {
        n,
        basis,
        field,
        field_kind,
        spec,
        rules,
        base,
    })
}

fn coefficient_table(exp: &Expansion, times: Option<&[f64]>) -> Table {
    let basis = exp.basis();
    let mut header = vec!["j", "k", "alpha", "mode", "n", "R"];
    if times.is_some() {
        header.push("t_k");
    }
    let mut csv = Table::new(header);
    let label = basis.weight_mode().label();
    let n = basis.dimension().get().to_string();
    let r = fmt_f64(basis.radius());
    let mut row = |j: usize, k: usize, a: f64| {
        let mut cells = vec![j.to_string(), k.to_string(), fmt_f64(a), label.into(), n.clone(), r.clone()];
        if let Some(t) = times {
            cells.push(if k == 0 { String::new() } else { fmt_f64(t[k - 1]) });
        }
        csv.push(cells);
    };
    row(0, 0, exp.alpha0());
    for k in 1..=basis.centers().len() {
        for j in 1..=basis.modes() {
            row(j, k, exp.get(j, k).unwrap_or(f64::NAN));
        }
    }
    csv
}

fn compute_expansion(config: &RunConfig, s: &SeriesSetup) -> Result<(Expansion, Option<usize>), CliError> {
    let f = |x: &[f64]| s.field.eval(x);
    let exp = expand_about(f, &s.basis, &s.rules, &s.base)?;
    if !config.use_oracle()? {
        return Ok((exp, None));
    }
    let rule = coverage_rule(s)?;
    let sol = project_oracle(f, &s.basis, &rule, config.svd_cutoff()?)?;
    let discarded = sol.discarded;
    Ok((sol.into_expansion(&s.basis, exp.alpha0())?, Some(discarded)))
}

fn coverage_rule(s: &SeriesSetup) -> Result<QuadratureRule, CliError> {
    if s.rules.len() == 1 {
        return Ok(s.rules[0].clone());
    }
    let balls = s
        .basis
        .centers()
        .iter()
        .map(|c| BallDomain::new(c.clone(), s.basis.radius()))
        .collect::<crate::Result<Vec<_>>>()?;
    Ok(union_rule(s.n, &balls, &s.spec)?)
}

pub(super) fn expand(config: &RunConfig, out: &Path) -> Result<Outcome, CliError> {
    let s = series_setup(config)?;
    let (exp, discarded) = compute_expansion(config, &s)?;
    let mut outcome = Outcome::default();
    save(out, "coefficients.csv", &coefficient_table(&exp, None), &mut outcome)?;
    outcome.rules = s.rules.iter().map(|r| r.meta().clone()).collect();
    outcome.results = json!({
        "field": s.field_kind.label(),
        "alpha0": exp.alpha0(),
        "alpha0_base": s.base,
        "max_abs_alpha": exp.coefficients().iter().fold(0.0f64, |m, a| m.max(a.abs())),
        "oracle_discarded_singular_values": discarded,
    });
    outcome.summary = format!(
        "{} coefficients ({} mode) for field {}",
        exp.coefficients().len(),
        s.basis.weight_mode().label(),
        s.field_kind.label()
    );
    Ok(outcome)
}

/// Points of a regular grid over the centres' bounding box that lie in some ball.
fn sample_points(basis: &BesselRbfBasis, count: usize) -> Vec<Vec<f64>> {
    let n = basis.dimension().get();
    let r = basis.radius();
    let per_axis = if n == 1 {
        count
    } else {
        ((count as f64).powf(1.0 / n as f64).ceil() as usize).max(2)
    };
    let lo: Vec<f64> = (0..n)
        .map(|d| basis.centers().iter().map(|c| c[d]).fold(f64::INFINITY, f64::min) - r)
        .collect();
    let hi: Vec<f64> = (0..n)
        .map(|d| basis.centers().iter().map(|c| c[d]).fold(f64::NEG_INFINITY, f64::max) + r)
        .collect();
    let step = |d: usize, i: usize| {
        if per_axis == 1 {
            0.5 * (lo[d] + hi[d])
        } else {
            lo[d] + (hi[d] - lo[d]) * i as f64 / (per_axis - 1) as f64
        }
    };
    let total = per_axis.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            (0..n)
                .map(|d| {
                    let i = idx % per_axis;
                    idx /= per_axis;
                    step(d, i)
                })
                .collect::<Vec<f64>>()
        })
        .filter(|x| {
            basis
                .centers()
                .iter()
                .any(|c| dist(x, c).map(|d| d <= r * (1.0 + 1e-12)).unwrap_or(false))
        })
        .collect()
}

pub(super) fn reconstruct(config: &RunConfig, out: &Path) -> Result<Outcome, CliError> {
    let s = series_setup(config)?;
    let (exp, discarded) = compute_expansion(config, &s)?;
    let f = |x: &[f64]| s.field.eval(x);
    let printed = s.basis.weight_mode() == WeightMode::AsPrinted;
    let zeroth_spec = BallRuleSpec {
        radial_map: RadialMap::Quadratic,
        ..s.spec
    };
    let zeroth = |x: &[f64]| -> crate::Result<Option<f64>> {
        if !printed {
            return Ok(None);
        }
        let rule = ball_rule(s.n, &BallDomain::new(x.to_vec(), s.basis.radius())?, &zeroth_spec)?;
        Ok(Some(reconstruct_zeroth(f, &s.basis, x, &rule)?))
    };
    let fhat = |x: &[f64]| -> crate::Result<f64> { series_reconstruct(&exp, x, zeroth(x)?) };

    let points = sample_points(&s.basis, config.samples()?);
    let mut header: Vec<String> = (1..=s.n.get()).map(|d| format!("x{d}")).collect();
    header.extend(["f", "fhat", "abs_err"].map(String::from));
    let mut csv = Table::new(header);
    let mut max_err: f64 = 0.0;
    for x in &points {
        let (fv, hv) = (f(x), fhat(x)?);
        max_err = max_err.max((fv - hv).abs());
        let mut row: Vec<String> = x.iter().map(|v| fmt_f64(*v)).collect();
        row.extend([fmt_f64(fv), fmt_f64(hv), fmt_f64((fv - hv).abs())]);
        csv.push(row);
    }
    let rule = coverage_rule(&s)?;
    let hv = rule
        .iter()
        .map(|(x, _)| fhat(x))
        .collect::<crate::Result<Vec<f64>>>()?;
    let lookup = |x: &[f64]| -> f64 {
        let i = (0..rule.len()).position(|i| rule.node(i).as_ptr() == x.as_ptr());
        i.map_or(f64::NAN, |i| hv[i])
    };
    let err = l2_error(f, lookup, &rule)?;
    let norm = l2_norm(f, &rule)?;
    let mut outcome = Outcome::default();
    save(out, "coefficients.csv", &coefficient_table(&exp, None), &mut outcome)?;
    save(out, "samples.csv", &csv, &mut outcome)?;
    let summary = json!({
        "field": s.field_kind.label(),
        "weight_mode": s.basis.weight_mode().label(),
        "l2_error": err,
        "l2_norm": norm,
        "relative_l2_error": if norm > 0.0 { Some(err / norm) } else { None },
        "max_sample_error": max_err,
        "samples": points.len(),
        "oracle_discarded_singular_values": discarded,
    });
    write_json(out, "error_summary.json", &summary)?;
    outcome.outputs.push("error_summary.json".into());
    outcome.rules = vec![rule.meta().clone()];
    outcome.summary = format!("L2 error {err:.3e} (norm {norm:.3e}) over {} samples", points.len());
    outcome.results = summary;
    Ok(outcome)
}

pub(super) fn gram(config: &RunConfig, out: &Path) -> Result<Outcome, CliError> {
    let n = config.dimension()?;
    let radius = config.radius()?;
    let basis = BesselRbfBasis::new(n, radius, config.centers(n)?, config.modes()?, WeightMode::OrthogonalityConsistent)?;
    let spec = config.ball_spec(n)?;
    let balls = basis
        .centers()
        .iter()
        .map(|c| BallDomain::new(c.clone(), radius))
        .collect::<crate::Result<Vec<_>>>()?;
    let rule = if balls.len() == 1 {
        ball_rule(n, &balls[0], &spec)?
    } else {
        union_rule(n, &balls, &spec)?
    };
    let g = series_gram(&basis, &rule)?;
    let modes = basis.modes();
    let mut csv = Table::new(["j_a", "k_a", "j_b", "k_b", "value"]);
    let (mut dev, mut asym, mut cross): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for a in 0..g.nrows() {
        for b in 0..g.ncols() {
            let v = g[(a, b)];
            csv.push(vec![
                (a % modes + 1).to_string(),
                (a / modes + 1).to_string(),
                (b % modes + 1).to_string(),
                (b / modes + 1).to_string(),
                fmt_f64(v),
            ]);
            asym = asym.max((v - g[(b, a)]).abs());
            if a / modes == b / modes {
                dev = dev.max((v - if a == b { 1.0 } else { 0.0 }).abs());
            } else {
                cross = cross.max(v.abs());
            }
        }
    }
    let mut outcome = Outcome::default();
    save(out, "gram.csv", &csv, &mut outcome)?;
    outcome.rules = vec![rule.meta().clone()];
    outcome.results = json!({
        "size": g.nrows(),
        "max_within_centre_deviation_from_identity": dev,
        "max_cross_centre_entry": cross,
        "max_asymmetry": asym,
    });
    outcome.summary = format!("Gram {}x{}: |G - I| within centres {dev:.3e}, cross-centre max {cross:.3e}", g.nrows(), g.ncols());
    Ok(outcome)
}

struct TransformSetup {
    n: Dimension,
    field: Field,
    centers: CenterGrid,
    forward: QuadratureRule,
    eval: QuadratureRule,
    spectral_nodes: usize,
}

fn transform_setup(config: &RunConfig) -> Result<(TransformSetup, Option<f64>, f64), CliError> {
    let n = config.dimension()?;
    if n.get() > 3 {
        return Err(CliError::Config("transform experiments support n <= 3".into()));
    }
    let g = config.transform_grids()?;
    let origin = match &config.field_origin {
        Some(o) => o.clone(),
        None => vec![0.0; n.get()],
    };
    let field = config.field()?.bind(n, config.radius.unwrap_or(1.0), origin.clone())?;
    let spec = BallRuleSpec::product(g.radial_order, config.angular_order.unwrap_or(16));
    let r_cut = match g.r_cut {
        Some(r) => r,
        None => select_r_cut(|x| field.eval(x), n, &origin, g.feature_scale, &spec)?,
    };
    let forward = truncated_infinite_rule(n, &origin, r_cut, &spec)?;
    let (centers, eval) = if n.get() == 1 {
        (
            CenterGrid::uniform_line(g.center_half_width, g.center_nodes)?,
            gauss_legendre_on(g.eval_nodes, -g.eval_half_width, g.eval_half_width)?,
        )
    } else {
        let zero = vec![0.0; n.get()];
        let c_spec = BallRuleSpec::product(g.center_nodes, config.angular_order.unwrap_or(16));
        let e_spec = BallRuleSpec::product(g.eval_nodes, config.angular_order.unwrap_or(16));
        (
            CenterGrid::from_rule(&ball_rule(n, &BallDomain::new(zero.clone(), g.center_half_width)?, &c_spec)?),
            ball_rule(n, &BallDomain::new(zero, g.eval_half_width)?, &e_spec)?,
        )
    };
    Ok((
        TransformSetup {
            n,
            field,
            centers,
            forward,
            eval,
            spectral_nodes: g.spectral_nodes,
        },
        g.lambda_max,
        g.feature_scale,
    ))
}

fn run_transform(s: &TransformSetup, lambda_max: f64, nodes: usize) -> Result<(TransformData, RoundTripReport), CliError> {
    let spectral = SpectralGrid::midpoint(lambda_max, nodes, MeasureMode::Flat)?;
    Ok(roundtrip_report(
        |x| s.field.eval(x),
        s.n,
        &spectral,
        &s.centers,
        &s.forward,
        &s.eval,
        &SecondKindKernel,
    )?)
}

pub(super) fn transform(config: &RunConfig, out: &Path) -> Result<Outcome, CliError> {
    let (s, lambda_max, feature_scale) = transform_setup(config)?;
    let lambda_max = match lambda_max {
        Some(l) => l,
        None => {
            // keep the node spacing of the starting grid while doubling
            let start = default_lambda_max(feature_scale)?;
            let density = s.spectral_nodes as f64 / start;
            let (l, _) = select_lambda_max(start, 3, |l| {
                let (_, report) = run_transform(&s, l, (density * l).round() as usize)
                    .map_err(|e| crate::Error::Degenerate(e.to_string()))?;
                Ok(report.best_bessel().and_then(|e| e.residual).unwrap_or(f64::INFINITY))
            })?;
            l
        }
    };
    let nodes = if config.lambda_max.is_some() {
        s.spectral_nodes
    } else {
        let start = default_lambda_max(feature_scale)?;
        (s.spectral_nodes as f64 * lambda_max / start).round() as usize
    };
    let (td, report) = run_transform(&s, lambda_max, nodes)?;
    let mut header = vec!["lambda".to_string()];
    header.extend((1..=s.n.get()).map(|d| format!("xi{d}")));
    header.push("F".into());
    let mut csv = Table::new(header);
    for (i, &lambda) in td.spectral().lambdas().iter().enumerate() {
        for m in 0..td.centers().len() {
            let mut row = vec![fmt_f64(lambda)];
            row.extend(td.centers().xi(m).iter().map(|v| fmt_f64(*v)));
            row.push(fmt_f64(td.get(i, m)));
            csv.push(row);
        }
    }
    let mut outcome = Outcome::default();
    save(out, "transform.csv", &csv, &mut outcome)?;
    write_json(out, "calibration.json", &report)?;
    outcome.outputs.push("calibration.json".into());
    outcome.rules = vec![s.forward.meta().clone(), s.eval.meta().clone()];
    outcome.summary = match report.best_bessel() {
        Some(best) => format!(
            "best inverse: {:?} measure, C = {:.6e}, residual {:.3e}",
            best.measure_mode,
            best.constant.unwrap_or(f64::NAN),
            best.residual.unwrap_or(f64::NAN)
        ),
        None => "calibration degenerate (zero reconstruction)".into(),
    };
    outcome.results = serde_json::to_value(&report).map_err(|e| CliError::Config(e.to_string()))?;
    Ok(outcome)
}

pub(super) fn spacetime(config: &RunConfig, out: &Path) -> Result<Outcome, CliError> {
    let n = config.dimension()?;
    if n.get() > 2 {
        return Err(CliError::Config("space-time experiments support n <= 2".into()));
    }
    let radius = config.radius()?;
    let ctx = config.wave()?;
    let centers = config.spacetime_centers(n)?;
    let basis = SpaceTimeBasis::new(
        n,
        radius,
        ctx,
        centers.clone(),
        config.modes()?,
        config.weight_mode(),
        config.distance_mode.unwrap_or_default(),
    )?;
    let k = centers.len() as f64;
    let mid: Vec<f64> = (0..n.get()).map(|d| centers.iter().map(|c| c.x[d]).sum::<f64>() / k).collect();
    let t_first = centers.iter().map(|c| c.t).fold(f64::INFINITY, f64::min);
    let t0 = config.t0.unwrap_or(t_first);
    let t1 = config.t1.unwrap_or(t0 + radius / ctx.speed());
    let bx = SpaceTimeBox::new(BallDomain::new(mid.clone(), config.box_radius()?)?, t0, t1)?;
    let spec = config.cone_spec(n)?;
    let rules = centers
        .iter()
        .map(|c| cone_rule(&bx, c, ctx, &spec))
        .collect::<crate::Result<Vec<_>>>()?;
    let field = config.field()?.bind(n, radius, config.field_origin(n)?)?;
    let apex_t = centers[0].t;
    let f = |node: &[f64]| field.eval_causal(node, apex_t, ctx);

    let formula = st_expand(f, &basis, &rules)?;
    // a cone whose apex lies far enough back covers the whole box
    let reach = bx.ball.radius() * 2.0 / ctx.speed() + 1e-9;
    let whole = cone_rule(&bx, &SpaceTimePoint::new(mid, t0 - reach), ctx, &spec)?;
    let oracle = st_project_oracle(f, &basis, &whole, config.svd_cutoff()?)?;
    let gap = formula
        .coefficients()
        .iter()
        .zip(&oracle.coefficients)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    let exp = if config.use_oracle()? {
        SpaceTimeExpansion::new(basis.clone(), formula.alpha0(), oracle.coefficients.clone())?
    } else {
        formula.clone()
    };

    let fhat = |node: &[f64]| st_reconstruct(&exp, &SpaceTimePoint::from_node(node), None);
    let in_cone = |node: &[f64]| {
        let p = SpaceTimePoint::from_node(node);
        centers
            .iter()
            .any(|c| crate::domain::cone_gap(&p, c, ctx).map(|g| g >= 0.0).unwrap_or(false))
    };
    let per_axis = ((config.samples()? as f64).powf(1.0 / (n.get() + 1) as f64).ceil() as usize).max(2);
    let mut header: Vec<String> = (1..=n.get()).map(|d| format!("x{d}")).collect();
    header.extend(["t", "f", "fhat", "abs_err", "in_cone"].map(String::from));
    let mut csv = Table::new(header);
    let total = per_axis.pow(n.get() as u32 + 1);
    for mut idx in 0..total {
        let mut node = Vec::with_capacity(n.get() + 1);
        for d in 0..n.get() {
            let i = idx % per_axis;
            idx /= per_axis;
            let lo = bx.ball.center()[d] - bx.ball.radius();
            node.push(lo + 2.0 * bx.ball.radius() * i as f64 / (per_axis - 1) as f64);
        }
        node.push(t0 + (t1 - t0) * (idx % per_axis) as f64 / (per_axis - 1) as f64);
        if !bx.ball.contains(&node[..n.get()]) {
            continue;
        }
        let (fv, hv) = (f(&node), fhat(&node)?);
        let mut row: Vec<String> = node.iter().map(|v| fmt_f64(*v)).collect();
        row.extend([
            fmt_f64(fv),
            fmt_f64(hv),
            fmt_f64((fv - hv).abs()),
            u8::from(in_cone(&node)).to_string(),
        ]);
        csv.push(row);
    }
    let err = {
        let values = rules[0]
            .iter()
            .map(|(x, _)| fhat(x))
            .collect::<crate::Result<Vec<f64>>>()?;
        let e: f64 = rules[0]
            .weights()
            .iter()
            .zip(rules[0].iter())
            .zip(&values)
            .map(|((w, (x, _)), h)| w * (f(x) - h).powi(2))
            .sum();
        let norm: f64 = rules[0].iter().map(|(x, w)| w * f(x).powi(2)).sum();
        if norm > 0.0 {
            Some((e / norm).sqrt())
        } else {
            None
        }
    };

    let times: Vec<f64> = centers.iter().map(|c| c.t).collect();
    let coeffs = spacetime_table(&exp, &times);
    let mut outcome = Outcome::default();
    save(out, "expansion.csv", &coeffs, &mut outcome)?;
    save(out, "samples.csv", &csv, &mut outcome)?;
    outcome.rules = rules.iter().map(|r| r.meta().clone()).collect();
    outcome.rules.push(whole.meta().clone());
    outcome.results = json!({
        "coefficients": if config.use_oracle()? { "oracle" } else { "formula" },
        "alpha0": exp.alpha0(),
        "relative_l2_error_first_cone": err,
        "max_formula_oracle_gap": gap,
        "oracle_discarded_singular_values": oracle.discarded,
    });
    outcome.summary = format!(
        "space-time expansion: relative L2 error {} on the first cone, formula-oracle gap {gap:.3e}",
        err.map_or("n/a".into(), |e| format!("{e:.3e}"))
    );
    Ok(outcome)
}

fn spacetime_table(exp: &SpaceTimeExpansion, times: &[f64]) -> Table {
    let basis = exp.basis();
    let mut csv = Table::new(["j", "k", "alpha", "mode", "n", "R", "t_k"]);
    let label = basis.weight_mode().label();
    let n = basis.dimension().get().to_string();
    let r = fmt_f64(basis.radius());
    csv.push(vec!["0".into(), "0".into(), fmt_f64(exp.alpha0()), label.into(), n.clone(), r.clone(), String::new()]);
    for k in 1..=basis.centers().len() {
        for j in 1..=basis.modes() {
            csv.push(vec![
                j.to_string(),
                k.to_string(),
                fmt_f64(exp.get(j, k).unwrap_or(f64::NAN)),
                label.into(),
                n.clone(),
                r.clone(),
                fmt_f64(times[k - 1]),
            ]);
        }
    }
    csv
}
