use std::f64::consts::PI;

use bessel_rbf::domain::{ball_rule, integrate, BallDomain, BallRuleSpec, Dimension, QuadratureRule, RadialMap};
use bessel_rbf::fields::BuiltinField;
use bessel_rbf::series::{
    coeff_alpha, coeff_alpha0, expand, gram, l2_error, project_oracle, reconstruct, reconstruct_zeroth,
    BesselRbfBasis, WeightMode,
};

fn dim(n: usize) -> Dimension {
    Dimension::new(n).unwrap()
}

fn single(n: usize, modes: usize, mode: WeightMode) -> BesselRbfBasis {
    BesselRbfBasis::new(dim(n), 1.0, vec![vec![0.0; n]], modes, mode).unwrap()
}

fn unit_rule(n: usize, radial: usize) -> QuadratureRule {
    let ball = BallDomain::new(vec![0.0; n], 1.0).unwrap();
    ball_rule(dim(n), &ball, &BallRuleSpec::product(radial, 4)).unwrap()
}

#[test]
fn delta_reproduction_and_gram_identity() {
    for n in 1..=3 {
        let basis = single(n, 16, WeightMode::OrthogonalityConsistent);
        let rule = unit_rule(n, 96);
        let g = gram(&basis, &rule).unwrap();
        let mut worst: f64 = 0.0;
        for i in 0..16 {
            for j in 0..16 {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - target).abs());
            }
        }
        assert!(worst <= 1e-6, "n={n}: |G - I| = {worst:e}");
        for m in [1, 5, 16] {
            let f = BuiltinField::CosineMode { m }.bind(dim(n), 1.0, vec![0.0; n]).unwrap();
            let exp = expand(|x| f.eval(x), &basis, std::slice::from_ref(&rule)).unwrap();
            for j in 1..=16 {
                let target = if j == m { 1.0 } else { 0.0 };
                let a = exp.get(j, 1).unwrap();
                assert!((a - target).abs() <= 1e-6, "n={n} m={m} j={j}: {a}");
            }
        }
    }
}

#[test]
fn consistent_expansion_matches_the_oracle() {
    for n in 1..=3 {
        let basis = single(n, 10, WeightMode::OrthogonalityConsistent);
        let rule = unit_rule(n, 64);
        let f = BuiltinField::Bump.bind(dim(n), 1.0, vec![0.0; n]).unwrap();
        let exp = expand(|x| f.eval(x), &basis, std::slice::from_ref(&rule)).unwrap();
        let oracle = project_oracle(|x| f.eval(x), &basis, &rule, 1e-10).unwrap();
        assert_eq!(oracle.discarded, 0);
        for (a, b) in exp.coefficients().iter().zip(&oracle.coefficients) {
            assert!((a - b).abs() <= 1e-6, "n={n}: {a} vs {b}");
        }
    }
}

#[test]
fn printed_coefficients_at_one_dimension() {
    let basis = single(1, 6, WeightMode::AsPrinted);
    let rule = unit_rule(1, 64);
    for m in 1..=6 {
        let f = BuiltinField::CosineMode { m }.bind(dim(1), 1.0, vec![0.0]).unwrap();
        for j in 1..=6 {
            let lambda = (j as f64 - 0.5) * PI;
            let predicted = if j == m { (lambda / (2.0 * PI)).sqrt() } else { 0.0 };
            let a = coeff_alpha(|x| f.eval(x), &basis, j, 1, &rule).unwrap();
            assert!((a - predicted).abs() <= 1e-8, "m={m} j={j}: {a} vs {predicted}");
        }
    }
}

#[test]
fn cosine_equivalence_in_one_dimension() {
    let radius = 1.5;
    let basis = BesselRbfBasis::new(dim(1), radius, vec![vec![0.0]], 8, WeightMode::OrthogonalityConsistent).unwrap();
    let ball = BallDomain::new(vec![0.0], radius).unwrap();
    let rule = ball_rule(dim(1), &ball, &BallRuleSpec::product(64, 1)).unwrap();
    let f = |x: &[f64]| (PI * x[0].abs() / (2.0 * radius)).cos();
    let exp = expand(f, &basis, std::slice::from_ref(&rule)).unwrap();
    // classical half-range cosine series on [0, R], by a separate 1-D rule
    let line = bessel_rbf::domain::gauss_legendre(80).unwrap();
    for j in 1..=8 {
        let lambda = (j as f64 - 0.5) * PI;
        let c = 2.0 / radius
            * integrate(
                |s| {
                    let r = 0.5 * radius * (s[0] + 1.0);
                    0.5 * radius * (PI * r / (2.0 * radius)).cos() * (lambda * r / radius).cos()
                },
                &line,
            )
            .unwrap();
        let amplitude = (2.0 * radius / (PI * lambda)).sqrt();
        let a = exp.get(j, 1).unwrap();
        assert!((a - c / amplitude).abs() <= 1e-10, "j={j}: {a} vs {}", c / amplitude);
    }
    let err = l2_error(f, |x| reconstruct(&exp, x, None).unwrap(), &rule).unwrap();
    assert!(err <= 1e-6, "{err:e}");
}

#[test]
fn truncation_error_falls_with_mode_count() {
    for n in 1..=3 {
        let f = BuiltinField::Decay.bind(dim(n), 1.0, vec![0.0; n]).unwrap();
        let rule = unit_rule(n, 128);
        let err = |modes| {
            let basis = single(n, modes, WeightMode::OrthogonalityConsistent);
            let exp = expand(|x| f.eval(x), &basis, std::slice::from_ref(&rule)).unwrap();
            l2_error(|x| f.eval(x), |x| reconstruct(&exp, x, None).unwrap(), &rule).unwrap()
        };
        let (coarse, fine) = (err(4), err(32));
        assert!(fine <= coarse / 10.0, "n={n}: {coarse:e} -> {fine:e}");
    }
}

#[test]
fn zeroth_terms_are_related_by_a_fixed_factor() {
    for n in 1..=3 {
        let basis = single(n, 2, WeightMode::AsPrinted);
        let x = vec![0.2; n];
        let ball = BallDomain::new(x.clone(), 1.0).unwrap();
        let spec = BallRuleSpec::product(40, 12).with_map(RadialMap::Quadratic);
        let rule = ball_rule(dim(n), &ball, &spec).unwrap();
        let f = |z: &[f64]| (-z.iter().map(|v| v * v).sum::<f64>()).exp();
        let a0 = coeff_alpha0(f, &basis, &x, &rule).unwrap();
        let z = reconstruct_zeroth(f, &basis, &x, &rule).unwrap();
        let factor = (n as f64 + 2.0) / 2.0;
        assert!((z - factor * a0).abs() <= 1e-12 * z.abs(), "n={n}");
    }
}

#[test]
fn expansion_is_linear() {
    let basis = single(2, 6, WeightMode::AsPrinted);
    let rule = unit_rule(2, 48);
    let f = |x: &[f64]| (x[0] + 0.3 * x[1]).cos();
    let g = |x: &[f64]| (1.0 - x[0] * x[0] - x[1] * x[1]).max(0.0);
    let a = 2.5;
    let ef = expand(f, &basis, std::slice::from_ref(&rule)).unwrap();
    let eg = expand(g, &basis, std::slice::from_ref(&rule)).unwrap();
    let combined = expand(|x| a * f(x) + g(x), &basis, std::slice::from_ref(&rule)).unwrap();
    for ((c, x), y) in combined.coefficients().iter().zip(ef.coefficients()).zip(eg.coefficients()) {
        let expected = a * x + y;
        assert!((c - expected).abs() <= 1e-10 * expected.abs().max(1e-300) + 1e-15);
    }
}

#[test]
fn overlapping_centres_report_cross_terms() {
    let basis = BesselRbfBasis::new(
        dim(1),
        1.0,
        vec![vec![-0.4], vec![0.4]],
        3,
        WeightMode::OrthogonalityConsistent,
    )
    .unwrap();
    let balls: Vec<BallDomain> = basis
        .centers()
        .iter()
        .map(|c| BallDomain::new(c.clone(), 1.0).unwrap())
        .collect();
    let rule = bessel_rbf::domain::union_rule(dim(1), &balls, &BallRuleSpec::product(64, 1)).unwrap();
    let g = gram(&basis, &rule).unwrap();
    // multiplicity weighting is discontinuous inside each ball, so the
    // diagonal is only approximately one
    for i in 0..6 {
        assert!((g[(i, i)] - 1.0).abs() < 1e-2, "diagonal {i}: {}", g[(i, i)]);
    }
    assert!(g[(0, 3)].abs() > 1e-3);
}
