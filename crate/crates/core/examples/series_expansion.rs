//! Expand a radial field on one ball in both weight modes and watch the
//! reconstruction error fall as modes are added.
//!
//! cargo run --example series_expansion

use bessel_rbf::domain::{ball_rule, BallDomain, BallRuleSpec, Dimension};
use bessel_rbf::fields::BuiltinField;
use bessel_rbf::series::{expand, l2_error, l2_norm, reconstruct, BesselRbfBasis, WeightMode};

fn main() -> bessel_rbf::Result<()> {
    let n = 2;
    let dim = Dimension::new(n)?;
    let field = BuiltinField::Decay.bind(dim, 1.0, vec![0.0; n])?;
    let f = |x: &[f64]| field.eval(x);
    let rule = ball_rule(dim, &BallDomain::new(vec![0.0; n], 1.0)?, &BallRuleSpec::product(128, 16))?;
    let norm = l2_norm(f, &rule)?;

    println!("decay field on the unit disc, consistent weights");
    for modes in [1, 2, 4, 8, 16, 32] {
        let basis = BesselRbfBasis::new(dim, 1.0, vec![vec![0.0; n]], modes, WeightMode::OrthogonalityConsistent)?;
        let exp = expand(f, &basis, std::slice::from_ref(&rule))?;
        let err = l2_error(f, |x| reconstruct(&exp, x, None).unwrap(), &rule)?;
        println!("  J = {modes:>2}: relative L2 error {:.3e}", err / norm);
    }

    let printed = BesselRbfBasis::new(dim, 1.0, vec![vec![0.0; n]], 6, WeightMode::AsPrinted)?;
    let consistent = printed.clone().with_weight_mode(WeightMode::OrthogonalityConsistent);
    let a = expand(f, &printed, std::slice::from_ref(&rule))?;
    let b = expand(f, &consistent, std::slice::from_ref(&rule))?;
    println!("first coefficients, as printed vs consistent:");
    for j in 1..=6 {
        println!("  j = {j}: {:+.6e}  {:+.6e}", a.get(j, 1).unwrap(), b.get(j, 1).unwrap());
    }
    Ok(())
}
