//! Gram matrix of overlapping centres and the least-squares oracle that
//! corrects for the lost orthogonality.
//!
//! cargo run --example gram_oracle

use bessel_rbf::domain::{union_rule, BallDomain, BallRuleSpec, Dimension};
use bessel_rbf::fields::BuiltinField;
use bessel_rbf::series::{expand, gram, l2_error, l2_norm, project_oracle, reconstruct, BesselRbfBasis, WeightMode};

fn main() -> bessel_rbf::Result<()> {
    let dim = Dimension::new(1)?;
    let centers = vec![vec![-0.5], vec![0.5]];
    let basis = BesselRbfBasis::new(dim, 1.0, centers.clone(), 6, WeightMode::OrthogonalityConsistent)?;
    let balls = centers
        .iter()
        .map(|c| BallDomain::new(c.clone(), 1.0))
        .collect::<bessel_rbf::Result<Vec<_>>>()?;
    let rule = union_rule(dim, &balls, &BallRuleSpec::product(96, 1))?;

    let g = gram(&basis, &rule)?;
    println!("Gram block coupling the first modes of the two centres: {:+.4}", g[(0, 6)]);

    let field = BuiltinField::Gaussian.bind(dim, 1.0, vec![0.2])?;
    let f = |x: &[f64]| field.eval(x);
    let norm = l2_norm(f, &rule)?;
    let per_ball = balls
        .iter()
        .map(|b| bessel_rbf::domain::ball_rule(dim, b, &BallRuleSpec::product(96, 1)))
        .collect::<bessel_rbf::Result<Vec<_>>>()?;
    let formula = expand(f, &basis, &per_ball)?;
    let oracle = project_oracle(f, &basis, &rule, 1e-10)?;
    println!(
        "oracle kept {} of {} singular values (largest {:.3e}, smallest {:.3e})",
        oracle.singular_values.len() - oracle.discarded,
        oracle.singular_values.len(),
        oracle.singular_values.first().unwrap(),
        oracle.singular_values.last().unwrap()
    );
    let oracle = oracle.into_expansion(&basis, formula.alpha0())?;
    for (name, exp) in [("per-centre formula", &formula), ("least-squares oracle", &oracle)] {
        let err = l2_error(f, |x| reconstruct(exp, x, None).unwrap(), &rule)?;
        println!("{name:>20}: relative L2 error {:.3e}", err / norm);
    }
    Ok(())
}
