//! Ball, Monte Carlo and cone rules, checked against exact measures.
//!
//! cargo run --example quadrature

use bessel_rbf::domain::{
    ball_rule, ball_volume, cone_rule, integrate, integrate_par, mc_standard_error, AngularSpec, BallDomain,
    BallRuleSpec, ConeRuleSpec, Dimension, RadialMap, SpaceTimeBox, SpaceTimePoint, WaveContext,
};

fn main() -> bessel_rbf::Result<()> {
    for n in 1..=3 {
        let dim = Dimension::new(n)?;
        let rule = ball_rule(dim, &BallDomain::new(vec![0.0; n], 1.0)?, &BallRuleSpec::product(32, 8))?;
        println!(
            "n = {n}: {} nodes, total weight {:.15} (exact {:.15})",
            rule.len(),
            rule.total_weight(),
            ball_volume(n, 1.0)
        );
    }

    let dim = Dimension::new(5)?;
    let spec = BallRuleSpec {
        radial_order: 24,
        angular: AngularSpec::MonteCarlo { samples: 4000, seed: 42 },
        radial_map: RadialMap::Linear,
    };
    let rule = ball_rule(dim, &BallDomain::new(vec![0.0; 5], 1.0)?, &spec)?;
    let f = |x: &[f64]| x[0] * x[0];
    let exact = ball_volume(5, 1.0) / 7.0;
    let est = integrate(f, &rule)?;
    println!(
        "n = 5 Monte Carlo: int x1^2 = {est:.6} (exact {exact:.6}, standard error {:.2e}); parallel sum identical: {}",
        mc_standard_error(f, &rule).unwrap_or(f64::NAN),
        integrate_par(f, &rule)? == est
    );

    // forward cone of the origin inside [-1, 1] x [0, 1]: a triangle of area 1
    let bx = SpaceTimeBox::new(BallDomain::new(vec![0.0], 1.0)?, 0.0, 1.0)?;
    let apex = SpaceTimePoint::new(vec![0.0], 0.0);
    let ctx = WaveContext::new(1.0)?;
    let sliced = cone_rule(&bx, &apex, ctx, &ConeRuleSpec::Sliced { time_order: 16, space_order: 16 })?;
    let mc = cone_rule(&bx, &apex, ctx, &ConeRuleSpec::MonteCarlo { samples: 100_000, seed: 7 })?;
    println!(
        "cone measure: sliced {:.15}, Monte Carlo {:.4}; int t over cone: {:.15} (exact 2/3)",
        sliced.total_weight(),
        mc.total_weight(),
        integrate(|x| x[1], &sliced)?
    );
    Ok(())
}
