//! Causal expansion on forward light cones: the distance r-hat, the cone
//! gate, and a round trip of a single causal mode.
//!
//! cargo run --example spacetime

use bessel_rbf::domain::{cone_rule, spacetime_dist, BallDomain, ConeRuleSpec, Dimension, SpaceTimeBox, SpaceTimePoint, WaveContext};
use bessel_rbf::series::WeightMode;
use bessel_rbf::spacetime::{
    st_basis_eval, st_expand, st_project_oracle, st_reconstruct, DistanceMode, SpaceTimeBasis, SpaceTimeExpansion,
};

fn main() -> bessel_rbf::Result<()> {
    let ctx = WaveContext::new(1.0)?;
    let apex = SpaceTimePoint::new(vec![0.0], 0.0);
    for p in [SpaceTimePoint::new(vec![0.3], 0.5), SpaceTimePoint::new(vec![0.6], 0.5)] {
        match spacetime_dist(&p, &apex, ctx) {
            Ok(r) => println!("({}, {}) is inside the cone, r-hat = {r:.6}", p.x[0], p.t),
            Err(e) => println!("({}, {}): {e}", p.x[0], p.t),
        }
    }

    let basis = SpaceTimeBasis::new(
        Dimension::new(1)?,
        1.0,
        ctx,
        vec![apex.clone()],
        4,
        WeightMode::OrthogonalityConsistent,
        DistanceMode::RhatThroughout,
    )?;
    let bx = SpaceTimeBox::new(BallDomain::new(vec![0.0], 1.0)?, 0.0, 1.0)?;
    let rule = cone_rule(&bx, &apex, ctx, &ConeRuleSpec::Sliced { time_order: 48, space_order: 48 })?;
    let f = |node: &[f64]| st_basis_eval(&basis, 1, 1, &SpaceTimePoint::from_node(node)).unwrap();

    let formula = st_expand(f, &basis, std::slice::from_ref(&rule))?;
    let oracle = st_project_oracle(f, &basis, &rule, 1e-10)?;
    println!("coefficients of the first causal mode:");
    for j in 1..=4 {
        println!(
            "  j = {j}: projection formula {:+.6}, least-squares oracle {:+.6}",
            formula.get(j, 1).unwrap(),
            oracle.coefficients[j - 1]
        );
    }
    let exp = SpaceTimeExpansion::new(basis.clone(), 0.0, oracle.coefficients)?;
    let p = SpaceTimePoint::new(vec![0.2], 0.7);
    println!("at (0.2, 0.7): f = {:.9}, reconstruction = {:.9}", f(&[0.2, 0.7]), st_reconstruct(&exp, &p, None)?);
    Ok(())
}
