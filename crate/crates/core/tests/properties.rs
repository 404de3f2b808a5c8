use proptest::prelude::*;

use bessel_rbf::domain::{
    ball_rule, cone_gap, heaviside, integrate, integrate_par, spacetime_dist, AngularSpec, BallDomain, BallRuleSpec,
    Dimension, RadialMap, SpaceTimePoint, WaveContext,
};
use bessel_rbf::series::{coeff_alpha, BesselRbfBasis, WeightMode};
use bessel_rbf::specfun::{bessel_j, Order};
use bessel_rbf::Error;

fn mc_spec(seed: u64) -> BallRuleSpec {
    BallRuleSpec {
        radial_order: 8,
        angular: AngularSpec::MonteCarlo { samples: 200, seed },
        radial_map: RadialMap::Linear,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rhat_satisfies_the_pythagorean_identity(
        x in -2.0f64..2.0, y in -2.0f64..2.0, t in 0.0f64..3.0, c in 0.2f64..3.0,
    ) {
        let ctx = WaveContext::new(c).unwrap();
        let k = SpaceTimePoint::new(vec![0.0, 0.0], 0.0);
        let p = SpaceTimePoint::new(vec![x, y], t);
        let r2 = x * x + y * y;
        let ct = c * t;
        match spacetime_dist(&p, &k, ctx) {
            Ok(rh) => prop_assert!((rh * rh + r2 - ct * ct).abs() <= 1e-12 * ct * ct.max(1e-300)),
            Err(Error::OutsideCone { .. }) => {
                prop_assert_eq!(heaviside(cone_gap(&p, &k, ctx).unwrap()), 0.0);
                prop_assert!(ct * ct < r2);
            }
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn coefficients_are_linear_in_the_field(a in -3.0f64..3.0, s in 0.1f64..2.0, j in 1usize..6) {
        let dim = Dimension::new(2).unwrap();
        let basis = BesselRbfBasis::new(dim, 1.0, vec![vec![0.0, 0.0]], 6, WeightMode::AsPrinted).unwrap();
        let rule = ball_rule(dim, &BallDomain::new(vec![0.0, 0.0], 1.0).unwrap(), &BallRuleSpec::product(24, 8)).unwrap();
        let f = |x: &[f64]| (s * x[0]).sin() + x[1];
        let g = |x: &[f64]| (-(x[0] * x[0] + x[1] * x[1]) / s).exp();
        let lhs = coeff_alpha(|x| a * f(x) + g(x), &basis, j, 1, &rule).unwrap();
        let rhs = a * coeff_alpha(f, &basis, j, 1, &rule).unwrap() + coeff_alpha(g, &basis, j, 1, &rule).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
    }

    #[test]
    fn monte_carlo_rules_are_bit_stable(seed in any::<u64>(), n in 1usize..6) {
        let dim = Dimension::new(n).unwrap();
        let ball = BallDomain::new(vec![0.1; n], 0.7).unwrap();
        let a = ball_rule(dim, &ball, &mc_spec(seed)).unwrap();
        let b = ball_rule(dim, &ball, &mc_spec(seed)).unwrap();
        prop_assert_eq!(a.weights(), b.weights());
        prop_assert!((0..a.len()).all(|i| a.node(i) == b.node(i)));
        let f = |x: &[f64]| x.iter().map(|v| v.cos()).product::<f64>();
        prop_assert_eq!(integrate(f, &a).unwrap().to_bits(), integrate_par(f, &a).unwrap().to_bits());
    }

    #[test]
    fn ball_rules_integrate_constants_exactly(n in 1usize..4, radius in 0.1f64..5.0, radial in 2usize..40) {
        let dim = Dimension::new(n).unwrap();
        let ball = BallDomain::new(vec![0.0; n], radius).unwrap();
        let rule = ball_rule(dim, &ball, &BallRuleSpec::product(radial, 4)).unwrap();
        prop_assert!((rule.total_weight() / ball.volume() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn recurrence_links_neighbouring_orders(v in 0.0f64..6.0, x in 0.05f64..60.0) {
        // J_v + J_{v+2} = (2 (v+1) / x) J_{v+1}
        let j = |mu: f64| bessel_j(Order::new(mu).unwrap(), x).unwrap();
        let lhs = j(v) + j(v + 2.0);
        let mid = j(v + 1.0);
        let rhs = 2.0 * (v + 1.0) / x * mid;
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + rhs.abs()));
    }
}
