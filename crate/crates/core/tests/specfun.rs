use std::f64::consts::PI;

use bessel_rbf::specfun::{bessel_j, bessel_j_asymptotic, bessel_y, bessel_zeros, Order};
use bessel_rbf::Error;

fn order(v: f64) -> Order {
    Order::new(v).unwrap()
}

/// Y_0 from its Neumann series, written out independently of the library.
fn y0_series(x: f64) -> f64 {
    const EULER: f64 = 0.577_215_664_901_532_9;
    let q = 0.25 * x * x;
    let (mut term, mut j0, mut tail, mut harmonic) = (1.0, 1.0, 0.0, 0.0);
    for k in 1..60 {
        let kf = k as f64;
        term *= -q / (kf * kf);
        harmonic += 1.0 / kf;
        j0 += term;
        tail -= term * harmonic;
    }
    2.0 / PI * (((0.5 * x).ln() + EULER) * j0 + tail)
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    for _ in 0..80 {
        let m = 0.5 * (a + b);
        if f(a) * f(m) <= 0.0 {
            b = m;
        } else {
            a = m;
        }
    }
    0.5 * (a + b)
}

#[test]
fn first_zero_of_y0() {
    let oracle = bisect(y0_series, 0.5, 1.5);
    assert!((oracle - 0.893577).abs() < 1e-5);
    assert!(bessel_y(order(0.0), oracle).unwrap().abs() < 1e-12);
    let library = bisect(|x| bessel_y(order(0.0), x).unwrap(), 0.5, 1.5);
    assert!((library - oracle).abs() < 1e-12);
}

#[test]
fn second_kind_edge_cases() {
    assert!(bessel_y(order(0.5), PI / 2.0).unwrap().abs() < 1e-15);
    assert!(matches!(bessel_y(order(0.0), 0.0), Err(Error::Divergence { .. })));
}

#[test]
fn asymptotic_form_at_half_orders_is_exact() {
    for i in 0..500 {
        let x = 0.1 + 0.2 * i as f64;
        for v in [-0.5, 0.5] {
            let a = bessel_j_asymptotic(order(v), x).unwrap();
            let e = bessel_j(order(v), x).unwrap();
            assert!((a - e).abs() <= 1e-12, "v={v} x={x}");
        }
    }
    assert!(bessel_j_asymptotic(order(0.0), 0.0).is_err());
}

#[test]
fn asymptotic_gap_for_j0_is_bounded_by_the_next_term() {
    for x in [50.0, 75.0, 100.0] {
        let gap = (bessel_j(order(0.0), x).unwrap() - bessel_j_asymptotic(order(0.0), x).unwrap()).abs();
        let next = (2.0 / (PI * x)).sqrt() / (8.0 * x);
        assert!(gap <= 1.01 * next, "x={x}: {gap:e} vs {next:e}");
    }
}

#[test]
fn spacing_of_j0_zeros_approaches_pi() {
    let t = bessel_zeros(order(0.0), 200).unwrap();
    let last = t.spacings().last().copied().unwrap();
    assert!((last - PI).abs() < 1e-4);
    let gaps: Vec<f64> = t.spacings().iter().map(|s| (s - PI).abs()).collect();
    assert!(gaps[99..].windows(2).all(|w| w[1] <= w[0] + 1e-12));
}
