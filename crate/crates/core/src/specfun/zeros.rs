use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{j_unchecked, Order};
use crate::error::{Error, Result};

/// Residual bound every refined zero must meet.
pub const ZERO_TOLERANCE: f64 = 1e-12;

/// The first positive zeros `lambda_1 < lambda_2 < ...` of `J_v`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroTable {
    order: Order,
    zeros: Vec<f64>,
    tolerance: f64,
}

impl ZeroTable {
    /// Wraps externally supplied zeros without checking them. Use
    /// [`ZeroTable::validate`] before relying on the table.
    pub fn from_values(order: Order, zeros: Vec<f64>, tolerance: f64) -> Self {
        Self {
            order,
            zeros,
            tolerance,
        }
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// `lambda_j` with 1-based `j`.
    pub fn get(&self, j: usize) -> Option<f64> {
        j.checked_sub(1).and_then(|i| self.zeros.get(i).copied())
    }

    /// Residual `|J_v(lambda_j)|` for every entry.
    pub fn residuals(&self) -> Vec<f64> {
        self.zeros
            .iter()
            .map(|&z| j_unchecked(self.order.value(), z).abs())
            .collect()
    }

    /// Checks positivity, strict ordering and the residual bound.
    pub fn validate(&self) -> Result<()> {
        let mut previous = 0.0;
        for (i, (&z, r)) in self.zeros.iter().zip(self.residuals()).enumerate() {
            if !(z > previous) {
                return Err(Error::invalid(format!(
                    "zero table not strictly increasing at index {}",
                    i + 1
                )));
            }
            if !(r <= self.tolerance) {
                return Err(Error::Convergence {
                    order: self.order.value(),
                    index: i + 1,
                    residual: r,
                });
            }
            previous = z;
        }
        Ok(())
    }

    /// `lambda_{j+1} - lambda_j` for `j = 1..len`.
    pub fn spacings(&self) -> Vec<f64> {
        self.zeros.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// McMahon's large-zero expansion for the `s`-th zero of `J_v`.
pub fn mcmahon(order: Order, s: usize) -> f64 {
    let v = order.value();
    let mu = 4.0 * v * v;
    let beta = (s as f64 + 0.5 * v - 0.25) * PI;
    let b8 = 8.0 * beta;
    beta - (mu - 1.0) / b8
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8.powi(3))
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * b8.powi(5))
}

/// Smallest gap between consecutive positive zeros for `v >= -1/2`, with margin.
const MIN_GAP: f64 = 1.0;
const SCAN_STEP: f64 = 0.25;

/// The first `count` positive zeros of `J_v`.
pub fn bessel_zeros(order: Order, count: usize) -> Result<ZeroTable> {
    if count == 0 {
        return Err(Error::invalid("zero count must be at least 1"));
    }
    let v = order.value();
    let j = |x: f64| j_unchecked(v, x);
    let mut zeros = Vec::with_capacity(count);
    let mut lower = 1e-3;
    for s in 1..=count {
        let guess = mcmahon(order, s);
        let (a, b) = match bracket_near(&j, guess, lower) {
            Some(br) => br,
            None => scan_bracket(&j, lower),
        };
        let root = refine(v, a, b);
        let residual = j(root).abs();
        if !(residual <= ZERO_TOLERANCE) {
            return Err(Error::Convergence {
                order: v,
                index: s,
                residual,
            });
        }
        zeros.push(root);
        lower = root + MIN_GAP;
    }
    Ok(ZeroTable {
        order,
        zeros,
        tolerance: ZERO_TOLERANCE,
    })
}

/// Accepts the McMahon guess only when a sign change sits in a short window
/// around it and no earlier zero was skipped between `lower` and the window.
fn bracket_near(j: &impl Fn(f64) -> f64, guess: f64, lower: f64) -> Option<(f64, f64)> {
    let a = guess - 0.5;
    let b = guess + 0.5;
    if !guess.is_finite() || a <= lower {
        return None;
    }
    let (fl, fa, fb) = (j(lower), j(a), j(b));
    if fl * fa > 0.0 && fa * fb < 0.0 {
        Some((a, b))
    } else {
        None
    }
}

fn scan_bracket(j: &impl Fn(f64) -> f64, lower: f64) -> (f64, f64) {
    let mut a = lower;
    let mut fa = j(a);
    loop {
        let b = a + SCAN_STEP;
        let fb = j(b);
        if fa == 0.0 {
            return (a, a);
        }
        if fa * fb <= 0.0 {
            return (a, b);
        }
        a = b;
        fa = fb;
    }
}

/// Bisection down to a narrow bracket, then safeguarded Newton steps.
fn refine(v: f64, mut a: f64, mut b: f64) -> f64 {
    let j = |x: f64| j_unchecked(v, x);
    if a == b {
        return a;
    }
    let mut fa = j(a);
    for _ in 0..200 {
        if b - a <= 1e-9 * b {
            break;
        }
        let m = 0.5 * (a + b);
        let fm = j(m);
        if fm == 0.0 {
            return m;
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    let width = b - a;
    let (lo, hi) = (a - width, b + width);
    let mut x = 0.5 * (a + b);
    let mut best = (j(x).abs(), x);
    for _ in 0..8 {
        let fx = j(x);
        let derivative = v / x * fx - j_unchecked(v + 1.0, x);
        let next = x - fx / derivative;
        if !(next >= lo && next <= hi) {
            break;
        }
        x = next;
        let r = j(x).abs();
        if r < best.0 {
            best = (r, x);
        }
        if r == 0.0 {
            break;
        }
    }
    best.1
}

/// True when the zeros of `a` and `b` strictly alternate starting with `a`,
/// compared over the shorter table.
pub fn interleaves(a: &ZeroTable, b: &ZeroTable) -> bool {
    let n = a.len().min(b.len());
    (0..n).all(|i| {
        let next_a = a.zeros.get(i + 1).copied().unwrap_or(f64::INFINITY);
        a.zeros[i] < b.zeros[i] && b.zeros[i] < next_a
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(v: f64) -> Order {
        Order::new(v).unwrap()
    }

    #[test]
    fn half_order_zeros_are_multiples_of_pi() {
        let t = bessel_zeros(order(-0.5), 3).unwrap();
        for (j, z) in t.zeros().iter().enumerate() {
            assert!((z - (j as f64 + 0.5) * PI).abs() < 1e-12);
        }
        let t = bessel_zeros(order(0.5), 3).unwrap();
        for (j, z) in t.zeros().iter().enumerate() {
            assert!((z - (j as f64 + 1.0) * PI).abs() < 1e-12);
        }
    }

    /// Independent J_0: plain power series, then bisection.
    fn j0_series(x: f64) -> f64 {
        let q = 0.25 * x * x;
        let (mut term, mut sum) = (1.0, 1.0);
        for k in 1..60 {
            term *= -q / (k as f64 * k as f64);
            sum += term;
        }
        sum
    }

    #[test]
    fn first_zero_of_j0() {
        let (mut a, mut b) = (2.0, 3.0);
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            if j0_series(a) * j0_series(m) <= 0.0 {
                b = m;
            } else {
                a = m;
            }
        }
        let oracle = 0.5 * (a + b);
        let t = bessel_zeros(order(0.0), 1).unwrap();
        assert!((t.zeros()[0] - oracle).abs() < 1e-10);
        assert!((oracle - 2.404826).abs() < 1e-6);
    }

    #[test]
    fn large_order_zeros_are_found_by_scanning() {
        // McMahon is poor for small s relative to v; the scan fallback covers it.
        let t = bessel_zeros(order(10.0), 3).unwrap();
        assert!((t.zeros()[0] - 14.475_500_686_554_54).abs() < 1e-9);
        t.validate().unwrap();
    }

    #[test]
    fn zero_count_must_be_positive() {
        assert!(bessel_zeros(order(0.0), 0).is_err());
    }

    #[test]
    fn validate_rejects_wrong_table() {
        let bad = ZeroTable::from_values(order(0.0), vec![2.4, 5.52], ZERO_TOLERANCE);
        assert!(bad.validate().is_err());
    }

    #[test]
    fn tables_interleave() {
        for &v in &[-0.5, 0.0, 0.5, 1.0, 1.5] {
            let a = bessel_zeros(order(v), 60).unwrap();
            let b = bessel_zeros(order(v + 1.0), 60).unwrap();
            assert!(interleaves(&a, &b), "v = {v}");
        }
    }
}
