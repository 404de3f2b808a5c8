use std::f64::consts::{FRAC_PI_4, PI};

use super::{gamma, is_half_integer, is_integer, Order};
use crate::error::{Error, Result};

/// Arguments at or below this use the ascending power series.
const SERIES_LIMIT: f64 = 12.0;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Start of the Hankel asymptotic region for order `mu`.
fn asymptotic_threshold(mu: f64) -> f64 {
    (2.0 * mu * mu).max(25.0)
}

/// Bessel function of the first kind `J_v(x)`.
///
/// Returns [`Error::Divergence`] for `v < 0` at `x = 0` and [`Error::Domain`]
/// for negative or non-finite `x`.
pub fn bessel_j(order: Order, x: f64) -> Result<f64> {
    let v = order.value();
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain {
            function: "bessel_j",
            value: x,
        });
    }
    if x == 0.0 {
        return match v {
            0.0 => Ok(1.0),
            v if v > 0.0 => Ok(0.0),
            _ => Err(Error::Divergence {
                function: "bessel_j",
                order: v,
            }),
        };
    }
    Ok(j_unchecked(v, x))
}

/// Bessel function of the second kind `Y_v(x)`, singular at the origin.
pub fn bessel_y(order: Order, x: f64) -> Result<f64> {
    let v = order.value();
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain {
            function: "bessel_y",
            value: x,
        });
    }
    if x == 0.0 {
        return Err(Error::Divergence {
            function: "bessel_y",
            order: v,
        });
    }
    Ok(y_unchecked(v, x))
}

/// Leading term of the large-argument form, `sqrt(2/(pi x)) cos(x - v pi/2 - pi/4)`.
pub fn bessel_j_asymptotic(order: Order, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            function: "bessel_j_asymptotic",
            value: x,
        });
    }
    let v = order.value();
    Ok((2.0 / (PI * x)).sqrt() * (x - 0.5 * v * PI - FRAC_PI_4).cos())
}

/// `J_mu(x)` for `x > 0` and any real `mu` that is not a negative integer.
pub(crate) fn j_unchecked(mu: f64, x: f64) -> f64 {
    if mu == -0.5 {
        return (2.0 / (PI * x)).sqrt() * x.cos();
    }
    if mu == 0.5 {
        return (2.0 / (PI * x)).sqrt() * x.sin();
    }
    if is_half_integer(mu) && mu > 0.0 && x > SERIES_LIMIT.max(mu) {
        return half_integer_upward(mu, x);
    }
    j_general(mu, x)
}

fn j_general(mu: f64, x: f64) -> f64 {
    if x <= SERIES_LIMIT || 0.25 * x * x < mu + 1.0 {
        j_series(mu, x)
    } else if x >= asymptotic_threshold(mu) {
        let (p, q) = hankel_pq(mu, x);
        let w = hankel_phase(mu, x);
        (2.0 / (PI * x)).sqrt() * (p * w.cos() - q * w.sin())
    } else {
        j_miller(mu, x, 0)[0]
    }
}

/// `Y_v(x)` for `x > 0`, `v >= -1/2`.
pub(crate) fn y_unchecked(v: f64, x: f64) -> f64 {
    if is_half_integer(v) {
        // Y_{-1/2} = J_{1/2} and Y_{1/2} = -J_{-1/2}; upward recurrence is stable for Y.
        let s = (2.0 / (PI * x)).sqrt();
        let mut below = s * x.sin();
        if v == -0.5 {
            return below;
        }
        let mut current = -s * x.cos();
        let mut order = 0.5;
        while order < v {
            let next = 2.0 * order / x * current - below;
            below = current;
            current = next;
            order += 1.0;
        }
        return current;
    }
    if x >= asymptotic_threshold(v) {
        let (p, q) = hankel_pq(v, x);
        let w = hankel_phase(v, x);
        return (2.0 / (PI * x)).sqrt() * (p * w.sin() + q * w.cos());
    }
    if is_integer(v) {
        return y_integer(v as usize, x);
    }
    let (s, c) = (v * PI).sin_cos();
    (j_general(v, x) * c - j_general(-v, x)) / s
}

fn half_integer_upward(mu: f64, x: f64) -> f64 {
    let s = (2.0 / (PI * x)).sqrt();
    let mut below = s * x.cos();
    let mut current = s * x.sin();
    let mut order = 0.5;
    while order < mu {
        let next = 2.0 * order / x * current - below;
        below = current;
        current = next;
        order += 1.0;
    }
    current
}

fn j_series(mu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let q = half * half;
    let mut term = half.powf(mu) / gamma(mu + 1.0);
    let mut sum = term;
    let mut k = 1.0;
    while k < 500.0 {
        term *= -q / (k * (k + mu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() && k * k > q {
            break;
        }
        k += 1.0;
    }
    sum
}

fn hankel_phase(mu: f64, x: f64) -> f64 {
    x - (0.5 * mu + 0.25) * PI
}

/// The `P` and `Q` sums of Hankel's expansion, truncated at the smallest term.
fn hankel_pq(mu: f64, x: f64) -> (f64, f64) {
    let m = 4.0 * mu * mu;
    let (mut p, mut q) = (1.0, 0.0);
    let mut term = 1.0_f64;
    let mut previous = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        let next = term * (m - odd * odd) / (kf * 8.0 * x);
        if next.abs() > previous {
            break;
        }
        term = next;
        previous = term.abs();
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-18 {
            break;
        }
    }
    (p, q)
}

/// Miller's backward recurrence, normalised with the Neumann series of
/// `(x/2)^mu`. Returns `J_{mu+k}(x)` for `k = 0..len`, where `len` covers at
/// least `min_len` entries.
fn j_miller(mu: f64, x: f64, min_len: usize) -> Vec<f64> {
    let mut start = (1.2 * x + 40.0).ceil() as usize + min_len;
    start += start % 2;
    let mut f = vec![0.0; start + 2];
    f[start] = 1e-30;
    for k in (1..=start).rev() {
        f[k - 1] = 2.0 * (mu + k as f64) / x * f[k] - f[k + 1];
        if f[k - 1].abs() > 1e250 {
            for value in &mut f[k - 1..] {
                *value *= 1e-250;
            }
        }
    }
    let mut norm = f[0];
    let mut h = 1.0;
    let mut k = 1;
    while 2 * k <= start {
        if k > 1 {
            h *= (mu + (k - 1) as f64) / k as f64;
        }
        norm += (mu + 2.0 * k as f64) * h * f[2 * k];
        k += 1;
    }
    let scale = (0.5 * x).powf(mu) / (gamma(mu + 1.0) * norm);
    f.truncate(start + 1);
    for value in &mut f {
        *value *= scale;
    }
    f
}

/// Neumann expansion of `Y_n` in terms of `J_{n+2k}`.
fn y_integer(n: usize, x: f64) -> f64 {
    let j = j_miller(0.0, x, n + 2);
    let half = 0.5 * x;
    let nf = n as f64;

    let mut head = 0.0;
    if n > 0 {
        // n! / (k! (n - k)) for k = 0..n
        let n_factorial: f64 = (1..=n).map(|i| i as f64).product();
        let mut k_factorial = 1.0;
        let mut power = 1.0;
        for (k, jk) in j.iter().enumerate().take(n) {
            if k > 0 {
                k_factorial *= k as f64;
                power *= half;
            }
            head += n_factorial / (k_factorial * (n - k) as f64) * power * jk;
        }
        head *= -half.powi(-(n as i32)) / PI;
    }

    let digamma = -EULER_GAMMA + (1..=n).map(|i| 1.0 / i as f64).sum::<f64>();
    let log_term = 2.0 / PI * (half.ln() - digamma) * j[n];

    let mut tail = 0.0;
    let mut k = 1;
    while n + 2 * k < j.len() {
        let kf = k as f64;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        tail += sign * (nf + 2.0 * kf) / (kf * (nf + kf)) * j[n + 2 * k];
        k += 1;
    }
    head + log_term - 2.0 / PI * tail
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(v: f64) -> Order {
        Order::new(v).unwrap()
    }

    // Reference values from an independent implementation (scipy.special.jv / yv).
    const J_REFERENCE: &[(f64, f64, f64)] = &[
        (0.0, 1.0, 0.7651976865579666),
        (0.0, 10.0, -0.24593576445134832),
        (0.0, 20.0, 0.16702466434058322),
        (0.0, 30.0, -0.08636798358104021),
        (1.0, 5.0, -0.3275791375914652),
        (1.0, 15.0, 0.20510403861352275),
        (1.0, 40.0, 0.12603831803758497),
        (2.0, 3.0, 0.4860912605858912),
        (2.0, 25.0, -0.10629480324238133),
        (1.5, 7.0, -0.19905171329249458),
        (2.5, 18.0, 0.11922846888645106),
        (0.3, 17.0, -0.19339760655939037),
        (3.7, 2.0, 0.05216623525630886),
        (0.0, 33.0, 0.09727067223550949),
        (0.5, 26.0, 0.1193236489339746),
        (-0.3, 14.0, 0.09408132082286254),
    ];

    const Y_REFERENCE: &[(f64, f64, f64)] = &[
        (0.0, 1.0, 0.088256964215677),
        (0.0, 0.1, -1.5342386513503667),
        (0.0, 15.0, 0.2054642960389182),
        (0.0, 60.0, 0.0473589522094494),
        (1.0, 2.0, -0.1070324315409375),
        (1.0, 20.0, -0.16551161436252135),
        (2.0, 5.0, 0.3676628826055246),
        (0.3, 4.0, 0.16145424119382162),
        (0.3, 18.0, -0.1612996516043142),
        (1.0, 0.01, -63.67859628206066),
        (0.7, 14.0, -0.09139178340623885),
    ];

    #[test]
    fn j_matches_reference_values() {
        for &(v, x, expected) in J_REFERENCE {
            let got = bessel_j(order(v), x).unwrap();
            assert!((got - expected).abs() < 1e-12, "J_{v}({x}) = {got}, expected {expected}");
        }
    }

    #[test]
    fn y_matches_reference_values() {
        for &(v, x, expected) in Y_REFERENCE {
            let got = bessel_y(order(v), x).unwrap();
            assert!((got - expected).abs() < 1e-11 * expected.abs().max(1.0), "Y_{v}({x}) = {got}, expected {expected}");
        }
    }

    #[test]
    fn j_at_origin() {
        assert_eq!(bessel_j(order(0.0), 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(order(1.5), 0.0).unwrap(), 0.0);
        assert!(matches!(
            bessel_j(order(-0.5), 0.0),
            Err(Error::Divergence { .. })
        ));
        assert!(matches!(bessel_j(order(0.0), -1.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn half_order_closed_forms() {
        let j = bessel_j(order(0.5), PI).unwrap();
        assert!(j.abs() < 1e-15);
        let y = bessel_y(order(0.5), PI / 2.0).unwrap();
        assert!(y.abs() < 1e-15);
        assert!(matches!(bessel_y(order(0.0), 0.0), Err(Error::Divergence { .. })));
    }

    #[test]
    fn methods_agree_across_region_boundaries() {
        for &v in &[0.0, 0.3, 1.0, 1.5, 2.0, 2.5] {
            for &x in &[SERIES_LIMIT, asymptotic_threshold(v)] {
                let a = j_series(v, x);
                let b = j_miller(v, x, 0)[0];
                assert!((a - b).abs() < 1e-10 || x > SERIES_LIMIT, "v={v} x={x}");
                let (p, q) = hankel_pq(v, x);
                let w = hankel_phase(v, x);
                let asym = (2.0 / (PI * x)).sqrt() * (p * w.cos() - q * w.sin());
                assert!((asym - b).abs() < 1e-10 || x < 20.0, "v={v} x={x}: {asym} vs {b}");
            }
        }
    }

    #[test]
    fn wronskian_holds() {
        // J_{v+1} Y_v - J_v Y_{v+1} = 2 / (pi x)
        for &v in &[0.0, 0.5, 1.0, 0.3, -0.5] {
            for &x in &[0.5, 3.0, 11.0, 13.0, 24.0, 40.0, 90.0] {
                let lhs = j_unchecked(v + 1.0, x) * y_unchecked(v, x)
                    - j_unchecked(v, x) * y_unchecked(v + 1.0, x);
                let rhs = 2.0 / (PI * x);
                assert!((lhs - rhs).abs() < 1e-12 * rhs.max(1.0), "v={v} x={x}");
            }
        }
    }
}
