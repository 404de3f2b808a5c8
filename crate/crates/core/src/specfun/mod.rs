//! Bessel functions of the first and second kind for real order and
//! non-negative real argument, together with their positive zeros.
//!
//! The basis functions of the series only ever need orders of the form
//! `n/2 - 1` (integers and half-integers), but every routine accepts any
//! real order `v >= -1/2`.

mod bessel;
mod zeros;

pub use bessel::{bessel_j, bessel_j_asymptotic, bessel_y};
pub(crate) use bessel::{j_unchecked, y_unchecked};
pub use zeros::{bessel_zeros, interleaves, mcmahon, ZeroTable};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Order `v` of a Bessel function, restricted to `v >= -1/2`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Order(f64);

impl Order {
    pub fn new(v: f64) -> Result<Self> {
        if !v.is_finite() || v < -0.5 {
            return Err(Error::invalid(format!("Bessel order must be >= -1/2, got {v}")));
        }
        Ok(Order(v))
    }

    /// The order `n/2 - 1` of the nonsingular Helmholtz solution in `n` dimensions.
    pub fn for_dimension(n: usize) -> Self {
        Order(n as f64 / 2.0 - 1.0)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `v + 1`, the order of the normalising factor `J_{v+1}(lambda_j)`.
    pub fn next(self) -> Self {
        Order(self.0 + 1.0)
    }

    pub fn is_half_integer(self) -> bool {
        is_half_integer(self.0)
    }
}

pub(crate) fn is_integer(v: f64) -> bool {
    v.fract() == 0.0
}

pub(crate) fn is_half_integer(v: f64) -> bool {
    (v - 0.5).fract() == 0.0
}

/// Gamma function.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}
