// `!(x > 0.0)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod domain;
pub mod error;
pub mod fields;
pub mod series;
pub mod spacetime;
pub mod specfun;
pub mod transform;

pub use error::{Error, Result};
