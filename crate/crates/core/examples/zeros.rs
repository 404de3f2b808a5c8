//! Positive zeros of J_v and how fast their spacing approaches pi.
//!
//! cargo run --example zeros

use std::f64::consts::PI;

use bessel_rbf::specfun::{bessel_zeros, interleaves, Order};

fn main() -> bessel_rbf::Result<()> {
    for v in [-0.5, 0.0, 0.5, 1.0] {
        let table = bessel_zeros(Order::new(v)?, 201)?;
        let spacings = table.spacings();
        println!(
            "v = {v:>4}: lambda_1 = {:.12}, spacing - pi at j=1: {:+.3e}, j=100: {:+.3e}, j=200: {:+.3e}",
            table.zeros()[0],
            spacings[0] - PI,
            spacings[99] - PI,
            spacings[199] - PI
        );
    }
    let j0 = bessel_zeros(Order::new(0.0)?, 20)?;
    let j1 = bessel_zeros(Order::new(1.0)?, 20)?;
    println!("zeros of J_0 and J_1 interleave: {}", interleaves(&j0, &j1));
    Ok(())
}
