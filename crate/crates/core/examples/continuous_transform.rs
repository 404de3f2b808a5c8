//! Forward transform of a Gaussian, calibration of the inverse constant in
//! both spectral measures, and the effect of widening the centre window.
//!
//! cargo run --release --example continuous_transform

use bessel_rbf::domain::{gauss_legendre_on, truncated_infinite_rule, BallRuleSpec, Dimension};
use bessel_rbf::transform::{calibrate_constant, forward_grid, inverse_bessel, CenterGrid, ForwardWeight, MeasureMode, SpectralGrid};

fn main() -> bessel_rbf::Result<()> {
    let one = Dimension::new(1)?;
    let f = |x: &[f64]| (-x[0] * x[0]).exp();
    let rule = truncated_infinite_rule(one, &[0.0], 8.0, &BallRuleSpec::product(96, 1))?;
    let eval = gauss_legendre_on(81, -4.0, 4.0)?;
    let spectral = SpectralGrid::midpoint(12.0, 96, MeasureMode::Flat)?;

    for (half_width, nodes) in [(8.0, 160), (16.0, 320), (32.0, 640)] {
        let centers = CenterGrid::uniform_line(half_width, nodes)?;
        let pair = calibrate_constant(f, one, &spectral, &centers, &rule, &eval)?;
        println!(
            "xi in [-{half_width}, {half_width}]: best {:?} C = {:.6}, residual {:.3e}; other {:?} residual {:.3e}",
            pair.best.measure_mode, pair.best.constant, pair.best.residual, pair.other.measure_mode, pair.other.residual
        );
    }

    let centers = CenterGrid::uniform_line(8.0, 160)?;
    let td = forward_grid(f, one, &spectral, &centers, &rule, ForwardWeight::AsPrinted)?.with_measure(MeasureMode::LambdaWeighted);
    let c = calibrate_constant(f, one, &spectral, &centers, &rule, &eval)?.best.constant;
    println!("pointwise reconstruction on the default window:");
    for x in [0.0, 0.5, 1.0, 2.0] {
        println!("  x = {x}: f = {:.6}, inverse = {:.6}", f(&[x]), inverse_bessel(&td, c, &[x])?);
    }
    Ok(())
}
