//! Round-trip report for the Bessel inverse and the second-kind kernel
//! inverse, including a user-supplied kernel.
//!
//! cargo run --release --example biorthogonal

use bessel_rbf::domain::{gauss_legendre_on, truncated_infinite_rule, BallRuleSpec, Dimension};
use bessel_rbf::transform::{roundtrip_report, CenterGrid, FnKernel, MeasureMode, SecondKindKernel, SpectralGrid};

fn main() -> bessel_rbf::Result<()> {
    let one = Dimension::new(1)?;
    let f = |x: &[f64]| (-x[0] * x[0]).exp();
    let rule = truncated_infinite_rule(one, &[0.0], 8.0, &BallRuleSpec::product(96, 1))?;
    let eval = gauss_legendre_on(81, -4.0, 4.0)?;
    let spectral = SpectralGrid::midpoint(12.0, 96, MeasureMode::Flat)?;
    let centers = CenterGrid::uniform_line(8.0, 160)?;

    let (_, report) = roundtrip_report(f, one, &spectral, &centers, &rule, &eval, &SecondKindKernel)?;
    for e in report.bessel.iter().chain(&report.biorthogonal) {
        println!(
            "{:>10} {:?}: C = {:?}, residual = {:?}, kernel collisions {}",
            e.kernel, e.measure_mode, e.constant, e.residual, e.collisions
        );
    }

    // any radial kernel can stand in for the default
    let cosine = FnKernel::new("cosine", |_, lambda, r| Ok((lambda * r).cos()));
    let (_, report) = roundtrip_report(f, one, &spectral, &centers, &rule, &eval, &cosine)?;
    for e in &report.biorthogonal {
        println!("{:>10} {:?}: C = {:?}, residual = {:?}", e.kernel, e.measure_mode, e.constant, e.residual);
    }
    Ok(())
}
