//! Drive the command layer from code: write a config, run `expand`, read
//! the coefficient CSV back.
//!
//! cargo run --example cli_config

use bessel_rbf::cli::{execute, Command, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = RunConfig::from_toml(
        r#"
        n = 1
        R = 1.0
        J = 4
        field = { name = "cosine_mode", m = 2 }
        "#,
    )?;
    let out = std::env::temp_dir().join("bessel-rbf-cli-example");
    let outcome = execute(Command::Expand, config, out.clone(), None)?;
    println!("{}", outcome.summary);
    print!("{}", std::fs::read_to_string(out.join("coefficients.csv"))?);
    Ok(())
}
