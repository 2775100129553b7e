//! α → ∞: the rescaled density of states approaches an arcsine law.
//!
//! Run: cargo run --release -p hitemp --example limit_check

use hitemp::ensembles::Family;
use hitemp::lab::{run_limit_check, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (family, label) in [
        (Family::GaussianAlpha, "Gaussian  (support (−2, 2))"),
        (Family::JacobiAlpha, "Jacobi    (support (0, 1))"),
    ] {
        let cfg = RunConfig { family, gamma: 0.8, a: 25.8, b: 10.0, ..RunConfig::default() };
        let rep = run_limit_check(&cfg, &[10.0, 50.0, 100.0])?;
        println!("── {label} ──");
        for row in &rep.rows {
            println!("  alpha = {:6.1}: sup distance = {:.5}", row.alpha, row.sup_distance);
        }
        println!("  strictly decreasing: {}", rep.monotone_decreasing);
    }
    Ok(())
}
