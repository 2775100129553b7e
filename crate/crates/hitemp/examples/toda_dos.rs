//! Mean density of states of the periodic Toda Lax matrix under the Gibbs
//! measure, against the analytic curve √β ∂_α(α μ_α(√β x)) at α = β + θ.
//!
//! Run: cargo run --release -p hitemp --example toda_dos

use hitemp::lab::{run_toda_dos, RunConfig, TodaSampler};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = RunConfig { n: 200, trials: 400, beta: 2.0, seed: 31, bins: 80, ..RunConfig::default() };
    let out = run_toda_dos(&cfg, TodaSampler::Approximate, 0)?;
    println!(
        "beta = {}, theta = {:.12} (residual {:.1e})",
        out.report.beta, out.report.theta, out.report.theta_residual
    );
    println!("KS distance, pooled Lax spectra vs analytic DOS: {:.5}", out.report.ks_vs_dos);

    let con = run_toda_dos(&cfg, TodaSampler::Constrained, 100 * cfg.n)?;
    println!("constrained sampler KS: {:.5}", con.report.ks_vs_dos);
    Ok(())
}
