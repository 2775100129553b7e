//! Gaussianity of the linear-statistic fluctuations
//! S_N = √N(⟨ν^{(N)}, P⟩ − ⟨ν̄, P⟩) for P(x) = x².
//!
//! Run: cargo run --release -p hitemp --example fluctuations

use hitemp::ensembles::Family;
use hitemp::lab::{run_fluctuations, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [125usize, 250, 500] {
        let cfg = RunConfig {
            family: Family::GaussianAlpha,
            n,
            trials: 1000,
            alpha: 1.0,
            seed: 23,
            ..RunConfig::default()
        };
        let rep = run_fluctuations(&cfg, &[0.0, 0.0, 1.0])?;
        println!(
            "N = {:4}: var = {:.4}  skew = {:+.3}  excess kurtosis = {:+.3}  JB p = {:.3}",
            n, rep.variance, rep.skewness, rep.excess_kurtosis, rep.normality_p_value
        );
    }
    Ok(())
}
