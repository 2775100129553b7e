//! Evaluate the analytic densities on grids: orthogonality measures,
//! densities of states, spectral measures, and the Tricomi ψ behind them.
//!
//! Run: cargo run --release -p hitemp --example densities

use hitemp::densities::{
    dos_curve, laguerre_spectral, mu_gaussian, mu_jacobi, mu_laguerre, DensityFamily,
};
use hitemp::specfun::{fhat_alpha, tricomi_psi, ComplexVal};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("μ_1(0)          = {:.12}", mu_gaussian(1.0, 0.0)?);
    println!("μ_{{1,0.8}}(1)    = {:.12}", mu_laguerre(1.0, 0.8, 1.0)?);
    println!("μ̃_{{A,B}}(1)      = {:.12} (Laguerre spectral, α=1, γ=0.8)", laguerre_spectral(1.0, 0.8, 1.0)?);
    println!("μ_{{1.5,.3,-.4}}(0.6) = {:.12}", mu_jacobi(1.5, 0.3, -0.4, 0.6)?);
    println!("f̂_1(1.7)        = {}", fhat_alpha(1.0, 1.7)?);
    println!("ψ(1,−½; 2e^{{−iπ}}) = {}", tricomi_psi(1.0, -0.5, ComplexVal::new(-2.0, -0.0))?);

    for fam in [
        DensityFamily::Gaussian { alpha: 1.0 },
        DensityFamily::Laguerre { alpha: 1.0, gamma: 0.8 },
        DensityFamily::Jacobi { alpha: 1.0, a: 25.8, b: 10.0 },
    ] {
        let curve = dos_curve(&fam, 400)?;
        println!("{:<42} trapezoid mass = {:.8}", format!("{fam:?}"), curve.mass());
    }
    Ok(())
}
