//! The super-Motzkin expansion of tridiagonal matrix powers, and the exact
//! moment polynomials it generates.
//!
//! Run: cargo run --release -p hitemp --example motzkin_expansion

use hitemp::motzkin::{enumerate_terms, gaussian_w, h_polynomial, moments_pair, MomentFamily, MomentParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for l in 1..=8u32 {
        let terms = enumerate_terms(l)?;
        let h = h_polynomial(l)?;
        println!("l = {l}: {:4} walk profiles, {:4} distinct monomials in h^{{(l)}}", terms.len(), h.terms.len());
    }
    println!();
    for l in [2u32, 4, 6] {
        let w = gaussian_w(l)?;
        let coeffs: Vec<String> = w.coeffs.iter().map(|c| c.to_string()).collect();
        println!("Gaussian w_{l}(α) coefficients (constant first): {coeffs:?}");
    }
    println!();
    let pair = moments_pair(4, MomentFamily::Laguerre, &MomentParams::laguerre_f64(0.8), 1.0)?;
    println!(
        "Laguerre l=4 at α=1, γ=0.8: v = {:.6}, u = {:.6}, identity residual = {}",
        pair.v_value, pair.u_value, pair.identity_residual
    );
    Ok(())
}
