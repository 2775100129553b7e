//! Tricomi's confluent hypergeometric function ψ(a, b; z).
//!
//! ψ is the solution of Kummer's equation z ψ″ + (b−z) ψ′ − a ψ = 0 with
//! ψ ~ z^{−a} as z → ∞. For non-integer b it is assembled from the two
//! Kummer solutions:
//!
//!   ψ(a,b;z) = Γ(1−b)/Γ(a−b+1) ₁F₁(a,b;z)
//!            + Γ(b−1)/Γ(a) z^{1−b} ₁F₁(a−b+1, 2−b; z),
//!
//! with the principal branch of z^{1−b}. The densities evaluate ψ on the ray
//! arg z = −π; pass z with a negative-zero imaginary part (`-0.0`) to select
//! it, or use the dedicated negative-axis entry points.

use num_complex::Complex64;

use super::gamma::{ln_abs_gamma, log_gamma, sin_pi};
use super::hyp::{hyp1f1, hyp1f1_real_log, LogVal};
use super::{ComplexVal, SpecFunError};

const B_INT_TOL: f64 = 1e-8;

/// A complex number stored as e^{ln_scale} · val with |val| = O(1).
#[derive(Debug, Clone, Copy)]
pub struct ScaledComplex {
    pub ln_scale: f64,
    pub val: Complex64,
}

impl ScaledComplex {
    pub fn to_complex(self) -> Complex64 {
        self.val * self.ln_scale.exp()
    }

    /// ln of the squared modulus.
    pub fn ln_norm_sqr(self) -> f64 {
        2.0 * self.ln_scale + self.val.norm_sqr().ln()
    }
}

fn check_b(b: f64) -> Result<(), SpecFunError> {
    if (b - b.round()).abs() <= B_INT_TOL {
        return Err(SpecFunError::BranchUndefined(format!(
            "tricomi psi: b = {b} is within {B_INT_TOL} of an integer"
        )));
    }
    Ok(())
}

/// 1/Γ(x) as a LogVal, with 1/Γ = 0 at the poles.
fn inv_gamma_log(x: f64) -> Result<LogVal, SpecFunError> {
    if x <= 0.0 && x == x.floor() {
        return Ok(LogVal::zero());
    }
    let (ln, sign) = ln_abs_gamma(x)?;
    Ok(LogVal::from_parts(sign, -ln))
}

fn gamma_log(x: f64) -> Result<LogVal, SpecFunError> {
    let (ln, sign) = ln_abs_gamma(x)?;
    Ok(LogVal::from_parts(sign, ln))
}

/// ψ(a, b; z) for complex z (principal branch of z^{1−b} from `arg z`).
pub fn tricomi_psi(a: f64, b: f64, z: ComplexVal) -> Result<ComplexVal, SpecFunError> {
    check_b(b)?;
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(SpecFunError::Domain("tricomi psi: non-finite z".into()));
    }
    if z.norm() == 0.0 {
        return Err(SpecFunError::Domain("tricomi psi: z = 0".into()));
    }
    let c1 = gamma_log(1.0 - b)?.mul(inv_gamma_log(a - b + 1.0)?);
    let c2 = gamma_log(b - 1.0)?.mul(inv_gamma_log(a)?);
    let m1 = hyp1f1(a, b, z)?;
    let m2 = if c2.sign == 0.0 {
        ComplexVal::new(0.0, 0.0)
    } else {
        hyp1f1(a - b + 1.0, 2.0 - b, z)?
    };
    // z^{1−b} on the principal branch: arg from atan2 (im = -0.0 gives −π)
    let arg = z.im.atan2(z.re);
    let lnr = z.norm().ln();
    let zp = Complex64::from_polar(((1.0 - b) * lnr).exp(), (1.0 - b) * arg);
    Ok(m1 * c1.value() + m2 * zp * c2.value())
}

/// ψ(a, b; x·e^{−iπ}) for x > 0, log-scaled, cancellation-safe at large
/// parameters (the ₁F₁ pieces escalate to extended precision as needed).
pub fn tricomi_psi_log(a: f64, b: f64, x: f64) -> Result<ScaledComplex, SpecFunError> {
    check_b(b)?;
    if !(x > 0.0) {
        return Err(SpecFunError::Domain(format!("negative-axis psi needs x > 0, got {x}")));
    }
    let c1 = gamma_log(1.0 - b)?.mul(inv_gamma_log(a - b + 1.0)?);
    let c2 = gamma_log(b - 1.0)?.mul(inv_gamma_log(a)?);
    let m1 = hyp1f1_real_log(a, b, -x)?;
    let m2 = if c2.sign == 0.0 { LogVal::zero() } else { hyp1f1_real_log(a - b + 1.0, 2.0 - b, -x)? };
    // u + w·e^{−iπ(1−b)},  e^{−iπ(1−b)} = −cos(πb) − i·sin(πb)
    let u = c1.mul(m1);
    let w = c2.mul(m2).scale_ln((1.0 - b) * x.ln());
    let cb = cos_pi(b);
    let sb = sin_pi(b);
    let s = u.ln_abs.max(w.ln_abs);
    if s == f64::NEG_INFINITY {
        return Ok(ScaledComplex { ln_scale: 0.0, val: Complex64::new(0.0, 0.0) });
    }
    let uu = if u.sign == 0.0 { 0.0 } else { u.sign * (u.ln_abs - s).exp() };
    let ww = if w.sign == 0.0 { 0.0 } else { w.sign * (w.ln_abs - s).exp() };
    Ok(ScaledComplex {
        ln_scale: s,
        val: Complex64::new(uu - cb * ww, -sb * ww),
    })
}

fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

/// ψ(a+1, b; x·e^{−iπ}) / ψ(a, b; x·e^{−iπ}).
///
/// This ratio is the Weyl m-function of the associated-Laguerre Jacobi
/// operator with diagonal 2(n+a)+(−b)… — the building block of the corrected
/// Laguerre spectral density.
pub fn psi_ratio_neg_axis(a: f64, b: f64, x: f64) -> Result<ComplexVal, SpecFunError> {
    let hi = tricomi_psi_log(a + 1.0, b, x)?;
    let lo = tricomi_psi_log(a, b, x)?;
    if lo.val.norm() == 0.0 {
        return Err(SpecFunError::Accuracy {
            msg: format!("psi({a},{b};-{x}) vanished; ratio undefined"),
            bound: f64::INFINITY,
        });
    }
    Ok(hi.val / lo.val * (hi.ln_scale - lo.ln_scale).exp())
}

/// log_gamma re-export used by density prefactors (x > 0 only).
pub(crate) fn _ln_gamma_pos(x: f64) -> Result<f64, SpecFunError> {
    log_gamma(x)
}
