//! Scalar special functions behind the analytic densities: log-gamma,
//! digamma, Kummer ₁F₁, Tricomi ψ, Gauss ₂F₁, and the Fourier-type
//! integral f̂_α.
//!
//! All public entry points are plain `f64`/`Complex64`. Internally, series
//! whose terms dwarf their sum are re-summed over a fixed-point big-integer
//! core ([`bigfp`]), so the evaluations stay accurate at the large parameters
//! the density-of-states pipeline needs.

pub mod bigfp;
mod fhat;
mod gamma;
mod hyp;
mod psi;

pub use fhat::fhat_alpha;
pub(crate) use fhat::GL20;
/// 20-point Gauss–Legendre nodes/weights on [−1, 1].
pub const GL20_NODES: [(f64, f64); 20] = fhat::GL20;
pub use gamma::{digamma, ln_abs_gamma, log_gamma, sin_pi};
pub use hyp::{hyp1f1, hyp1f1_real_log, hyp2f1, hyp2f1_log, LogVal};
pub use psi::{tricomi_psi, tricomi_psi_log, psi_ratio_neg_axis, ScaledComplex};

/// Complex value used across the special-function surface.
pub type ComplexVal = num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub enum SpecFunError {
    /// Argument outside the supported domain.
    Domain(String),
    /// Evaluation at (or within tolerance of) a pole.
    Pole(String),
    /// Branch of a multivalued function is not defined for these inputs.
    BranchUndefined(String),
    /// The accuracy contract cannot be met; carries the achieved bound.
    Accuracy { msg: String, bound: f64 },
}

impl std::fmt::Display for SpecFunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpecFunError::Domain(m) => write!(f, "domain error: {m}"),
            SpecFunError::Pole(m) => write!(f, "pole: {m}"),
            SpecFunError::BranchUndefined(m) => write!(f, "branch undefined: {m}"),
            SpecFunError::Accuracy { msg, bound } => {
                write!(f, "accuracy error: {msg} (achieved bound {bound:.3e})")
            }
        }
    }
}

impl std::error::Error for SpecFunError {}
