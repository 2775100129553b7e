//! Analytic densities: the orthogonality measures μ_α, μ_{α,γ}, μ_{α,a,b},
//! the high-temperature spectral measures, the mean densities of states
//! obtained by the parameter-divergence, the α → ∞ arcsine limits, and the
//! associated orthogonal-polynomial recurrences.
//!
//! Density conventions (all verified against exact moment references):
//!
//! - Gaussian: μ_α(x) = e^{−x²/2} / (√(2π) |f̂_α(x)|²). |f̂|² is evaluated
//!   through the parabolic-cylinder reduction
//!   |f̂_α|² = αΓ(α) 2^{−α} π [F₁²/Γ((1+α)/2)² + 2x² F₂²/Γ(α/2)²] with
//!   F₁ = ₁F₁(α/2, 1/2; −x²/2), F₂ = ₁F₁((1+α)/2, 3/2; −x²/2) — identical to
//!   the oscillatory integral but stable at large α.
//!   DOS: ∂_α(α μ_α).
//! - Laguerre: `mu_laguerre` is the associated-Laguerre orthogonality weight
//!   x^{α/γ} e^{−x} / (Γ(α+1)Γ(1+α/γ+α) |ψ(α, −α/γ; xe^{−iπ})|²). The
//!   high-temperature *spectral* measure (whose moments are the u^{(l)}) is a
//!   different member of the theory: with A = α/γ, B = α,
//!   μ̃_{A,B}(x) = Im[1/(A − x − A(1+B) ψ(B+2, 2+B−A; xe^{−iπ})/ψ(B+1, 2+B−A; xe^{−iπ}))]/π,
//!   i.e. the Weyl function of the Jacobi operator d₀ = A, d_n = 2n+A+B,
//!   o_n² = (n+B)(n+A−1) — the operator the exact u-moments reconstruct.
//!   DOS: ∂_A(B μ̃) + ∂_B(B μ̃) (both chi chains drift at the same unit rate).
//! - Jacobi: μ_{α,a,b}(x) ∝ x^a(1−x)^b / |U(x) + e^{iπa} V(x)|² (the phase
//!   pairs with the sin(πa) pole of V; with it the measure has mass one and
//!   the exact u-moments). DOS: ∂_α(α μ̃).

use crate::quad::{adaptive_gl, tanh_sinh};
use crate::specfun::{
    hyp1f1_real_log, hyp2f1_log, ln_abs_gamma, log_gamma, sin_pi, tricomi_psi_log, LogVal,
    SpecFunError,
};

const LN_2PI: f64 = 1.837_877_066_409_345_6;

/// Parameter bundle for a density family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DensityFamily {
    Gaussian { alpha: f64 },
    Laguerre { alpha: f64, gamma: f64 },
    Jacobi { alpha: f64, a: f64, b: f64 },
}

/// A tabulated density with its grid.
#[derive(Debug, Clone)]
pub struct DensityCurve {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub label: String,
}

impl DensityCurve {
    /// Trapezoid mass over the grid.
    pub fn mass(&self) -> f64 {
        crate::quad::trapezoid(&self.grid, &self.values)
    }
}

fn check_alpha(alpha: f64) -> Result<(), SpecFunError> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(SpecFunError::Domain(format!("alpha = {alpha} must be positive")));
    }
    Ok(())
}

/// ln |f̂_α(x)|² via the parabolic-cylinder reduction.
fn ln_fhat_sqr(alpha: f64, x: f64) -> Result<f64, SpecFunError> {
    let s = 0.5 * x * x;
    let f1 = hyp1f1_real_log(0.5 * alpha, 0.5, -s)?;
    let f2 = hyp1f1_real_log(0.5 * (1.0 + alpha), 1.5, -s)?;
    let ln_t1 = std::f64::consts::PI.ln() + 2.0 * f1.ln_abs - 2.0 * log_gamma(0.5 * (1.0 + alpha))?;
    let ln_t2 = if x == 0.0 {
        f64::NEG_INFINITY
    } else {
        (2.0 * std::f64::consts::PI).ln() + 2.0 * x.abs().ln() + 2.0 * f2.ln_abs
            - 2.0 * log_gamma(0.5 * alpha)?
    };
    // both terms are squares, hence nonnegative
    let m = ln_t1.max(ln_t2);
    let sum = (ln_t1 - m).exp() + (ln_t2 - m).exp();
    Ok(alpha.ln() + log_gamma(alpha)? - alpha * std::f64::consts::LN_2 + m + sum.ln())
}

/// μ_α(x): the Gaussian-family orthogonality density (even in x).
pub fn mu_gaussian(alpha: f64, x: f64) -> Result<f64, SpecFunError> {
    check_alpha(alpha)?;
    let ln = -0.5 * x * x - 0.5 * LN_2PI - ln_fhat_sqr(alpha, x)?;
    Ok(ln.exp())
}

/// μ_{α,γ}(x): the associated-Laguerre orthogonality density on x ≥ 0.
pub fn mu_laguerre(alpha: f64, gamma: f64, x: f64) -> Result<f64, SpecFunError> {
    check_alpha(alpha)?;
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(SpecFunError::Domain(format!("gamma = {gamma} not in (0,1)")));
    }
    if x < 0.0 {
        return Err(SpecFunError::Domain(format!("mu_laguerre needs x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0); // x^{α/γ} with α/γ > 0
    }
    let c = alpha / gamma;
    let psi = tricomi_psi_log(alpha, -c, x)?;
    let ln = c * x.ln() - x - log_gamma(alpha + 1.0)? - log_gamma(1.0 + c + alpha)?
        - psi.ln_norm_sqr();
    Ok(ln.exp())
}

/// The high-temperature Laguerre *spectral* density μ̃_{A,B}(x) with
/// A = α/γ, B = α (moments u^{(l)}).
pub fn laguerre_spectral(alpha: f64, gamma: f64, x: f64) -> Result<f64, SpecFunError> {
    check_alpha(alpha)?;
    laguerre_spectral_ab(alpha / gamma, alpha, x)
}

/// μ̃_{A,B} in the chi half-dof parameters directly.
///
/// Evaluates Im[ψ_lo / D]/π with ψ_lo = ψ(B+1, b; xe^{−iπ}), b = 2+B−A and
/// D = (A−x)ψ_lo − A(1+B)ψ(B+2, b; xe^{−iπ}): the Weyl function of the
/// spectral-measure operator. The x → 0 cancellation of D is removed
/// analytically through the contiguous relation
/// ₁F₁(a,c;z) − ₁F₁(a+1,c;z) = −(z/c)·₁F₁(a+1,c+1;z), which leaves an
/// explicit factor x in the singular part (the density behaves like
/// x^{A−B−1} at the hard edge when A < B+1).
pub fn laguerre_spectral_ab(big_a: f64, big_b: f64, x: f64) -> Result<f64, SpecFunError> {
    if !(big_a > 0.0 && big_b > 0.0) {
        return Err(SpecFunError::Domain(format!("need A, B > 0, got ({big_a}, {big_b})")));
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    let (a, b) = (big_a, big_b);
    let bb = 2.0 + b - a;
    if (bb - bb.round()).abs() <= 1e-8 {
        return Err(SpecFunError::BranchUndefined(format!(
            "laguerre spectral: 2+B−A = {bb} within tolerance of an integer"
        )));
    }
    // below the floor the f64 assembly of Im(ψ/D) degrades; continue with
    // the exact hard-edge power x^{A−B−1}
    const EDGE_FLOOR: f64 = 1e-15;
    if x < EDGE_FLOOR {
        let base = laguerre_spectral_ab(big_a, big_b, EDGE_FLOOR)?;
        return Ok(base * (x / EDGE_FLOOR).powf(big_a - big_b - 1.0));
    }
    let m1_lo = hyp1f1_real_log(b + 1.0, bb, -x)?;
    let m1_hi = hyp1f1_real_log(b + 2.0, bb, -x)?;
    let s2a = hyp1f1_real_log(a + 1.0, 3.0 - bb, -x)?;
    let s2b = hyp1f1_real_log(a, 2.0 - bb, -x)?;
    let (ln_g1mb, sg_g1mb) = ln_abs_gamma(1.0 - bb)?;
    let (ln_gbm1, sg_gbm1) = ln_abs_gamma(bb - 1.0)?;

    // D_P = Γ(1−b) A/Γ(A+1) [(A−x)M1_lo − (1+B)M1_hi]
    let combo_p = logval_lincomb(a - x, m1_lo, -(1.0 + b), m1_hi);
    let dp = combo_p
        .mul(LogVal::from_parts(sg_g1mb, ln_g1mb))
        .scale_ln(a.ln() - log_gamma(a + 1.0)?);
    // D_Q = Γ(b−1)(1+B)/Γ(B+2) x [A/(2−b)·S2a − S2b]
    let combo_q = logval_lincomb(a / (2.0 - bb), s2a, -1.0, s2b);
    let dq = combo_q
        .mul(LogVal::from_parts(sg_gbm1, ln_gbm1))
        .scale_ln((1.0 + b).ln() + x.ln() - log_gamma(b + 2.0)?);
    // ψ_lo = Γ(1−b)/Γ(A)·M1_lo + z^{1−b}·Γ(b−1)/Γ(B+1)·S2b
    let p_lo = m1_lo
        .mul(LogVal::from_parts(sg_g1mb, ln_g1mb))
        .scale_ln(-log_gamma(a)?);
    let q_lo = s2b
        .mul(LogVal::from_parts(sg_gbm1, ln_gbm1))
        .scale_ln(-log_gamma(b + 1.0)?);
    // z^{1−b} with z = x e^{−iπ}
    let ln_zp = (1.0 - bb) * x.ln();
    let ph = -(1.0 - bb) * std::f64::consts::PI;
    let (cph, sph) = (ph.cos(), ph.sin());

    // assemble ψ_lo and D in a common log scale
    let s = [dp.ln_abs, ln_zp + dq.ln_abs, p_lo.ln_abs, ln_zp + q_lo.ln_abs]
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
    if s == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    let amp = |v: LogVal, extra: f64| -> f64 {
        if v.sign == 0.0 {
            0.0
        } else {
            v.sign * (v.ln_abs + extra - s).exp()
        }
    };
    let d_re = amp(dp, 0.0) + cph * amp(dq, ln_zp);
    let d_im = sph * amp(dq, ln_zp);
    let psi_re = amp(p_lo, 0.0) + cph * amp(q_lo, ln_zp);
    let psi_im = sph * amp(q_lo, ln_zp);
    let den = d_re * d_re + d_im * d_im;
    if den == 0.0 || !den.is_finite() {
        return Err(SpecFunError::Accuracy {
            msg: format!("laguerre spectral denominator degenerate at x = {x}"),
            bound: den,
        });
    }
    // Im(ψ/D) = (ψ_im d_re − ψ_re d_im)/|D|²  (the common e^{s} scale cancels)
    let im = (psi_im * d_re - psi_re * d_im) / den;
    Ok((im / std::f64::consts::PI).max(0.0))
}

/// c₁·v₁ + c₂·v₂ for LogVals, factored over the larger magnitude.
fn logval_lincomb(c1: f64, v1: LogVal, c2: f64, v2: LogVal) -> LogVal {
    let t1 = if v1.sign == 0.0 || c1 == 0.0 {
        None
    } else {
        Some((c1.abs().ln() + v1.ln_abs, c1.signum() * v1.sign))
    };
    let t2 = if v2.sign == 0.0 || c2 == 0.0 {
        None
    } else {
        Some((c2.abs().ln() + v2.ln_abs, c2.signum() * v2.sign))
    };
    match (t1, t2) {
        (None, None) => LogVal::zero(),
        (Some((l, sg)), None) | (None, Some((l, sg))) => LogVal::from_parts(sg, l),
        (Some((l1, s1)), Some((l2, s2))) => {
            let m = l1.max(l2);
            let v = s1 * (l1 - m).exp() + s2 * (l2 - m).exp();
            if v == 0.0 {
                LogVal::zero()
            } else {
                LogVal::from_parts(v.signum(), m + v.abs().ln())
            }
        }
    }
}

/// μ_{α,a,b}(x) on [0, 1] (associated-Jacobi weight, phase-corrected).
pub fn mu_jacobi(alpha: f64, a: f64, b: f64, x: f64) -> Result<f64, SpecFunError> {
    check_alpha(alpha)?;
    if !(a + alpha > 0.0) || !(b + alpha > 0.0) {
        return Err(SpecFunError::Domain(format!(
            "need a+alpha > 0 and b+alpha > 0 (a={a}, b={b}, alpha={alpha})"
        )));
    }
    if (a - a.round()).abs() <= 1e-8 && a.round() >= 0.0 {
        return Err(SpecFunError::Pole(format!("a = {a} within tolerance of an integer >= 0")));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(SpecFunError::Domain(format!("mu_jacobi needs x in [0,1], got {x}")));
    }
    if x == 0.0 {
        return if a > 0.0 {
            Ok(0.0)
        } else {
            Err(SpecFunError::Domain("x = 0 endpoint with a < 0 (divergent limit)".into()))
        };
    }
    if x == 1.0 {
        return if b > 0.0 {
            Ok(0.0)
        } else {
            Err(SpecFunError::Domain("x = 1 endpoint with b <= 0 (one-sided limit)".into()))
        };
    }
    // U = cU·F1, V = cV·(1−x)^{b+1} x^{a+1}·F2
    let (u, v) = jacobi_u_v(alpha, a, b, x)?;
    // |U + e^{iπa} V|² = U² + 2 cos(πa) U V + V²
    let ca = sin_pi(a + 0.5); // cos(πa)
    let m = (2.0 * u.ln_abs).max(2.0 * v.ln_abs);
    if m == f64::NEG_INFINITY {
        return Err(SpecFunError::Accuracy {
            msg: "jacobi denominator vanished".into(),
            bound: f64::INFINITY,
        });
    }
    let uu = if u.sign == 0.0 { 0.0 } else { u.sign * (u.ln_abs - 0.5 * m).exp() };
    let vv = if v.sign == 0.0 { 0.0 } else { v.sign * (v.ln_abs - 0.5 * m).exp() };
    let den = uu * uu + 2.0 * ca * uu * vv + vv * vv;
    if den <= 0.0 {
        return Err(SpecFunError::Accuracy {
            msg: format!("jacobi denominator nonpositive at x = {x}"),
            bound: den,
        });
    }
    let ln_pref = log_gamma(alpha + 1.0)? + log_gamma(alpha + a + b + 2.0)?
        - log_gamma(alpha + a + 1.0)?
        - log_gamma(alpha + b + 1.0)?;
    let ln = ln_pref + a * x.ln() + b * (1.0 - x).ln() - m - den.ln();
    Ok(ln.exp())
}

/// Distance from x = 1 below which the direct series are handed over to the
/// y = 1−x representation.
const JACOBI_EDGE: f64 = 1e-3;

/// The two Kummer-basis functions U(x), V(x) of the Jacobi density, as
/// LogVals (V includes its (1−x)^{b+1} x^{a+1} prefactor).
///
/// For x close to 1 the defining series converge too slowly; there the
/// standard x ↦ 1−x connection applies (for non-integer b), or the exact
/// (1−x)^{b+1}-leading edge limits when b is an integer (where the connection
/// degenerates but the correction terms vanish faster than every tolerance
/// used here: integer b ≥ 0 makes the near-edge mass O((1−x)^{b+1})).
fn jacobi_u_v(alpha: f64, a: f64, b: f64, x: f64) -> Result<(LogVal, LogVal), SpecFunError> {
    let ln_cu = log_gamma(alpha + 1.0)? + log_gamma(a + 1.0)? - log_gamma(1.0 + alpha + a)?;
    let sa = sin_pi(a);
    let ln_cv = std::f64::consts::PI.ln() + alpha.ln() + log_gamma(alpha + a + b + 2.0)?
        - sa.abs().ln()
        - log_gamma(1.0 + alpha + b)?
        - log_gamma(a + 2.0)?;
    let cv = LogVal::from_parts(-sa.signum(), ln_cv);
    if x < 1.0 - JACOBI_EDGE {
        let f1 = hyp2f1_log(alpha, -alpha - a - b - 1.0, -a, x)?;
        let f2 = hyp2f1_log(1.0 - alpha, alpha + a + b + 2.0, 2.0 + a, x)?;
        let u = f1.scale_ln(ln_cu);
        let v = cv
            .mul(f2)
            .scale_ln((b + 1.0) * (1.0 - x).ln() + (a + 1.0) * x.ln());
        return Ok((u, v));
    }
    let y = 1.0 - x;
    let gl = |t: f64| -> Result<LogVal, SpecFunError> {
        if t <= 0.0 && t == t.floor() {
            return Ok(LogVal::zero()); // 1/Γ(pole) = 0 semantics
        }
        let (ln, s) = ln_abs_gamma(t)?;
        Ok(LogVal::from_parts(s, ln))
    };
    let inv = |t: f64| -> Result<LogVal, SpecFunError> {
        let g = gl(t)?;
        if g.sign == 0.0 {
            Ok(LogVal::zero())
        } else {
            Ok(LogVal::from_parts(g.sign, -g.ln_abs))
        }
    };
    if (b - b.round()).abs() > 1e-8 {
        // full connection: F(A,B,C;x) = Γ(C)Γ(C−A−B)/(Γ(C−A)Γ(C−B)) F(A,B,A+B−C+1;y)
        //                + Γ(C)Γ(A+B−C)/(Γ(A)Γ(B)) y^{C−A−B} F(C−A,C−B,C−A−B+1;y)
        let conn = |aa: f64, bb: f64, cc: f64| -> Result<LogVal, SpecFunError> {
            let cab = cc - aa - bb;
            let c1 = gl(cc)?.mul(gl(cab)?).mul(inv(cc - aa)?).mul(inv(cc - bb)?);
            let t1 = if c1.sign == 0.0 {
                LogVal::zero()
            } else {
                c1.mul(hyp2f1_log(aa, bb, 1.0 - cab, y)?)
            };
            let c2 = gl(cc)?.mul(gl(-cab)?).mul(inv(aa)?).mul(inv(bb)?);
            let t2 = if c2.sign == 0.0 {
                LogVal::zero()
            } else {
                c2.mul(hyp2f1_log(cc - aa, cc - bb, cab + 1.0, y)?)
                    .scale_ln(cab * y.ln())
            };
            Ok(logval_lincomb(1.0, t1, 1.0, t2))
        };
        let f1 = conn(alpha, -alpha - a - b - 1.0, -a)?;
        let f2 = conn(1.0 - alpha, alpha + a + b + 2.0, 2.0 + a)?;
        let u = f1.scale_ln(ln_cu);
        let v = cv.mul(f2).scale_ln((b + 1.0) * y.ln() + (a + 1.0) * x.ln());
        Ok((u, v))
    } else {
        // integer b: leading edge limits U(1), V(1) (corrections carry
        // (1−x)^{b+1} with b ≥ 0 and are negligible against every tolerance
        // applied to this region)
        let u1 = gl(-a)?
            .mul(gl(b + 1.0)?)
            .mul(inv(-a - alpha)?)
            .mul(inv(alpha + b + 1.0)?)
            .scale_ln(ln_cu);
        let v1 = cv
            .mul(gl(2.0 + a)?)
            .mul(gl(b + 1.0)?)
            .mul(inv(1.0 - alpha)?)
            .mul(inv(alpha + a + b + 2.0)?)
            .scale_ln((a + 1.0) * x.ln());
        Ok((u1, v1))
    }
}

// ───────────────────────── density of states ─────────────────────────

const NEG_CLAMP: f64 = -1e-6;

fn clamp_dos(v: f64) -> Result<f64, SpecFunError> {
    if v < NEG_CLAMP {
        return Err(SpecFunError::Accuracy {
            msg: format!("density-of-states estimate {v} below the consistency floor"),
            bound: v,
        });
    }
    Ok(v.max(0.0))
}

/// Richardson-refined central difference of g at t (steps h, h/2).
fn richardson<F: Fn(f64) -> Result<f64, SpecFunError>>(
    g: F,
    t: f64,
    h: f64,
) -> Result<f64, SpecFunError> {
    let d = |hh: f64| -> Result<f64, SpecFunError> { Ok((g(t + hh)? - g(t - hh)?) / (2.0 * hh)) };
    let d1 = d(h)?;
    let d2 = d(0.5 * h)?;
    Ok((4.0 * d2 - d1) / 3.0)
}

/// Mean density of states at x: the parameter-divergence of the spectral
/// family (see the module doc for the per-family form).
pub fn dos_density(family: &DensityFamily, x: f64) -> Result<f64, SpecFunError> {
    match *family {
        DensityFamily::Gaussian { alpha } => {
            check_alpha(alpha)?;
            let h = 1e-3 * alpha.max(1.0);
            let v = richardson(|al| Ok(al * mu_gaussian(al, x)?), alpha, h)?;
            clamp_dos(v)
        }
        DensityFamily::Jacobi { alpha, a, b } => {
            check_alpha(alpha)?;
            let h = 1e-3 * alpha.max(1.0);
            let v = richardson(|al| Ok(al * mu_jacobi(al, a, b, x)?), alpha, h)?;
            clamp_dos(v)
        }
        DensityFamily::Laguerre { alpha, gamma } => {
            check_alpha(alpha)?;
            if !(gamma > 0.0 && gamma < 1.0) {
                return Err(SpecFunError::Domain(format!("gamma = {gamma} not in (0,1)")));
            }
            let (big_a, big_b) = (alpha / gamma, alpha);
            if x <= 0.0 {
                return Ok(0.0);
            }
            let ha = 1e-3 * big_a.max(1.0);
            let hb = 1e-3 * big_b.max(1.0);
            let da = richardson(
                |aa| Ok(big_b * laguerre_spectral_ab(aa, big_b, x)?),
                big_a,
                ha,
            )?;
            let db = richardson(
                |bb| Ok(bb * laguerre_spectral_ab(big_a, bb, x)?),
                big_b,
                hb,
            )?;
            clamp_dos(da + db)
        }
    }
}

/// The α → ∞ arcsine limits of the rescaled densities of states.
/// Outside the stated support the value is 0 (not an error).
pub fn arcsine_limit(family: &DensityFamily, x: f64) -> f64 {
    match *family {
        DensityFamily::Gaussian { .. } => {
            let d = 4.0 - x * x;
            if d > 0.0 {
                1.0 / (std::f64::consts::PI * d.sqrt())
            } else {
                0.0
            }
        }
        DensityFamily::Laguerre { gamma, .. } => {
            let c = x - 1.0 - gamma;
            let d = 4.0 * gamma - c * c;
            if d > 0.0 {
                1.0 / (std::f64::consts::PI * d.sqrt())
            } else {
                0.0
            }
        }
        DensityFamily::Jacobi { .. } => {
            let c = 2.0 * x - 1.0;
            let d = 1.0 - c * c;
            if d > 0.0 && x > 0.0 && x < 1.0 {
                2.0 / (std::f64::consts::PI * d.sqrt())
            } else {
                0.0
            }
        }
    }
}

/// Arcsine-limit support interval of the rescaled variable.
pub fn arcsine_support(family: &DensityFamily) -> (f64, f64) {
    match *family {
        DensityFamily::Gaussian { .. } => (-2.0, 2.0),
        DensityFamily::Laguerre { gamma, .. } => {
            let r = gamma.sqrt();
            ((1.0 - r) * (1.0 - r), (1.0 + r) * (1.0 + r))
        }
        DensityFamily::Jacobi { .. } => (0.0, 1.0),
    }
}

/// Default evaluation window of the density of states (covers the support
/// with room for the exponential tails).
pub fn dos_window(family: &DensityFamily) -> (f64, f64) {
    match *family {
        DensityFamily::Gaussian { alpha } => {
            let edge = 2.0 * alpha.sqrt() + 1.0;
            let tail = 9.0 + alpha.sqrt();
            (-(edge + tail), edge + tail)
        }
        DensityFamily::Laguerre { alpha, gamma } => {
            let (a, b) = (alpha / gamma, alpha);
            let edge = (a.sqrt() + b.sqrt()).powi(2);
            (0.0, edge + 14.0 + 6.0 * edge.sqrt())
        }
        DensityFamily::Jacobi { .. } => (0.0, 1.0),
    }
}

/// Tabulate the DOS on `n` interior grid points of its default window.
pub fn dos_curve(family: &DensityFamily, n: usize) -> Result<DensityCurve, SpecFunError> {
    let (lo, hi) = dos_window(family);
    let grid = interior_grid(lo, hi, n);
    let values: Result<Vec<f64>, _> = grid.iter().map(|&x| dos_density(family, x)).collect();
    Ok(DensityCurve { grid, values: values?, label: format!("dos {family:?}") })
}

/// `n` points strictly inside (lo, hi), uniformly spaced.
pub fn interior_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let h = (hi - lo) / (n as f64 + 1.0);
    (1..=n).map(|i| lo + i as f64 * h).collect()
}

// ───────────────────────── orthogonal polynomials ─────────────────────────

/// Associated orthogonal-polynomial family (recurrences as in the associated
/// Hermite / Laguerre (type 2) / Jacobi (type 3) theory).
#[derive(Debug, Clone, Copy)]
pub enum OrthoPolyFamily {
    /// x H_n = H_{n+1} + (n+α) H_{n−1} (monic)
    AssocHermite { alpha: f64 },
    /// −x L_n = (n+1+α)L_{n+1} − (2n+α/γ+α+1)L_n + (n+α+α/γ)L_{n−1}
    AssocLaguerre { alpha: f64, gamma: f64 },
    /// orthonormal: x J_n = √(ξ_n η_{n+1}) J_{n+1} + (ξ_n+η_n) J_n + √(ξ_{n−1} η_n) J_{n−1}
    AssocJacobi { alpha: f64, a: f64, b: f64 },
}

impl OrthoPolyFamily {
    /// The orthogonality measure of the family, as a closure evaluating its
    /// density.
    pub fn weight(&self, x: f64) -> Result<f64, SpecFunError> {
        match *self {
            OrthoPolyFamily::AssocHermite { alpha } => mu_gaussian(alpha, x),
            OrthoPolyFamily::AssocLaguerre { alpha, gamma } => mu_laguerre(alpha, gamma, x),
            OrthoPolyFamily::AssocJacobi { alpha, a, b } => mu_jacobi(alpha, a, b, x),
        }
    }

    /// ∫ P_n² dμ implied by the recurrence (1 for the orthonormal Jacobi).
    pub fn norm_sqr(&self, n: u32) -> f64 {
        match *self {
            OrthoPolyFamily::AssocHermite { alpha } => {
                (1..=n).map(|k| k as f64 + alpha).product()
            }
            OrthoPolyFamily::AssocLaguerre { alpha, gamma } => (1..=n)
                .map(|k| (k as f64 + alpha + alpha / gamma) / (k as f64 + alpha))
                .product(),
            OrthoPolyFamily::AssocJacobi { .. } => 1.0,
        }
    }
}

/// ξ_n of the associated-Jacobi recurrence.
pub fn jacobi_xi(n: u32, alpha: f64, a: f64, b: f64) -> f64 {
    let nf = n as f64;
    if n == 0 {
        (alpha + a + 1.0) / (2.0 * alpha + a + b + 2.0)
    } else {
        (nf + alpha + a + 1.0) / (2.0 * nf + 2.0 * alpha + a + b + 2.0)
            * (nf + alpha + a + b + 1.0)
            / (2.0 * nf + 2.0 * alpha + a + b + 1.0)
    }
}

/// η_n of the associated-Jacobi recurrence (η₀ = 0).
pub fn jacobi_eta(n: u32, alpha: f64, a: f64, b: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let nf = n as f64;
    (nf + alpha) / (2.0 * nf + 2.0 * alpha + a + b + 1.0) * (nf + alpha + b)
        / (2.0 * nf + 2.0 * alpha + a + b)
}

/// Value of the degree-n associated polynomial by forward recurrence.
pub fn orthopoly_eval(fam: &OrthoPolyFamily, n: u32, x: f64) -> f64 {
    let mut pm1 = 0.0f64; // P_{-1}
    let mut p = 1.0f64; // P_0
    if n == 0 {
        return p;
    }
    match *fam {
        OrthoPolyFamily::AssocHermite { alpha } => {
            for k in 0..n {
                let next = x * p - (k as f64 + alpha) * pm1;
                pm1 = p;
                p = next;
            }
        }
        OrthoPolyFamily::AssocLaguerre { alpha, gamma } => {
            let c = alpha / gamma;
            for k in 0..n {
                let kf = k as f64;
                let next =
                    ((2.0 * kf + c + alpha + 1.0 - x) * p - (kf + alpha + c) * pm1) / (kf + 1.0 + alpha);
                pm1 = p;
                p = next;
            }
        }
        OrthoPolyFamily::AssocJacobi { alpha, a, b } => {
            for k in 0..n {
                let dk = jacobi_xi(k, alpha, a, b) + jacobi_eta(k, alpha, a, b);
                let off_up = (jacobi_xi(k, alpha, a, b) * jacobi_eta(k + 1, alpha, a, b)).sqrt();
                let off_dn = if k == 0 {
                    0.0
                } else {
                    (jacobi_xi(k - 1, alpha, a, b) * jacobi_eta(k, alpha, a, b)).sqrt()
                };
                let next = ((x - dk) * p - off_dn * pm1) / off_up;
                pm1 = p;
                p = next;
            }
        }
    }
    p
}

/// ∫ P_n P_m dμ over the family's support by adaptive quadrature.
pub fn orthopoly_inner_product(
    fam: &OrthoPolyFamily,
    n: u32,
    m: u32,
    tol: f64,
) -> Result<f64, SpecFunError> {
    let f = |x: f64| -> f64 {
        let w = fam.weight(x).unwrap_or(0.0);
        if w == 0.0 {
            0.0
        } else {
            orthopoly_eval(fam, n, x) * orthopoly_eval(fam, m, x) * w
        }
    };
    match *fam {
        OrthoPolyFamily::AssocHermite { alpha } => {
            let lim = 2.0 * alpha.sqrt() + 12.0 + 3.0 * (n + m) as f64;
            adaptive_gl(&f, -lim, lim, tol)
        }
        OrthoPolyFamily::AssocLaguerre { alpha, gamma } => {
            let c = alpha / gamma + alpha;
            let hi = 4.0 * c + 60.0 + 12.0 * (n + m) as f64;
            let cut = 1.0f64.min(hi * 0.1);
            Ok(tanh_sinh(&f, 0.0, cut, tol)? + adaptive_gl(&f, cut, hi, tol)?)
        }
        OrthoPolyFamily::AssocJacobi { .. } => tanh_sinh(&f, 0.0, 1.0, tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_gaussian_frozen_and_even() {
        // 22-digit references
        assert!((mu_gaussian(1.0, 0.0).unwrap() - 0.253_974_543_736_963_879_143_1).abs() < 1e-13);
        assert!((mu_gaussian(2.5, 1.3).unwrap() - 0.164_696_928_337_077_359_587_4).abs() < 1e-12);
        for &x in &[0.3, 1.7, 4.2] {
            let p = mu_gaussian(1.3, x).unwrap();
            let m = mu_gaussian(1.3, -x).unwrap();
            assert!((p - m).abs() <= 1e-10 * p.max(1e-300), "x = {x}");
        }
        assert!(mu_gaussian(-1.0, 0.0).is_err());
    }

    #[test]
    fn mu_gaussian_large_alpha_frozen() {
        // stable at the acceptance scale (22-digit references)
        assert!(
            (mu_gaussian(100.0, 15.0).unwrap() - 0.020_936_529_104_278_029_492_93).abs() < 1e-11
        );
        assert!(
            (mu_gaussian(50.0, -3.7).unwrap() - 0.043_215_518_521_095_145_468_39).abs() < 1e-11
        );
    }

    #[test]
    fn mu_gaussian_matches_quadrature_fhat() {
        // |f̂|² via the independent oscillatory quadrature at moderate parameters
        for &(alpha, x) in &[(1.0f64, 0.9f64), (2.5, 2.0), (6.0, 3.1)] {
            let f = crate::specfun::fhat_alpha(alpha, x).unwrap();
            let ln_direct = f.norm_sqr().ln();
            let ln_stable = super::ln_fhat_sqr(alpha, x).unwrap();
            assert!(
                (ln_direct - ln_stable).abs() < 1e-8,
                "alpha={alpha} x={x}: {ln_direct} vs {ln_stable}"
            );
        }
    }

    #[test]
    fn mu_gaussian_normalized() {
        for &alpha in &[1.0, 2.5] {
            let m = tanh_sinh(|x| mu_gaussian(alpha, x).unwrap(), -14.0, 14.0, 1e-10).unwrap();
            assert!((m - 1.0).abs() < 1e-6, "alpha={alpha}: mass={m}");
        }
    }

    #[test]
    fn mu_laguerre_frozen_and_normalized() {
        assert!(
            (mu_laguerre(2.5, 0.4, 3.7).unwrap() - 0.079_106_699_955_999_058_156_03).abs() < 1e-12
        );
        assert!(
            (mu_laguerre(1.0, 0.8, 1.0).unwrap() - 0.230_527_536_570_059_829_940_7).abs() < 1e-12
        );
        let mass = tanh_sinh(|x| mu_laguerre(1.0, 0.8, x).unwrap(), 0.0, 1.0, 1e-10).unwrap()
            + adaptive_gl(&|x| mu_laguerre(1.0, 0.8, x).unwrap(), 1.0, 60.0, 1e-10).unwrap();
        assert!((mass - 1.0).abs() < 1e-6, "mass = {mass}");
        assert_eq!(mu_laguerre(1.0, 0.8, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn mu_laguerre_edge_exponent() {
        // log-log slope on [1e−4, 1e−2] equals α/γ within 2%
        let (alpha, gamma) = (1.3, 0.6);
        let f = |x: f64| mu_laguerre(alpha, gamma, x).unwrap();
        let slope = ((f(1e-2)).ln() - (f(1e-4)).ln()) / (1e-2f64.ln() - 1e-4f64.ln());
        let want = alpha / gamma;
        assert!((slope - want).abs() < 0.02 * want, "slope {slope} vs {want}");
    }

    #[test]
    fn laguerre_spectral_frozen_points() {
        // 22-digit references from the ψ-ratio construction
        assert!(
            (laguerre_spectral_ab(1.25, 1.0, 2.0).unwrap() - 0.124_925_622_831_722_726_638_3)
                .abs()
                < 1e-11
        );
        assert!(
            (laguerre_spectral_ab(1.25, 1.0, 0.5).unwrap() - 0.355_319_532_987_554_922_336_7)
                .abs()
                < 1e-11
        );
        // acceptance-scale parameters stay finite and accurate
        assert!(
            (laguerre_spectral_ab(62.5, 50.0, 200.0).unwrap()
                - 0.001_071_508_128_009_473_888_759)
                .abs()
                < 1e-10
        );
    }

    #[test]
    fn laguerre_spectral_mass_and_mean() {
        let f = |x: f64| laguerre_spectral_ab(1.25, 1.0, x).unwrap();
        let mass = tanh_sinh(&f, 0.0, 1.0, 1e-10).unwrap()
            + adaptive_gl(&f, 1.0, 40.0, 1e-10).unwrap();
        assert!((mass - 1.0).abs() < 1e-6, "mass = {mass}");
        let m1 = tanh_sinh(|x| x * f(x), 0.0, 1.0, 1e-10).unwrap()
            + adaptive_gl(&|x| x * f(x), 1.0, 40.0, 1e-10).unwrap();
        assert!((m1 - 1.25).abs() < 1e-5, "m1 = {m1}");
    }

    #[test]
    fn mu_jacobi_frozen_and_normalized() {
        assert!(
            (mu_jacobi(1.5, 0.3, -0.4, 0.6).unwrap() - 0.774_245_411_346_939_953_036_4).abs()
                < 1e-12
        );
        assert!(
            (mu_jacobi(1.5, 0.3, -0.4, 0.15).unwrap() - 0.884_773_873_030_970_238_159).abs()
                < 1e-12
        );
        // Fig-3-scale parameters (large a, integer b)
        assert!(
            (mu_jacobi(1.0, 25.8, 10.0, 0.7).unwrap() - 3.419_858_837_205_398_023_361).abs()
                < 1e-9
        );
        let mass =
            tanh_sinh(|x| mu_jacobi(1.5, 0.3, -0.4, x).unwrap(), 0.0, 1.0, 1e-10).unwrap();
        assert!((mass - 1.0).abs() < 1e-6, "mass = {mass}");
        // V(0) = 0 for a > −1 means the x→0 behavior is governed by x^a
        assert_eq!(mu_jacobi(1.5, 0.3, -0.4, 0.0).unwrap(), 0.0);
        assert!(mu_jacobi(1.5, 2.0, 0.5, 0.5).is_err()); // integer a rejected
    }

    #[test]
    fn dos_gaussian_moments() {
        // ∫ dos = 1 and ∫x² dos = 1 + 2α at α = 1
        let fam = DensityFamily::Gaussian { alpha: 1.0 };
        let f = |x: f64| dos_density(&fam, x).unwrap();
        let mass = adaptive_gl(&f, -12.0, 12.0, 1e-9).unwrap();
        assert!((mass - 1.0).abs() < 1e-5, "mass = {mass}");
        let m2 = adaptive_gl(&|x| x * x * f(x), -12.0, 12.0, 1e-9).unwrap();
        assert!((m2 - 3.0).abs() < 1e-3, "m2 = {m2}");
    }

    #[test]
    fn dos_laguerre_moments() {
        // v_1 = A + B, v_2 = A²+B²+4AB+A+B at (α, γ) = (1, 0.8)
        let fam = DensityFamily::Laguerre { alpha: 1.0, gamma: 0.8 };
        let f = |x: f64| dos_density(&fam, x).unwrap();
        let mass = tanh_sinh(&f, 0.0, 1.0, 1e-9).unwrap() + adaptive_gl(&f, 1.0, 45.0, 1e-9).unwrap();
        assert!((mass - 1.0).abs() < 2e-5, "mass = {mass}");
        let m1 = tanh_sinh(|x| x * f(x), 0.0, 1.0, 1e-9).unwrap()
            + adaptive_gl(&|x| x * f(x), 1.0, 45.0, 1e-9).unwrap();
        assert!((m1 - 2.25).abs() < 2e-4, "m1 = {m1}");
        let m2 = tanh_sinh(|x| x * x * f(x), 0.0, 1.0, 1e-9).unwrap()
            + adaptive_gl(&|x| x * x * f(x), 1.0, 45.0, 1e-9).unwrap();
        assert!((m2 - 9.8125).abs() < 2e-3, "m2 = {m2}");
    }

    #[test]
    fn dos_jacobi_support_and_mass() {
        let fam = DensityFamily::Jacobi { alpha: 1.5, a: 0.3, b: -0.4 };
        let f = |x: f64| dos_density(&fam, x).unwrap();
        let mass = tanh_sinh(&f, 0.0, 1.0, 1e-9).unwrap();
        assert!((mass - 1.0).abs() < 2e-5, "mass = {mass}");
    }

    #[test]
    fn arcsine_values() {
        let g = DensityFamily::Gaussian { alpha: 1.0 };
        assert!((arcsine_limit(&g, 0.0) - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-15);
        assert_eq!(arcsine_limit(&g, 2.5), 0.0);
        let j = DensityFamily::Jacobi { alpha: 1.0, a: 0.3, b: 0.4 };
        assert!((arcsine_limit(&j, 0.5) - 2.0 / std::f64::consts::PI).abs() < 1e-15);
        let l = DensityFamily::Laguerre { alpha: 1.0, gamma: 0.64 };
        let (lo, hi) = arcsine_support(&l);
        assert!((lo - 0.04).abs() < 1e-12 && (hi - 3.24).abs() < 1e-12);
    }

    #[test]
    fn orthopoly_values() {
        let h = OrthoPolyFamily::AssocHermite { alpha: 0.7 };
        assert_eq!(orthopoly_eval(&h, 0, 1.3), 1.0);
        assert_eq!(orthopoly_eval(&h, 1, 1.3), 1.3);
        // H2 = x² − (1+α)
        assert!((orthopoly_eval(&h, 2, 1.3) - (1.3 * 1.3 - 1.7)).abs() < 1e-14);
        // L1 = (α + α/γ + 1 − x)/(α+1)
        let l = OrthoPolyFamily::AssocLaguerre { alpha: 1.2, gamma: 0.5 };
        let want = (1.2 + 2.4 + 1.0 - 0.9) / 2.2;
        assert!((orthopoly_eval(&l, 1, 0.9) - want).abs() < 1e-14);
    }

    #[test]
    fn orthogonality_small_degrees() {
        let h = OrthoPolyFamily::AssocHermite { alpha: 1.1 };
        let ip = orthopoly_inner_product(&h, 0, 2, 1e-9).unwrap();
        assert!(ip.abs() < 5e-4, "({ip})");
        let n2 = orthopoly_inner_product(&h, 2, 2, 1e-9).unwrap();
        assert!((n2 / h.norm_sqr(2) - 1.0).abs() < 1e-3, "n2 = {n2}");
        let j = OrthoPolyFamily::AssocJacobi { alpha: 1.5, a: 0.3, b: -0.4 };
        let ip = orthopoly_inner_product(&j, 1, 2, 1e-9).unwrap();
        assert!(ip.abs() < 5e-4, "({ip})");
        let n1 = orthopoly_inner_product(&j, 1, 1, 1e-9).unwrap();
        assert!((n1 - 1.0).abs() < 1e-3, "n1 = {n1}");
    }
}
