//! The Fourier-type integral
//!   f̂_α(x) = sqrt(α/Γ(α)) ∫₀^∞ t^{α−1} e^{−t²/2} e^{ixt} dt
//! by panelled Gauss–Legendre quadrature.
//!
//! The split point t* is chosen so the dropped tail is below e^{−45} of the
//! integrand peak; panels are short enough to resolve the e^{ixt} oscillation
//! (length ≤ π/(4 max(1,|x|))). For α < 1 the integrable singularity at the
//! origin is removed by the substitution t = u^{1/α} on the first unit of the
//! range.
//!
//! This direct quadrature is accurate in the moderate regime (a good working
//! envelope is α ≲ 30 and |x| ≲ √(2α) + 8, where the Fourier damping stays
//! within f64 reach). The density pipeline evaluates |f̂|² through a
//! parabolic-cylinder reduction instead, which has no such restriction; the
//! two routes are cross-checked in the tests.

use super::{ComplexVal, SpecFunError};

pub(crate) const GL20: [(f64, f64); 20] = [
    (-0.9931285991850949248, 0.01761400713915211831),
    (-0.9639719272779137913, 0.04060142980038694133),
    (-0.9122344282513259059, 0.06267204833410906357),
    (-0.8391169718222188234, 0.08327674157670474872),
    (-0.7463319064601507926, 0.101930119817240435),
    (-0.6360536807265150255, 0.1181945319615184173),
    (-0.510867001950827098, 0.1316886384491766269),
    (-0.3737060887154195607, 0.1420961093183820513),
    (-0.2277858511416450781, 0.1491729864726037468),
    (-0.07652652113349733375, 0.1527533871307258507),
    (0.07652652113349733375, 0.1527533871307258507),
    (0.2277858511416450781, 0.1491729864726037468),
    (0.3737060887154195607, 0.1420961093183820513),
    (0.510867001950827098, 0.1316886384491766269),
    (0.6360536807265150255, 0.1181945319615184173),
    (0.7463319064601507926, 0.101930119817240435),
    (0.8391169718222188234, 0.08327674157670474872),
    (0.9122344282513259059, 0.06267204833410906357),
    (0.9639719272779137913, 0.04060142980038694133),
    (0.9931285991850949248, 0.01761400713915211831),
];

const MAX_PANELS: usize = 40_000;

/// f̂_α(x) by quadrature.
pub fn fhat_alpha(alpha: f64, x: f64) -> Result<ComplexVal, SpecFunError> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(SpecFunError::Domain(format!("fhat_alpha needs alpha > 0, got {alpha}")));
    }
    if !x.is_finite() {
        return Err(SpecFunError::Domain("fhat_alpha: non-finite x".into()));
    }
    // peak of t^{α−1} e^{−t²/2} and the t* with ln(integrand) 45 below it
    let tp = (alpha - 1.0).max(1e-4).sqrt();
    let lnpeak = (alpha - 1.0) * tp.ln() - 0.5 * tp * tp;
    let mut tstar = (tp * tp + 90.0f64).sqrt() + 2.0;
    for _ in 0..60 {
        let h = (alpha - 1.0) * tstar.ln() - 0.5 * tstar * tstar - (lnpeak - 45.0);
        if h < 0.0 {
            break;
        }
        tstar += 0.5;
    }
    tstar = tstar.max(6.0);

    let panel_len = (std::f64::consts::PI / (4.0 * x.abs().max(1.0))).min(1.0);
    let needed = (tstar / panel_len).ceil() as usize;
    if needed > MAX_PANELS {
        return Err(SpecFunError::Accuracy {
            msg: format!("fhat_alpha({alpha},{x}): panel budget exceeded"),
            bound: needed as f64 / MAX_PANELS as f64,
        });
    }

    let f = |t: f64| -> ComplexVal {
        if t <= 0.0 {
            return ComplexVal::new(0.0, 0.0);
        }
        let m = (alpha - 1.0) * t.ln() - 0.5 * t * t;
        ComplexVal::from_polar(m.exp(), x * t)
    };

    let mut total = ComplexVal::new(0.0, 0.0);
    let mut lo = 0.0f64;
    if alpha < 1.0 {
        // substituted first stretch: ∫₀^δ t^{α−1}φ dt = (1/α)∫₀^{δ^α} φ(u^{1/α}) du
        let delta = 1.0f64.min(tstar * 0.5);
        let ua = delta.powf(alpha);
        let g = |u: f64| -> ComplexVal {
            if u <= 0.0 {
                return ComplexVal::new(0.0, 0.0);
            }
            let t = u.powf(1.0 / alpha);
            ComplexVal::from_polar((-0.5 * t * t).exp() / alpha, x * t)
        };
        let sub_panels = 32.max((ua / panel_len.min(ua / 8.0)).ceil() as usize).min(4096);
        let h = ua / sub_panels as f64;
        for k in 0..sub_panels {
            let (a, b) = (k as f64 * h, (k + 1) as f64 * h);
            total += gl20(&g, a, b);
        }
        lo = delta;
    }
    let n = (((tstar - lo) / panel_len).ceil() as usize).max(1);
    let h = (tstar - lo) / n as f64;
    for k in 0..n {
        let (a, b) = (lo + k as f64 * h, lo + (k + 1) as f64 * h);
        total += gl20(&f, a, b);
    }

    let pref = 0.5 * (alpha.ln() - super::log_gamma(alpha)?);
    Ok(total * pref.exp())
}

fn gl20(f: &dyn Fn(f64) -> ComplexVal, a: f64, b: f64) -> ComplexVal {
    let c = 0.5 * (a + b);
    let hw = 0.5 * (b - a);
    let mut acc = ComplexVal::new(0.0, 0.0);
    for (t, w) in GL20 {
        acc += f(c + hw * t) * w;
    }
    acc * hw
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fhat_zero_frequency() {
        // f̂_1(0) = sqrt(π/2)
        let v = fhat_alpha(1.0, 0.0).unwrap();
        assert!((v.re - (std::f64::consts::PI / 2.0).sqrt()).abs() < 1e-10 && v.im.abs() < 1e-12);
        // f̂_2(0) = sqrt(2)
        let v = fhat_alpha(2.0, 0.0).unwrap();
        assert!((v.re - 2f64.sqrt()).abs() < 1e-10, "re = {}", v.re);
    }

    #[test]
    fn fhat_frozen_reference() {
        // 22-digit reference: f̂_1(1.7) = 0.2954638905641259797408 + 0.7167514216153645665139 i
        let v = fhat_alpha(1.0, 1.7).unwrap();
        assert!((v.re - 0.295_463_890_564_125_979_740_8).abs() < 1e-10);
        assert!((v.im - 0.716_751_421_615_364_566_513_9).abs() < 1e-10);
    }

    #[test]
    fn fhat_conjugate_symmetry() {
        for &(alpha, x) in &[(0.6, 2.3), (1.0, 1.1), (3.7, 5.0), (10.0, 4.0)] {
            let p = fhat_alpha(alpha, x).unwrap();
            let m = fhat_alpha(alpha, -x).unwrap();
            assert!((p - m.conj()).norm() < 1e-10 * p.norm().max(1e-10), "{alpha} {x}");
        }
    }

    #[test]
    fn fhat_small_alpha_singularity() {
        // α < 1 exercises the substituted panel; reference from the same
        // integral evaluated with 40-digit arithmetic offline:
        // f̂_0.6(2.3) = 0.4145063456839855886 + 0.5044259448182259918 i
        let v = fhat_alpha(0.6, 2.3).unwrap();
        assert!((v.re - 0.414_506_345_683_985_588_6).abs() < 1e-8, "re {}", v.re);
        assert!((v.im - 0.504_425_944_818_225_991_8).abs() < 1e-8, "im {}", v.im);
    }
}
