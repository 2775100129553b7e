//! Hypergeometric series ₁F₁ and ₂F₁.
//!
//! The term recurrences are
//!   ₁F₁: t_{n+1}/t_n = (a+n) z / ((b+n)(n+1)),
//!   ₂F₁: t_{n+1}/t_n = (a+n)(b+n) x / ((c+n)(n+1)).
//!
//! Stopping rule: |t| ≤ 1e−16 |partial sum| for 3 consecutive terms, cap 10⁵
//! terms. A plain f64 pass also records the largest term; when the sum sits
//! more than ~10 bits below it (catastrophic cancellation) the series is
//! re-summed exactly over the fixed-point big-integer core with precision
//! picked from the recorded magnitudes.

use num_bigint::BigInt;
use num_traits::Zero;

use super::bigfp::FixedPoint;
use super::{ComplexVal, SpecFunError};

pub(crate) const MAX_TERMS: usize = 100_000;
const STOP_REL: f64 = 1e-16;
/// bits of headroom demanded from the extended pass
const EXT_REL_BITS: u64 = 96;
/// accept the f64 pass when max-term/|sum| is below 2^10
const F64_CANCEL_BITS: f64 = 10.0;

/// Sign and natural log of the magnitude. `sign = 0` encodes an exact zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogVal {
    pub sign: f64,
    pub ln_abs: f64,
}

impl LogVal {
    pub fn zero() -> Self {
        LogVal { sign: 0.0, ln_abs: f64::NEG_INFINITY }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::zero()
        } else {
            LogVal { sign: x.signum(), ln_abs: x.abs().ln() }
        }
    }

    pub fn from_parts(sign: f64, ln_abs: f64) -> Self {
        if sign == 0.0 {
            Self::zero()
        } else {
            LogVal { sign: sign.signum(), ln_abs }
        }
    }

    pub fn value(self) -> f64 {
        self.sign * self.ln_abs.exp()
    }

    pub fn mul(self, other: LogVal) -> LogVal {
        LogVal::from_parts(self.sign * other.sign, self.ln_abs + other.ln_abs)
    }

    pub fn div(self, other: LogVal) -> LogVal {
        LogVal::from_parts(self.sign * other.sign, self.ln_abs - other.ln_abs)
    }

    pub fn scale_ln(self, dln: f64) -> LogVal {
        LogVal::from_parts(self.sign, self.ln_abs + dln)
    }
}

/// A product of linear factors (p + n) over n = 0, 1, 2, …
#[derive(Debug, Clone)]
pub(crate) struct Series {
    pub num: Vec<f64>,
    pub den: Vec<f64>,
    pub arg: f64,
}

fn is_nonpositive_integer(p: f64, tol: f64) -> Option<i64> {
    let r = p.round();
    if r <= 0.0 && (p - r).abs() <= tol {
        Some(r as i64)
    } else {
        None
    }
}

impl Series {
    /// Index of the last nonzero term when a numerator factor terminates the
    /// series, `None` otherwise.
    fn terminates_at(&self) -> Option<usize> {
        self.num
            .iter()
            .filter_map(|&p| is_nonpositive_integer(p, 0.0).map(|m| (-m) as usize))
            .min()
    }

    fn check_poles(&self) -> Result<(), SpecFunError> {
        let term = self.terminates_at();
        for &p in &self.den {
            if let Some(m) = is_nonpositive_integer(p, 0.0) {
                let pole_at = (-m) as usize;
                if term.map(|t| pole_at > t).unwrap_or(false) {
                    continue; // terminates strictly before the pole
                }
                return Err(SpecFunError::Pole(format!(
                    "series denominator parameter {p} is a non-positive integer"
                )));
            }
        }
        Ok(())
    }

    fn ratio(&self, n: f64) -> f64 {
        let mut r = self.arg;
        for &p in &self.num {
            r *= p + n;
        }
        for &p in &self.den {
            r /= p + n;
        }
        r / (n + 1.0)
    }

    /// f64 pass. Returns (sum, max_abs_term, terms_used, converged).
    fn sum_f64(&self) -> (f64, f64, usize, bool) {
        let cap = self.terminates_at().map(|t| t + 1).unwrap_or(MAX_TERMS);
        let mut term = 1.0f64;
        let mut sum = 1.0f64;
        let mut max_abs = 1.0f64;
        let mut quiet = 0;
        for n in 0..cap {
            term *= self.ratio(n as f64);
            sum += term;
            max_abs = max_abs.max(term.abs());
            if term.abs() <= STOP_REL * sum.abs() {
                quiet += 1;
                if quiet >= 3 {
                    return (sum, max_abs, n + 1, true);
                }
            } else {
                quiet = 0;
            }
            if term == 0.0 {
                return (sum, max_abs, n + 1, true);
            }
        }
        (sum, max_abs, cap, self.terminates_at().is_some())
    }

    /// Extended fixed-point pass with `frac_bits` fractional bits.
    fn sum_ext(&self, frac_bits: u32) -> (FixedPoint, u64, usize) {
        let cap = self.terminates_at().map(|t| t + 1).unwrap_or(MAX_TERMS);
        let dec_num: Vec<(BigInt, i32)> = self.num.iter().map(|&p| split_f64(p)).collect();
        let dec_den: Vec<(BigInt, i32)> = self.den.iter().map(|&p| split_f64(p)).collect();
        let (xm, xe) = split_f64(self.arg);
        let mut term = FixedPoint::one(frac_bits);
        let mut sum = FixedPoint::one(frac_bits);
        let mut max_bits = term.bits();
        let mut quiet = 0usize;
        for n in 0..cap {
            let mut nn = BigInt::from(xm.clone());
            let mut shift: i64 = xe as i64;
            for (m, e) in &dec_num {
                // p + n = (m + (n << -e)) * 2^e for e <= 0, else (m << e) + n
                let f = linear_factor(m, *e, n as u64);
                nn *= f.0;
                shift += f.1 as i64;
            }
            let mut dd = BigInt::from((n + 1) as u64);
            for (m, e) in &dec_den {
                let f = linear_factor(m, *e, n as u64);
                dd *= f.0;
                shift -= f.1 as i64;
            }
            if shift >= 0 {
                nn <<= shift as usize;
            } else {
                dd <<= (-shift) as usize;
            }
            if dd.is_zero() {
                break; // pole was pre-checked; defensive
            }
            term.mul_div(&nn, &dd);
            sum.add_assign(&term);
            max_bits = max_bits.max(term.bits());
            let sum_bits = sum.bits();
            if term.bits() + EXT_REL_BITS + 16 < sum_bits.max(EXT_REL_BITS + 17) {
                quiet += 1;
                if quiet >= 3 {
                    return (sum, max_bits, n + 1);
                }
            } else {
                quiet = 0;
            }
            if term.bits() == 0 {
                return (sum, max_bits, n + 1);
            }
        }
        (sum, max_bits, cap)
    }

    /// Sum with automatic f64 → extended escalation. Result as a LogVal.
    pub fn sum_log(&self) -> Result<LogVal, SpecFunError> {
        self.check_poles()?;
        let (sum, max_abs, _n, converged) = self.sum_f64();
        let cancel_bits = (max_abs.ln() - sum.abs().max(f64::MIN_POSITIVE).ln()) / std::f64::consts::LN_2;
        if converged && sum.is_finite() && max_abs.is_finite() && cancel_bits < F64_CANCEL_BITS {
            return Ok(LogVal::from_f64(sum));
        }
        if !converged && self.terminates_at().is_none() && max_abs.is_finite() {
            // genuine non-convergence (argument too large for the series)
            let bound = (max_abs / sum.abs().max(f64::MIN_POSITIVE)).abs();
            if self.ratio((MAX_TERMS - 1) as f64).abs() >= 1.0 {
                return Err(SpecFunError::Accuracy {
                    msg: "series did not converge within the term cap".into(),
                    bound,
                });
            }
        }
        // escalate: pick precision from the recorded magnitudes
        let max_bits_est = if max_abs.is_finite() {
            (max_abs.ln() / std::f64::consts::LN_2).max(0.0) as u32
        } else {
            // overflowing terms: bound via the largest ratio along the way
            16_384
        };
        let mut frac_bits = 320u32;
        for _attempt in 0..4 {
            let (fp, max_bits, terms) = self.sum_ext(frac_bits + max_bits_est);
            let needed = EXT_REL_BITS + (usize::BITS - terms.leading_zeros()) as u64 + 1;
            if fp.bits() >= needed || fp.bits() == 0 {
                let (ln, sign) = fp.ln_abs_sign();
                if sign == 0.0 {
                    return Ok(LogVal::zero());
                }
                return Ok(LogVal::from_parts(sign, ln));
            }
            // deficit: the sum sits deeper below the largest term than allowed for
            let deficit = needed.saturating_sub(fp.bits()) as u32;
            let _ = max_bits;
            frac_bits = frac_bits + deficit + 128;
        }
        Err(SpecFunError::Accuracy {
            msg: "extended-precision summation failed to stabilize".into(),
            bound: f64::NAN,
        })
    }
}

fn split_f64(x: f64) -> (BigInt, i32) {
    if x == 0.0 {
        return (BigInt::zero(), 0);
    }
    let bits = x.to_bits();
    let neg = bits >> 63 == 1;
    let exp = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & 0xf_ffff_ffff_ffff;
    let (m, e) = if exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1 << 52), exp - 1075)
    };
    // strip trailing zeros to keep the integers small
    let tz = m.trailing_zeros().min(52);
    let m = m >> tz;
    let e = e + tz as i32;
    (if neg { -BigInt::from(m) } else { BigInt::from(m) }, e)
}

/// (p + n) as (integer, exponent): p = m·2^e.
fn linear_factor(m: &BigInt, e: i32, n: u64) -> (BigInt, i32) {
    if e <= 0 {
        (m + (BigInt::from(n) << (-e) as usize), e)
    } else {
        ((m << e as usize) + BigInt::from(n), 0)
    }
}

// ───────────────────────── public operations ─────────────────────────

/// Kummer's confluent hypergeometric ₁F₁(a, b; z) for complex z.
///
/// Direct series; meant for the moderate-|z| regime (the convergence budget is
/// the 10⁵-term cap with the 1e−16 stopping rule). `b` must not be a
/// non-positive integer.
pub fn hyp1f1(a: f64, b: f64, z: ComplexVal) -> Result<ComplexVal, SpecFunError> {
    if let Some(_) = is_nonpositive_integer(b, 0.0) {
        if is_nonpositive_integer(a, 0.0).map(|m| -m < -is_nonpositive_integer(b, 0.0).unwrap()).unwrap_or(true) {
            return Err(SpecFunError::Pole(format!("hyp1f1: b = {b} is a non-positive integer")));
        }
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(SpecFunError::Domain("hyp1f1: non-finite argument".into()));
    }
    let cap = is_nonpositive_integer(a, 0.0).map(|m| (-m) as usize + 1).unwrap_or(MAX_TERMS);
    let mut term = ComplexVal::new(1.0, 0.0);
    let mut sum = ComplexVal::new(1.0, 0.0);
    let mut max_abs = 1.0f64;
    let mut quiet = 0;
    for n in 0..cap {
        let nf = n as f64;
        term *= z * ((a + nf) / ((b + nf) * (nf + 1.0)));
        sum += term;
        max_abs = max_abs.max(term.norm());
        if term.norm() <= STOP_REL * sum.norm() {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
        if n + 1 == cap && cap == MAX_TERMS {
            return Err(SpecFunError::Accuracy {
                msg: format!("hyp1f1({a},{b};{z}) did not converge in {MAX_TERMS} terms"),
                bound: term.norm() / sum.norm().max(f64::MIN_POSITIVE),
            });
        }
    }
    let lost = max_abs / sum.norm().max(f64::MIN_POSITIVE);
    if lost > 1e5 {
        return Err(SpecFunError::Accuracy {
            msg: format!("hyp1f1({a},{b};{z}): cancellation beyond the f64 budget"),
            bound: lost * 1e-16,
        });
    }
    Ok(sum)
}

/// ₁F₁(a, b; x) for real x, as a LogVal, with automatic extended-precision
/// escalation. This is the workhorse behind the density formulas.
///
/// Negative arguments route through the Kummer transformation
/// ₁F₁(a, b; −x) = e^{−x} ₁F₁(b−a, b; x): the transformed series carries no
/// e^{x}-scale cancellation, so it usually stays on the f64 fast path. A
/// terminating original series (a a non-positive integer) is kept as is —
/// it is exact and the transform would break the termination.
pub fn hyp1f1_real_log(a: f64, b: f64, x: f64) -> Result<LogVal, SpecFunError> {
    if x < 0.0 && is_nonpositive_integer(a, 0.0).is_none() {
        let inner = Series { num: vec![b - a], den: vec![b], arg: -x }.sum_log()?;
        return Ok(inner.scale_ln(x));
    }
    Series { num: vec![a], den: vec![b], arg: x }.sum_log()
}

/// Gauss ₂F₁(a, b, c; x) on 0 ≤ x < 1 (f64 contract).
///
/// Applies the Euler transformation ₂F₁ = (1−x)^{c−a−b} ₂F₁(c−a, c−b, c; x)
/// for x > 1/2 when it improves convergence (c−a−b > 0).
pub fn hyp2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64, SpecFunError> {
    let lv = hyp2f1_log(a, b, c, x)?;
    Ok(lv.value())
}

/// ₂F₁ as a LogVal with extended-precision escalation.
pub fn hyp2f1_log(a: f64, b: f64, c: f64, x: f64) -> Result<LogVal, SpecFunError> {
    if is_nonpositive_integer(c, 1e-300).is_some() {
        // series poles unless terminated first; keep the strict contract
        let term_a = is_nonpositive_integer(a, 0.0);
        let term_b = is_nonpositive_integer(b, 0.0);
        let pole = (-is_nonpositive_integer(c, 1e-300).unwrap()) as usize;
        let tmin = term_a
            .into_iter()
            .chain(term_b)
            .map(|m| (-m) as usize)
            .min();
        if tmin.map(|t| t >= pole).unwrap_or(true) {
            return Err(SpecFunError::Pole(format!("hyp2f1: c = {c} is a non-positive integer")));
        }
    }
    if !(0.0..1.0).contains(&x) {
        return Err(SpecFunError::Domain(format!("hyp2f1 requires 0 <= x < 1, got {x}")));
    }
    if x == 0.0 {
        return Ok(LogVal::from_f64(1.0));
    }
    let cab = c - a - b;
    let use_euler = x > 0.5 && cab > 1e-8 && is_nonpositive_integer(a, 0.0).is_none()
        && is_nonpositive_integer(b, 0.0).is_none();
    if use_euler {
        let inner = Series { num: vec![c - a, c - b], den: vec![c], arg: x }.sum_log()?;
        return Ok(inner.scale_ln(cab * (1.0 - x).ln()));
    }
    if x > 0.5 && (cab - cab.round()).abs() < 1e-8 && cab.round() <= 0.0 {
        // near the logarithmic connection case; the direct series still
        // converges for x < 1, but refuse once it cannot finish under the cap
        let est_terms = (STOP_REL.ln() / x.ln()).ceil();
        if !(est_terms.is_finite() && est_terms < MAX_TERMS as f64)
            && is_nonpositive_integer(a, 0.0).is_none()
            && is_nonpositive_integer(b, 0.0).is_none()
        {
            return Err(SpecFunError::BranchUndefined(format!(
                "hyp2f1: c-a-b = {cab} is a non-positive integer and x = {x} is too close to 1"
            )));
        }
    }
    Series { num: vec![a, b], den: vec![c], arg: x }.sum_log()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyp1f1_trivials() {
        // a = b: e^z
        let v = hyp1f1(2.3, 2.3, ComplexVal::new(1.0, 0.0)).unwrap();
        assert!((v.re - 1f64.exp()).abs() < 1e-12 && v.im.abs() < 1e-14);
        // z = 0
        let v = hyp1f1(0.3, 1.7, ComplexVal::new(0.0, 0.0)).unwrap();
        assert!((v.re - 1.0).abs() < 1e-15);
        // 1F1(1,2,z) = (e^z - 1)/z at z = 1
        let v = hyp1f1(1.0, 2.0, ComplexVal::new(1.0, 0.0)).unwrap();
        assert!((v.re - (1f64.exp() - 1.0)).abs() < 1e-12);
        assert!(hyp1f1(1.0, -2.0, ComplexVal::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn hyp1f1_kummer_transformation_grid() {
        // 1F1(a,b;z) = e^z 1F1(b-a, b; -z)
        for &(a, b) in &[(0.5, 1.25), (2.0, 3.7), (1.3, 0.4), (4.4, 6.1)] {
            for &(re, im) in &[(0.7, 0.0), (2.0, 1.0), (-3.0, 0.5), (1.0, -2.0)] {
                let z = ComplexVal::new(re, im);
                let lhs = hyp1f1(a, b, z).unwrap();
                let rhs = z.exp() * hyp1f1(b - a, b, -z).unwrap();
                assert!(
                    (lhs - rhs).norm() <= 1e-9 * lhs.norm().max(1.0),
                    "a={a} b={b} z={z}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn hyp1f1_real_log_matches_f64_when_benign() {
        let lv = hyp1f1_real_log(1.0, 2.0, 1.0).unwrap();
        assert!((lv.value() - (1f64.exp() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn hyp1f1_real_log_extended_cancellation() {
        // 1F1(0.5, 0.5, -s) = e^{-s}: enormous cancellation for s = 200
        let lv = hyp1f1_real_log(0.5, 0.5, -200.0).unwrap();
        assert_eq!(lv.sign, 1.0);
        assert!((lv.ln_abs + 200.0).abs() < 1e-10, "ln = {}", lv.ln_abs);
        // 1F1(1, 2, -s) = (1 - e^{-s})/s
        let lv = hyp1f1_real_log(1.0, 2.0, -500.0).unwrap();
        assert!((lv.value() - 1.0 / 500.0).abs() < 1e-14);
    }

    #[test]
    fn hyp2f1_contract_examples() {
        assert!((hyp2f1(0.3, 0.7, 1.9, 0.0).unwrap() - 1.0).abs() < 1e-15);
        // 2F1(1,1,2,x) = -ln(1-x)/x
        let v = hyp2f1(1.0, 1.0, 2.0, 0.5).unwrap();
        assert!((v - 2.0 * 2f64.ln()).abs() < 1e-12, "{v}");
        // terminating at a = −1: 1 − (3/2)(0.3)
        let v = hyp2f1(-1.0, 3.0, 2.0, 0.3).unwrap();
        assert!((v - 0.55).abs() < 1e-14);
        assert!(hyp2f1(0.5, 0.5, -1.0, 0.3).is_err());
        assert!(hyp2f1(0.5, 0.5, 1.0, 1.0).is_err());
    }

    #[test]
    fn hyp2f1_euler_agrees_with_series() {
        // c-a-b > 0 so Euler kicks in for x > 1/2; compare against the direct
        // series value (still convergent at 0.6)
        let (a, b, c, x) = (0.3, 0.4, 2.9, 0.6);
        let euler = hyp2f1(a, b, c, x).unwrap();
        let direct = Series { num: vec![a, b], den: vec![c], arg: x }.sum_log().unwrap().value();
        assert!((euler - direct).abs() < 1e-12 * direct.abs());
    }

    #[test]
    fn hyp2f1_large_parameters_extended() {
        // 22-digit references from an independent high-precision evaluation;
        // both evaluations cancel catastrophically in plain f64.
        let v = hyp2f1_log(100.0, -136.8, -25.8, 0.3).unwrap();
        assert!(
            (v.ln_abs - 45.893_847_273_493_732_691_01).abs() < 1e-11 && v.sign == 1.0,
            "got sign {} ln {}",
            v.sign,
            v.ln_abs
        );
        let v = hyp2f1_log(100.0, -136.8, -25.8, 0.72).unwrap();
        assert!(
            (v.ln_abs - 54.403_779_794_510_118_862_4).abs() < 1e-11 && v.sign == 1.0,
            "got sign {} ln {}",
            v.sign,
            v.ln_abs
        );
    }
}
