//! Fixed-point arithmetic on big integers, for hypergeometric series whose
//! partial sums cancel far below the largest term.
//!
//! A value is `mant / 2^frac_bits` with `mant: BigInt`. All values in one
//! summation share the same `frac_bits`, so addition is exact; the only
//! rounding happens in the multiply-divide term update, half a ulp per term.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone)]
pub struct FixedPoint {
    pub mant: BigInt,
    pub frac_bits: u32,
}

impl FixedPoint {
    pub fn zero(frac_bits: u32) -> Self {
        FixedPoint { mant: BigInt::zero(), frac_bits }
    }

    pub fn one(frac_bits: u32) -> Self {
        FixedPoint { mant: BigInt::from(1) << frac_bits, frac_bits }
    }

    /// Exact conversion from f64 (error only if frac_bits cannot hold it,
    /// which cannot happen for frac_bits ≥ 1100).
    pub fn from_f64(x: f64, frac_bits: u32) -> Self {
        if x == 0.0 {
            return Self::zero(frac_bits);
        }
        let (m, e, s) = decompose(x);
        let shift = e + frac_bits as i32;
        let mag = if shift >= 0 {
            BigInt::from(m) << shift as usize
        } else {
            BigInt::from(m) >> (-shift) as usize
        };
        FixedPoint { mant: if s < 0 { -mag } else { mag }, frac_bits }
    }

    pub fn add_assign(&mut self, other: &FixedPoint) {
        debug_assert_eq!(self.frac_bits, other.frac_bits);
        self.mant += &other.mant;
    }

    /// self := self * num / den, rounded to nearest.
    pub fn mul_div(&mut self, num: &BigInt, den: &BigInt) {
        debug_assert!(!den.is_zero());
        self.mant *= num;
        // round-to-nearest division
        let two_mant = &self.mant << 1usize;
        let q = two_mant / den;
        let half = (q.abs() + BigInt::from(1)) >> 1usize;
        self.mant = if q.is_negative() { -half } else { half };
    }

    /// ln|value| and sign; (0-sign for exact zero).
    pub fn ln_abs_sign(&self) -> (f64, f64) {
        if self.mant.is_zero() {
            return (f64::NEG_INFINITY, 0.0);
        }
        let sign = if self.mant.is_negative() { -1.0 } else { 1.0 };
        let mag = self.mant.abs();
        let bits = mag.bits();
        // keep the top ≤ 53 bits exactly in a u64
        let (top, dropped) = if bits > 53 {
            let shifted = mag >> (bits - 53) as usize;
            (shifted.iter_u64_digits().next().unwrap_or(0), bits - 53)
        } else {
            (mag.iter_u64_digits().next().unwrap_or(0), 0)
        };
        let ln = (top as f64).ln()
            + (dropped as f64 - self.frac_bits as f64) * std::f64::consts::LN_2;
        (ln, sign)
    }

    /// Number of significant bits in the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }
}

fn decompose(x: f64) -> (u64, i32, i32) {
    // x = m * 2^e with 52-bit normalized m
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1 } else { 1 };
    let exp = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & 0xf_ffff_ffff_ffff;
    if exp == 0 {
        (frac, -1074, sign)
    } else {
        (frac | (1 << 52), exp - 1075, sign)
    }
}
