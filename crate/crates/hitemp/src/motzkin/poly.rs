//! Exact polynomial and rational-function arithmetic over big rationals.
//!
//! `Poly` is univariate in the symbol α; `Poly2` is bivariate in the two chi
//! half-dofs (A, B) used by the Laguerre moment algebra; `RatFunc` is a
//! reduced ratio of two `Poly`s (kept for the Jacobi family whose Beta
//! moments have α-dependent denominators).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Exact rational from an f64 (which is itself a dyadic rational).
pub fn q_from_f64(x: f64) -> Q {
    Q::from_float(x).expect("finite f64")
}

pub fn q_to_f64(q: &Q) -> f64 {
    use num_traits::ToPrimitive;
    if let Some(v) = q.to_f64() {
        if v.is_finite() || q.numer().bits() > 1020 || q.denom().bits() > 1020 {
            return v;
        }
    }
    // fallback: align by powers of two (top 53 bits of each part)
    let (nb, db) = (q.numer().bits() as i64, q.denom().bits() as i64);
    let shift_n = (nb - 53).max(0);
    let shift_d = (db - 53).max(0);
    let top_n = (q.numer() >> shift_n as usize)
        .to_f64()
        .unwrap_or(f64::NAN);
    let top_d = (q.denom() >> shift_d as usize)
        .to_f64()
        .unwrap_or(f64::NAN);
    top_n / top_d * 2f64.powi((shift_n - shift_d) as i32)
}

// ───────────────────────── univariate ─────────────────────────

/// Dense univariate polynomial; coeffs[k] multiplies α^k.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    pub coeffs: Vec<Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn constant(c: Q) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    /// c0 + c1·α
    pub fn linear(c0: Q, c1: Q) -> Self {
        let mut p = Poly { coeffs: vec![c0, c1] };
        p.trim();
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Q::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        let mut p = Poly { coeffs: out };
        p.trim();
        p
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        let mut p = Poly { coeffs: out };
        p.trim();
        p
    }

    /// d/dα
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * q_int(k as i64))
                .collect(),
        }
    }

    /// The polynomial u with α·u(α) = ∫₀^α self(y) dy, i.e. coefficient
    /// c_k ↦ c_k/(k+1).
    pub fn mean_integral(&self) -> Poly {
        Poly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / q_int((k + 1) as i64))
                .collect(),
        }
    }

    /// ∂_α(α·self) = self + α·self'
    pub fn divergence(&self) -> Poly {
        let xp = Poly { coeffs: std::iter::once(Q::zero()).chain(self.derivative().coeffs).collect() };
        self.add(&xp)
    }

    pub fn eval_q(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// f64 Horner on f64-rounded coefficients (the coefficients of the
    /// moment polynomials are single-signed, so this is well conditioned).
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0f64;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + q_to_f64(c);
        }
        acc
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(q_to_f64).collect()
    }
}

// ───────────────────────── bivariate ─────────────────────────

/// Sparse bivariate polynomial in (A, B); key (i, j) multiplies A^i B^j.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly2 {
    pub terms: BTreeMap<(u32, u32), Q>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { terms: BTreeMap::new() }
    }

    pub fn constant(c: Q) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert((0, 0), c);
        }
        Poly2 { terms: t }
    }

    pub fn var_a() -> Self {
        let mut t = BTreeMap::new();
        t.insert((1, 0), Q::one());
        Poly2 { terms: t }
    }

    pub fn var_b() -> Self {
        let mut t = BTreeMap::new();
        t.insert((0, 1), Q::one());
        Poly2 { terms: t }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_inplace(&mut self, other: &Poly2) {
        for (k, c) in &other.terms {
            let e = self.terms.entry(*k).or_insert_with(Q::zero);
            *e += c;
            if e.is_zero() {
                self.terms.remove(k);
            }
        }
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        out.add_inplace(other);
        out
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, s: &Q) -> Poly2 {
        if s.is_zero() {
            return Poly2::zero();
        }
        Poly2 { terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect() }
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = BTreeMap::new();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &other.terms {
                let k = (i1 + i2, j1 + j2);
                let e = out.entry(k).or_insert_with(Q::zero);
                *e += c1 * c2;
            }
        }
        out.retain(|_, c: &mut Q| !c.is_zero());
        Poly2 { terms: out }
    }

    pub fn d_da(&self) -> Poly2 {
        let mut out = BTreeMap::new();
        for ((i, j), c) in &self.terms {
            if *i > 0 {
                out.insert((i - 1, *j), c * q_int(*i as i64));
            }
        }
        Poly2 { terms: out }
    }

    pub fn d_db(&self) -> Poly2 {
        let mut out = BTreeMap::new();
        for ((i, j), c) in &self.terms {
            if *j > 0 {
                out.insert((*i, j - 1), c * q_int(*j as i64));
            }
        }
        Poly2 { terms: out }
    }

    /// Substitute A = ca·α, B = cb·α (exact rationals) → univariate in α.
    pub fn substitute_linear(&self, ca: &Q, cb: &Q) -> Poly {
        let mut out = Poly::zero();
        for ((i, j), c) in &self.terms {
            let deg = (i + j) as usize;
            let mut coeff = c.clone();
            for _ in 0..*i {
                coeff *= ca;
            }
            for _ in 0..*j {
                coeff *= cb;
            }
            let mut mono = vec![Q::zero(); deg + 1];
            mono[deg] = coeff;
            out = out.add(&Poly { coeffs: mono });
        }
        out
    }

    pub fn eval_q(&self, a: &Q, b: &Q) -> Q {
        let mut acc = Q::zero();
        for ((i, j), c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..*i {
                t *= a;
            }
            for _ in 0..*j {
                t *= b;
            }
            acc += t;
        }
        acc
    }

    /// I(A, B) = ∫₀^B self(A − s, B − s) ds, exact.
    ///
    /// Expands self(A−s, B−s) in powers of s and integrates termwise.
    pub fn diagonal_integral(&self) -> Poly2 {
        // powers of (A − s) as polynomials in s with Poly2 coefficients are
        // assembled by binomial expansion; represent the s-expansion as a
        // Vec<Poly2> indexed by the s-power.
        let max_deg: u32 = self
            .terms
            .keys()
            .map(|(i, j)| i + j)
            .max()
            .unwrap_or(0);
        let cap = max_deg as usize + 1;
        let mut s_coeffs: Vec<Poly2> = vec![Poly2::zero(); cap];
        for ((i, j), c) in &self.terms {
            // (A−s)^i (B−s)^j = Σ_{p,q} C(i,p)C(j,q) A^{i−p} B^{j−q} (−s)^{p+q}
            for p in 0..=*i {
                for q in 0..=*j {
                    let sign = if (p + q) % 2 == 0 { Q::one() } else { -Q::one() };
                    let coeff = c * q_int(binom(*i as u64, p as u64) as i64)
                        * q_int(binom(*j as u64, q as u64) as i64)
                        * sign;
                    let mut mono = BTreeMap::new();
                    mono.insert((i - p, j - q), coeff);
                    s_coeffs[(p + q) as usize].add_inplace(&Poly2 { terms: mono });
                }
            }
        }
        // ∫₀^B s^k ds = B^{k+1}/(k+1)
        let mut out = Poly2::zero();
        for (k, pk) in s_coeffs.iter().enumerate() {
            let mut bpow = BTreeMap::new();
            bpow.insert((0u32, (k + 1) as u32), Q::one() / q_int((k + 1) as i64));
            out.add_inplace(&pk.mul(&Poly2 { terms: bpow }));
        }
        out
    }
}

pub fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Rising factorial (x)(x+1)⋯(x+n−1) of a linear polynomial `x`.
pub fn rising_poly(x: &Poly, n: u32) -> Poly {
    let mut acc = Poly::constant(Q::one());
    for i in 0..n {
        acc = acc.mul(&x.add(&Poly::constant(q_int(i as i64))));
    }
    acc
}

/// Rising factorial of a bivariate linear polynomial.
pub fn rising_poly2(x: &Poly2, n: u32) -> Poly2 {
    let mut acc = Poly2::constant(Q::one());
    for i in 0..n {
        acc = acc.mul(&x.add(&Poly2::constant(q_int(i as i64))));
    }
    acc
}

// ───────────────────────── rational functions ─────────────────────────

/// Reduced ratio num/den of univariate polynomials (monic denominator).
#[derive(Debug, Clone, PartialEq)]
pub struct RatFunc {
    pub num: Poly,
    pub den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::constant(Q::one()) }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::constant(Q::one()) }
    }

    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let mut rf = RatFunc { num, den };
        rf.reduce();
        rf
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::constant(Q::one());
            return;
        }
        let g = poly_gcd(&self.num, &self.den);
        if g.degree() > 0 {
            self.num = poly_div_exact(&self.num, &g);
            self.den = poly_div_exact(&self.den, &g);
        }
        // normalize: monic denominator
        let lead = self.den.coeffs.last().unwrap().clone();
        if !lead.is_one() {
            let inv = Q::one() / lead;
            self.den = self.den.scale(&inv);
            self.num = self.num.scale(&inv);
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, s: &Q) -> RatFunc {
        RatFunc { num: self.num.scale(s), den: self.den.clone() }
    }

    pub fn eval_q(&self, x: &Q) -> Q {
        self.num.eval_q(x) / self.den.eval_q(x)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

fn poly_rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.degree();
    let lead_b = b.coeffs.last().unwrap().clone();
    while !r.is_zero() && r.degree() >= db {
        let dr = r.degree();
        let f = r.coeffs.last().unwrap() / &lead_b;
        let shift = dr - db;
        for i in 0..=db {
            let t = &b.coeffs[i] * &f;
            r.coeffs[i + shift] -= t;
        }
        r.trim();
    }
    r
}

fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    // monic normalization
    if !x.is_zero() {
        let lead = x.coeffs.last().unwrap().clone();
        x = x.scale(&(Q::one() / lead));
    }
    x
}

fn poly_div_exact(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.degree();
    let lead_b = b.coeffs.last().unwrap().clone();
    let mut q = vec![Q::zero(); a.degree().saturating_sub(db) + 1];
    while !r.is_zero() && r.degree() >= db {
        let dr = r.degree();
        let f = r.coeffs.last().unwrap() / &lead_b;
        let shift = dr - db;
        q[shift] = f.clone();
        for i in 0..=db {
            let t = &b.coeffs[i] * &f;
            r.coeffs[i + shift] -= t;
        }
        r.trim();
    }
    debug_assert!(r.is_zero(), "non-exact polynomial division");
    let mut p = Poly { coeffs: q };
    p.trim();
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Poly {
        let mut poly = Poly { coeffs: coeffs.iter().map(|&c| q_int(c)).collect() };
        poly.trim();
        poly
    }

    #[test]
    fn poly_basics() {
        let a = p(&[1, 2]); // 1 + 2α
        let b = p(&[0, 0, 3]); // 3α²
        assert_eq!(a.mul(&b), p(&[0, 0, 3, 6]));
        assert_eq!(a.derivative(), p(&[2]));
        assert_eq!(b.divergence(), p(&[0, 0, 9])); // ∂(α·3α²) = 9α²
        assert_eq!(a.eval_f64(2.0), 5.0);
    }

    #[test]
    fn mean_integral_inverts_divergence() {
        // ∂_α(α·u) = w with u = mean_integral(w)
        let w = p(&[1, 2, 0, 5]);
        assert_eq!(w.mean_integral().divergence(), w);
    }

    #[test]
    fn ratfunc_reduction() {
        // (α² − 1)/(α − 1) = α + 1
        let r = RatFunc::new(p(&[-1, 0, 1]), p(&[-1, 1]));
        assert_eq!(r.num, p(&[1, 1]));
        assert_eq!(r.den, p(&[1]));
        let s = RatFunc::new(p(&[1]), p(&[1, 1])).add(&RatFunc::new(p(&[1]), p(&[2, 1])));
        // 1/(1+α) + 1/(2+α) = (3+2α)/((1+α)(2+α))
        assert!((s.eval_f64(1.0) - (0.5 + 1.0 / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn diagonal_integral_linear() {
        // G = A + B: I = ∫₀^B (A−s+B−s) ds = AB + B² − B² = AB… compute:
        // ∫₀^B (A+B−2s) ds = (A+B)B − B² = AB
        let g = Poly2::var_a().add(&Poly2::var_b());
        let i = g.diagonal_integral();
        let want = Poly2::var_a().mul(&Poly2::var_b());
        assert_eq!(i, want);
        // divergence identity: (∂_A + ∂_B) I = G
        let div = i.d_da().add(&i.d_db());
        assert_eq!(div, g);
    }

    #[test]
    fn rising_factorials() {
        let alpha = Poly::linear(Q::zero(), Q::one());
        let r = rising_poly(&alpha, 3); // α(α+1)(α+2) = 2α + 3α² + α³
        assert_eq!(r, p(&[0, 2, 3, 1]));
        assert_eq!(binom(6, 2), 15);
        assert_eq!(binom(4, 7), 0);
    }
}
