//! Sparse multivariate polynomials over big rationals, for the symbolic
//! window algebra (entries b_{j+i}, a_{j+i} of a tridiagonal matrix around a
//! bulk site).

use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Variable kinds of the window algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum VarKind {
    /// off-diagonal entry b_{j+i}
    OffDiag,
    /// diagonal entry a_{j+i}
    Diag,
}

/// A window variable: kind and relative site index i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Var {
    pub kind: VarKind,
    pub site: i32,
}

/// Monomial: sorted (variable, power) pairs.
pub type Mono = Vec<(Var, u32)>;

/// Sparse polynomial: monomial → coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct SymPoly {
    pub terms: BTreeMap<Mono, BigRational>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert(Vec::new(), c);
        }
        SymPoly { terms: t }
    }

    pub fn var(v: Var) -> Self {
        let mut t = BTreeMap::new();
        t.insert(vec![(v, 1)], BigRational::from_integer(1.into()));
        SymPoly { terms: t }
    }

    pub fn monomial(vars: &[(Var, u32)], coeff: BigRational) -> Self {
        let mut m: Mono = vars.iter().filter(|(_, p)| *p > 0).cloned().collect();
        m.sort();
        let mut t = BTreeMap::new();
        if !coeff.is_zero() {
            t.insert(m, coeff);
        }
        SymPoly { terms: t }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_inplace(&mut self, other: &SymPoly) {
        for (m, c) in &other.terms {
            let e = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *e += c;
            if e.is_zero() {
                self.terms.remove(m);
            }
        }
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        out.add_inplace(other);
        out
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let e = out.terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *e -= c;
            if e.is_zero() {
                out.terms.remove(m);
            }
        }
        out
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        let mut out: BTreeMap<Mono, BigRational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = merge_monos(m1, m2);
                let e = out.entry(m).or_insert_with(BigRational::zero);
                *e += c1 * c2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        SymPoly { terms: out }
    }

    /// Substitute 1 for every variable (term count / trace diagnostics).
    pub fn eval_all_ones(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |a, c| a + c)
    }
}

fn merge_monos(a: &Mono, b: &Mono) -> Mono {
    let mut map: BTreeMap<Var, u32> = BTreeMap::new();
    for (v, p) in a.iter().chain(b.iter()) {
        *map.entry(*v).or_insert(0) += p;
    }
    map.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn one() -> BigRational {
        BigRational::from_integer(BigInt::from(1))
    }

    #[test]
    fn mul_and_add() {
        let a0 = SymPoly::var(Var { kind: VarKind::Diag, site: 0 });
        let b0 = SymPoly::var(Var { kind: VarKind::OffDiag, site: 0 });
        let p = a0.add(&b0);
        let sq = p.mul(&p);
        // (a+b)² = a² + 2ab + b²
        assert_eq!(sq.terms.len(), 3);
        assert_eq!(sq.eval_all_ones(), BigRational::from_integer(BigInt::from(4)));
        let zero = p.sub(&a0).sub(&b0);
        assert!(zero.is_zero());
        let _ = one();
    }
}
