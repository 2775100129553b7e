//! Base distributions of the tridiagonal models: Gaussian, chi, and Beta.
//!
//! Sampling routes:
//! - Gaussian: Marsaglia polar method.
//! - chi_k (k any positive real): sqrt(2 G) with G ~ Gamma(k/2, 1) via
//!   Marsaglia–Tsang squeeze, with the shape<1 boost G(s) = G(s+1) U^{1/s}.
//! - Beta(a, b): G1/(G1+G2) from two gamma draws, valid for all a, b > 0.
//!
//! Closed even moments are exact:
//!   E[N(0,σ²)^{2m}] = σ^{2m} (2m−1)!!,
//!   E[chi_k^{2n}]   = 2ⁿ (k/2)(k/2+1)⋯(k/2+n−1),
//!   E[Beta(a,b)^n]  = ∏_{i<n} (a+i)/(a+b+i).

use crate::rng::{RngState, Xoshiro256};

/// Specification of a base distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistSpec {
    /// Centered normal with the given variance.
    Gaussian { variance: f64 },
    /// chi distribution with `dof` degrees of freedom (any positive real).
    Chi { dof: f64 },
    /// Beta(a, b) on (0, 1).
    Beta { a: f64, b: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum DistError {
    /// A distribution parameter violated its domain.
    BadParameter(String),
    /// An unsupported moment was requested.
    Unsupported(String),
}

impl std::fmt::Display for DistError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DistError::BadParameter(m) => write!(f, "invalid distribution parameter: {m}"),
            DistError::Unsupported(m) => write!(f, "unsupported request: {m}"),
        }
    }
}

impl std::error::Error for DistError {}

impl DistSpec {
    pub fn validate(&self) -> Result<(), DistError> {
        let ok = match *self {
            DistSpec::Gaussian { variance } => variance > 0.0 && variance.is_finite(),
            DistSpec::Chi { dof } => dof > 0.0 && dof.is_finite(),
            DistSpec::Beta { a, b } => a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(DistError::BadParameter(format!("{self:?}")))
        }
    }
}

/// A sampler owning its generator; draws are pure functions of the
/// originating `RngState`.
pub struct Sampler {
    rng: Xoshiro256,
    spare_normal: Option<f64>,
}

impl Sampler {
    pub fn new(state: RngState) -> Self {
        Sampler { rng: Xoshiro256::from_state(state), spare_normal: None }
    }

    #[inline]
    pub fn uniform(&mut self) -> f64 {
        self.rng.uniform()
    }

    /// Standard normal via the polar method.
    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.rng.uniform() - 1.0;
            let v = 2.0 * self.rng.uniform() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let f = (-2.0 * s.ln() / s).sqrt();
                self.spare_normal = Some(v * f);
                return u * f;
            }
        }
    }

    /// Gamma(shape, scale 1) via Marsaglia–Tsang; shape < 1 boosted through
    /// G(s) = G(s+1) · U^{1/s}.
    pub fn gamma(&mut self, shape: f64) -> f64 {
        debug_assert!(shape > 0.0);
        if shape < 1.0 {
            let g = self.gamma(shape + 1.0);
            let u = self.rng.uniform();
            return g * u.powf(1.0 / shape);
        }
        let d = shape - 1.0 / 3.0;
        let c = 1.0 / (9.0 * d).sqrt();
        loop {
            let x = self.standard_normal();
            let mut v = 1.0 + c * x;
            if v <= 0.0 {
                continue;
            }
            v = v * v * v;
            let u = self.rng.uniform();
            let x2 = x * x;
            if u < 1.0 - 0.0331 * x2 * x2 {
                return d * v;
            }
            if u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
                return d * v;
            }
        }
    }

    /// One draw from `spec`.
    pub fn sample(&mut self, spec: DistSpec) -> Result<f64, DistError> {
        spec.validate()?;
        Ok(match spec {
            DistSpec::Gaussian { variance } => variance.sqrt() * self.standard_normal(),
            DistSpec::Chi { dof } => (2.0 * self.gamma(0.5 * dof)).sqrt(),
            DistSpec::Beta { a, b } => {
                let g1 = self.gamma(a);
                let g2 = self.gamma(b);
                g1 / (g1 + g2)
            }
        })
    }
}

/// One draw from `spec` using `state` as the stream identity.
pub fn sample(spec: DistSpec, state: RngState) -> Result<f64, DistError> {
    Sampler::new(state).sample(spec)
}

/// Exact moment E[X^order].
///
/// Gaussian: odd orders are 0, even 2m give σ^{2m}(2m−1)!!. Chi accepts even
/// orders only (odd chi moments never arise in the moment expansion). Beta
/// accepts any order.
pub fn closed_even_moment(spec: DistSpec, order: u32) -> Result<f64, DistError> {
    spec.validate()?;
    match spec {
        DistSpec::Gaussian { variance } => {
            if order % 2 == 1 {
                return Ok(0.0);
            }
            let m = order / 2;
            let mut acc = 1.0;
            for i in 0..m {
                acc *= variance * (2 * i + 1) as f64;
            }
            Ok(acc)
        }
        DistSpec::Chi { dof } => {
            if order % 2 == 1 {
                return Err(DistError::Unsupported(format!(
                    "odd chi moment of order {order}"
                )));
            }
            let n = order / 2;
            let mut acc = 1.0;
            for i in 0..n {
                acc *= 2.0 * (0.5 * dof + i as f64);
            }
            Ok(acc)
        }
        DistSpec::Beta { a, b } => {
            let mut acc = 1.0;
            for i in 0..order {
                acc *= (a + i as f64) / (a + b + i as f64);
            }
            Ok(acc)
        }
    }
}
