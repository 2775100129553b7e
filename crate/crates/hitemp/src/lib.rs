//! Tridiagonal random-matrix laboratory for the high-temperature regime.
//!
//! The classical Gaussian, Laguerre and Jacobi β-ensembles admit tridiagonal
//! matrix models with index-dependent chi / Beta entries. Fixing βN = 2α while
//! N → ∞ freezes those entry laws into index-independent ones; the resulting
//! "α-ensembles" have explicit mean densities of states, and their moments are
//! governed by an exact super-Motzkin path expansion. This crate implements:
//!
//! - seeded samplers for the α- and β-ensembles in tridiagonal form,
//! - symmetric tridiagonal / periodic Jacobi eigensolvers and spectral measures,
//! - the analytic densities (associated Hermite / Laguerre / Jacobi weights,
//!   densities of states, arcsine α → ∞ limits) via confluent and Gauss
//!   hypergeometric functions,
//! - an exact combinatorial moment engine over arbitrary-precision rationals,
//! - the periodic Toda lattice under its Gibbs measure: Flaschka variables,
//!   Lax matrix spectra, symplectic integration, and the analytic mean density
//!   of states of the Lax matrix,
//! - an experiment driver (`lab`) reproducing all of the above as data files,
//!   exposed through the `hitemp` binary and the `examples/` directory.
//!
//! Everything is deterministic given an [`rng::RngState`]: Monte Carlo trials
//! are assigned one stream per trial, so results are reproducible bit-for-bit
//! across runs and across machines.

pub mod densities;
pub mod dist;
pub mod eig;
pub mod ensembles;
pub mod lab;
pub mod motzkin;
pub mod quad;
pub mod rng;
pub mod specfun;
pub mod toda;
pub mod tridiag;
