//! Tridiagonal samplers for the α-ensembles (index-independent entry laws),
//! the classical β-ensembles (index-dependent laws), and the approximate
//! Toda Lax matrix.
//!
//! Gaussian: H = (1/√2)·T with diag ~ N(0,2) and off ~ chi.
//! Laguerre: L = B·Bᵀ with B = (1/√2)·bidiag(x; y); in tridiagonal form
//!   diag_i = (x_i² + y_{i−1}²)/2 (y₀ = 0), off_i = x_i·y_i/2 — assembled
//!   directly, never materializing B.
//! Jacobi: J = D·Dᵀ with D = bidiag(s; t), s_n = sqrt(p_n(1−q_{n−1})),
//!   t_n = sqrt(q_n(1−p_n)), q₀ = 0; diag_i = s_i² + t_{i−1}², off_i = s_i·t_i.
//!
//! The β variants use the same assembly with the index-dependent degrees of
//! freedom; with βN = 2α they approach the α-ensembles' limit laws.

use crate::dist::{DistError, DistSpec, Sampler};
use crate::rng::RngState;
use crate::tridiag::{PeriodicJacobi, SymTridiag};

pub const A_INTEGER_TOL: f64 = 1e-8;

/// Ensemble family selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Family {
    GaussianAlpha,
    LaguerreAlpha,
    JacobiAlpha,
    GaussianBeta,
    LaguerreBeta,
    JacobiBeta,
}

impl Family {
    pub fn is_alpha(self) -> bool {
        matches!(self, Family::GaussianAlpha | Family::LaguerreAlpha | Family::JacobiAlpha)
    }
}

/// Parameters of one ensemble run.
#[derive(Debug, Clone, Copy, serde::Serialize, serde::Deserialize)]
pub struct EnsembleParams {
    pub family: Family,
    pub n: usize,
    pub alpha: f64,
    /// Laguerre aspect ratio γ ∈ (0,1); M = round(N/γ) columns.
    pub gamma: f64,
    /// Jacobi exponents.
    pub a: f64,
    pub b: f64,
    /// β for the β-families (βN = 2α links the two for comparison runs).
    pub beta: f64,
}

impl EnsembleParams {
    pub fn alpha_family(family: Family, n: usize, alpha: f64, gamma: f64, a: f64, b: f64) -> Self {
        EnsembleParams { family, n, alpha, gamma, a, b, beta: 0.0 }
    }

    /// β-family parameters with the duality linkage β = 2α/N.
    pub fn beta_from_alpha(family: Family, n: usize, alpha: f64, gamma: f64, a: f64, b: f64) -> Self {
        EnsembleParams { family, n, alpha, gamma, a, b, beta: 2.0 * alpha / n as f64 }
    }

    /// Laguerre column count M = round(N/γ).
    pub fn m_cols(&self) -> usize {
        (self.n as f64 / self.gamma).round() as usize
    }

    pub fn validate(&self) -> Result<(), DistError> {
        let bad = |m: String| Err(DistError::BadParameter(m));
        if self.n == 0 {
            return bad("N must be positive".into());
        }
        if !(self.alpha >= 0.0) && self.family.is_alpha() {
            return bad(format!("alpha = {} out of range", self.alpha));
        }
        match self.family {
            Family::LaguerreAlpha | Family::LaguerreBeta => {
                if !(self.gamma > 0.0 && self.gamma < 1.0) {
                    return bad(format!("gamma = {} not in (0,1)", self.gamma));
                }
            }
            Family::JacobiAlpha | Family::JacobiBeta => {
                if !(self.a + self.alpha > 0.0) || !(self.b + self.alpha > 0.0) {
                    return bad(format!("need a+alpha > 0 and b+alpha > 0, got a={} b={} alpha={}", self.a, self.b, self.alpha));
                }
                if (self.a - self.a.round()).abs() <= A_INTEGER_TOL && self.a.round() >= 1.0 {
                    return bad(format!("a = {} within tolerance of a positive integer", self.a));
                }
            }
            _ => {}
        }
        if !self.family.is_alpha() && !(self.beta > 0.0) {
            return bad(format!("beta = {} must be positive", self.beta));
        }
        Ok(())
    }
}

/// Gaussian α-ensemble sample: (1/√2)·T with diag N(0,2), off chi_{2α}.
pub fn build_gaussian_alpha(p: &EnsembleParams, rng: RngState) -> Result<SymTridiag, DistError> {
    p.validate()?;
    let mut s = Sampler::new(rng);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let diag: Vec<f64> = (0..p.n)
        .map(|_| r * 2f64.sqrt() * s.standard_normal())
        .collect();
    let off: Result<Vec<f64>, _> = (0..p.n.saturating_sub(1))
        .map(|_| s.sample(DistSpec::Chi { dof: 2.0 * p.alpha }).map(|v| r * v))
        .collect();
    Ok(SymTridiag { diag, off: off? })
}

/// Laguerre α-ensemble sample in tridiagonal form (L = BBᵀ assembled directly).
pub fn build_laguerre_alpha(p: &EnsembleParams, rng: RngState) -> Result<SymTridiag, DistError> {
    p.validate()?;
    let mut s = Sampler::new(rng);
    let xs: Result<Vec<f64>, _> = (0..p.n)
        .map(|_| s.sample(DistSpec::Chi { dof: 2.0 * p.alpha / p.gamma }))
        .collect();
    let ys: Result<Vec<f64>, _> = (0..p.n.saturating_sub(1))
        .map(|_| s.sample(DistSpec::Chi { dof: 2.0 * p.alpha }))
        .collect();
    Ok(assemble_bidiag_product(&xs?, &ys?, 0.5))
}

/// Jacobi α-ensemble sample in tridiagonal form (J = DDᵀ assembled directly).
pub fn build_jacobi_alpha(p: &EnsembleParams, rng: RngState) -> Result<SymTridiag, DistError> {
    p.validate()?;
    let mut s = Sampler::new(rng);
    let (alpha, a, b) = (p.alpha, p.a, p.b);
    let ps: Result<Vec<f64>, _> = (0..p.n)
        .map(|_| s.sample(DistSpec::Beta { a: alpha + a + 1.0, b: alpha + b + 1.0 }))
        .collect();
    let qs: Result<Vec<f64>, _> = (0..p.n.saturating_sub(1))
        .map(|_| s.sample(DistSpec::Beta { a: alpha, b: alpha + a + b + 2.0 }))
        .collect();
    Ok(assemble_jacobi(&ps?, &qs?))
}

/// One sample of the selected β-ensemble (Table-2 index-dependent laws).
pub fn build_beta_family(p: &EnsembleParams, rng: RngState) -> Result<SymTridiag, DistError> {
    p.validate()?;
    let mut s = Sampler::new(rng);
    let n = p.n;
    let beta = p.beta;
    match p.family {
        Family::GaussianBeta => {
            let r = std::f64::consts::FRAC_1_SQRT_2;
            let diag: Vec<f64> = (0..n).map(|_| r * 2f64.sqrt() * s.standard_normal()).collect();
            let off: Result<Vec<f64>, _> = (1..n)
                .map(|k| s.sample(DistSpec::Chi { dof: beta * (n - k) as f64 }).map(|v| r * v))
                .collect();
            Ok(SymTridiag { diag, off: off? })
        }
        Family::LaguerreBeta => {
            let m = p.m_cols();
            if m < n {
                return Err(DistError::BadParameter(format!("M = {m} < N = {n}")));
            }
            let xs: Result<Vec<f64>, _> = (1..=n)
                .map(|k| s.sample(DistSpec::Chi { dof: beta * (m - k + 1) as f64 }))
                .collect();
            let ys: Result<Vec<f64>, _> = (1..n)
                .map(|k| s.sample(DistSpec::Chi { dof: beta * (n - k) as f64 }))
                .collect();
            Ok(assemble_bidiag_product(&xs?, &ys?, 0.5))
        }
        Family::JacobiBeta => {
            let (a, b) = (p.a, p.b);
            let ps: Result<Vec<f64>, _> = (1..=n)
                .map(|k| {
                    let c = 0.5 * beta * (n - k) as f64;
                    s.sample(DistSpec::Beta { a: c + a + 1.0, b: c + b + 1.0 })
                })
                .collect();
            let qs: Result<Vec<f64>, _> = (1..n)
                .map(|k| {
                    let c = 0.5 * beta * (n - k) as f64;
                    s.sample(DistSpec::Beta { a: c, b: c + a + b + 2.0 })
                })
                .collect();
            Ok(assemble_jacobi(&ps?, &qs?))
        }
        _ => Err(DistError::BadParameter(format!(
            "build_beta_family got an alpha family: {:?}",
            p.family
        ))),
    }
}

/// Sample any family.
pub fn build(p: &EnsembleParams, rng: RngState) -> Result<SymTridiag, DistError> {
    match p.family {
        Family::GaussianAlpha => build_gaussian_alpha(p, rng),
        Family::LaguerreAlpha => build_laguerre_alpha(p, rng),
        Family::JacobiAlpha => build_jacobi_alpha(p, rng),
        _ => build_beta_family(p, rng),
    }
}

/// Approximate Toda Lax matrix: periodic Jacobi with diag N(0,2)/√(2β) and
/// off/corner chi_{2(β+θ)}/√(2β).
pub fn build_toda_lax(
    n: usize,
    beta: f64,
    theta: f64,
    rng: RngState,
) -> Result<PeriodicJacobi, DistError> {
    if n < 3 || !(beta > 0.0) || !(theta > 0.0) {
        return Err(DistError::BadParameter(format!(
            "build_toda_lax needs N >= 3, beta > 0, theta > 0 (N={n}, beta={beta}, theta={theta})"
        )));
    }
    let mut s = Sampler::new(rng);
    let r = 1.0 / (2.0 * beta).sqrt();
    let diag: Vec<f64> = (0..n).map(|_| r * 2f64.sqrt() * s.standard_normal()).collect();
    let bs: Result<Vec<f64>, _> = (0..n)
        .map(|_| s.sample(DistSpec::Chi { dof: 2.0 * (beta + theta) }).map(|v| r * v))
        .collect();
    let mut bs = bs?;
    let corner = bs.pop().unwrap();
    PeriodicJacobi::new(diag, bs, corner)
        .map_err(|e| DistError::BadParameter(format!("lax assembly: {e}")))
}

/// diag_i = (x_i² + y_{i−1}²)·scale, off_i = x_i·y_i·scale (BBᵀ of the
/// lower bidiagonal with diagonal x and subdiagonal y; scale absorbs the
/// (1/√2)² of Table 1/2).
fn assemble_bidiag_product(xs: &[f64], ys: &[f64], scale: f64) -> SymTridiag {
    let n = xs.len();
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n {
        let y2 = if i > 0 { ys[i - 1] * ys[i - 1] } else { 0.0 };
        diag.push((xs[i] * xs[i] + y2) * scale);
        if i + 1 < n {
            off.push(xs[i] * ys[i] * scale);
        }
    }
    SymTridiag { diag, off }
}

/// diag_i = s_i² + t_{i−1}², off_i = s_i·t_i with s_i = sqrt(p_i(1−q_{i−1})),
/// t_i = sqrt(q_i(1−p_i)), q₀ = 0.
fn assemble_jacobi(ps: &[f64], qs: &[f64]) -> SymTridiag {
    let n = ps.len();
    let mut svals = Vec::with_capacity(n);
    let mut tvals = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n {
        let qprev = if i > 0 { qs[i - 1] } else { 0.0 };
        svals.push((ps[i] * (1.0 - qprev)).sqrt());
        if i + 1 < n {
            tvals.push((qs[i] * (1.0 - ps[i])).sqrt());
        }
    }
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n {
        let t2 = if i > 0 { tvals[i - 1] * tvals[i - 1] } else { 0.0 };
        diag.push(svals[i] * svals[i] + t2);
        if i + 1 < n {
            off.push(svals[i] * tvals[i]);
        }
    }
    SymTridiag { diag, off }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eig::eig_tridiag;

    fn mean_of<F: FnMut(u64) -> f64>(trials: u64, mut f: F) -> (f64, f64) {
        let (mut sum, mut sumsq) = (0.0, 0.0);
        for t in 0..trials {
            let v = f(t);
            sum += v;
            sumsq += v * v;
        }
        let mean = sum / trials as f64;
        let var = (sumsq / trials as f64 - mean * mean).max(0.0);
        (mean, (var / trials as f64).sqrt())
    }

    #[test]
    fn gaussian_alpha_moments() {
        let p = EnsembleParams::alpha_family(Family::GaussianAlpha, 2, 1.0, 0.0, 0.0, 0.0);
        // chi positivity of the off entry
        let m = build_gaussian_alpha(&p, RngState::new(1, 0)).unwrap();
        assert!(m.off[0] > 0.0);
        // E[diag] = 0 within 4 SE; E[off²] = (1/2)E[chi_2²] = 1 within 4 SE
        let (mean_d, se_d) = mean_of(100_000, |t| {
            build_gaussian_alpha(&p, RngState::new(2, t)).unwrap().diag[0]
        });
        assert!(mean_d.abs() < 4.0 * se_d, "{mean_d} {se_d}");
        let (mean_o2, se_o2) = mean_of(100_000, |t| {
            let m = build_gaussian_alpha(&p, RngState::new(3, t)).unwrap();
            m.off[0] * m.off[0]
        });
        assert!((mean_o2 - 1.0).abs() < 4.0 * se_o2, "{mean_o2} {se_o2}");
    }

    #[test]
    fn laguerre_alpha_moments_and_psd() {
        let p = EnsembleParams::alpha_family(Family::LaguerreAlpha, 6, 1.2, 0.7, 0.0, 0.0);
        // diag positive; spectrum PSD up to tolerance
        let m = build_laguerre_alpha(&p, RngState::new(4, 0)).unwrap();
        assert!(m.diag.iter().all(|&d| d > 0.0));
        let s = eig_tridiag(&m).unwrap();
        assert!(s[0] > -1e-10);
        // E[diag_1] = alpha/gamma; E[diag_i>=2] = alpha/gamma + alpha
        let (m1, se1) = mean_of(100_000, |t| {
            build_laguerre_alpha(&p, RngState::new(5, t)).unwrap().diag[0]
        });
        let want1 = p.alpha / p.gamma;
        assert!((m1 - want1).abs() < 4.0 * se1, "{m1} vs {want1}");
        let (m2, se2) = mean_of(100_000, |t| {
            build_laguerre_alpha(&p, RngState::new(6, t)).unwrap().diag[3]
        });
        let want2 = p.alpha / p.gamma + p.alpha;
        assert!((m2 - want2).abs() < 4.0 * se2, "{m2} vs {want2}");
    }

    #[test]
    fn jacobi_alpha_ranges_and_moments() {
        let p = EnsembleParams::alpha_family(Family::JacobiAlpha, 5, 1.5, 0.0, 0.3, -0.4);
        let m = build_jacobi_alpha(&p, RngState::new(7, 0)).unwrap();
        assert!(m.diag.iter().all(|&d| d > 0.0 && d < 2.0));
        assert!(m.off.iter().all(|&o| o > 0.0 && o < 1.0));
        // spectrum within [0,1]
        let s = eig_tridiag(&m).unwrap();
        assert!(s[0] > -1e-10 && s[s.len() - 1] < 1.0 + 1e-10);
        // E[s1²] = E[p1]
        let want = (p.alpha + p.a + 1.0) / (2.0 * p.alpha + p.a + p.b + 2.0);
        let (m1, se1) = mean_of(100_000, |t| {
            build_jacobi_alpha(&p, RngState::new(8, t)).unwrap().diag[0]
        });
        assert!((m1 - want).abs() < 4.0 * se1, "{m1} vs {want}");
        // N = 1: single Beta draw
        let p1 = EnsembleParams::alpha_family(Family::JacobiAlpha, 1, 1.5, 0.0, 0.3, -0.4);
        let m = build_jacobi_alpha(&p1, RngState::new(9, 0)).unwrap();
        assert!(m.diag[0] > 0.0 && m.diag[0] < 1.0);
    }

    #[test]
    fn jacobi_spectra_in_unit_interval_many() {
        let p = EnsembleParams::alpha_family(Family::JacobiAlpha, 24, 2.0, 0.0, 25.8, 10.0);
        for t in 0..50 {
            let m = build_jacobi_alpha(&p, RngState::new(10, t)).unwrap();
            let s = eig_tridiag(&m).unwrap();
            assert!(s[0] > -1e-10 && s[s.len() - 1] < 1.0 + 1e-10, "trial {t}");
        }
    }

    #[test]
    fn beta_gaussian_off_moment() {
        // E[(off_n)²] = β(N−n)/2
        let n = 10usize;
        let p = EnsembleParams {
            family: Family::GaussianBeta,
            n,
            alpha: 0.0,
            gamma: 0.0,
            a: 0.0,
            b: 0.0,
            beta: 0.8,
        };
        let k = 4usize; // off index n=4 (1-based): dof β(N−4)
        let want = 0.8 * (n - k) as f64 / 2.0;
        let (m, se) = mean_of(100_000, |t| {
            let m = build_beta_family(&p, RngState::new(11, t)).unwrap();
            m.off[k - 1] * m.off[k - 1]
        });
        assert!((m - want).abs() < 4.0 * se, "{m} vs {want}");
    }

    #[test]
    fn beta_gaussian_duality_midpoint() {
        // with βN = 2α: E[(off)²] at n = N/2 is ≈ α/2… wait: β(N−n)/2 = α(1−n/N) = α/2
        let n = 64usize;
        let alpha = 1.7;
        let p = EnsembleParams::beta_from_alpha(Family::GaussianBeta, n, alpha, 0.0, 0.0, 0.0);
        let k = n / 2;
        let want = alpha * (1.0 - k as f64 / n as f64);
        let (m, se) = mean_of(60_000, |t| {
            let m = build_beta_family(&p, RngState::new(12, t)).unwrap();
            m.off[k - 1] * m.off[k - 1]
        });
        assert!((m - want).abs() < 4.0 * se, "{m} vs {want}");
    }

    #[test]
    fn tridiagonal_equals_dense_products() {
        // assemble B·Bᵀ and D·Dᵀ densely for N ≤ 6 and compare entrywise
        let mut s = crate::dist::Sampler::new(RngState::new(13, 0));
        for n in 2..=6usize {
            let xs: Vec<f64> = (0..n).map(|_| s.sample(DistSpec::Chi { dof: 2.3 }).unwrap()).collect();
            let ys: Vec<f64> = (0..n - 1).map(|_| s.sample(DistSpec::Chi { dof: 1.9 }).unwrap()).collect();
            let tri = assemble_bidiag_product(&xs, &ys, 0.5);
            // dense B
            let r = std::f64::consts::FRAC_1_SQRT_2;
            let mut bmat = vec![vec![0.0; n]; n];
            for i in 0..n {
                bmat[i][i] = r * xs[i];
                if i > 0 {
                    bmat[i][i - 1] = r * ys[i - 1];
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let dense: f64 = (0..n).map(|k| bmat[i][k] * bmat[j][k]).sum();
                    let tval = if i == j {
                        tri.diag[i]
                    } else if j == i + 1 || i == j + 1 {
                        tri.off[i.min(j)]
                    } else {
                        0.0
                    };
                    assert!((dense - tval).abs() < 1e-14 * (1.0 + dense.abs()), "n={n} ({i},{j})");
                }
            }
            // Jacobi product
            let ps: Vec<f64> = (0..n).map(|_| s.sample(DistSpec::Beta { a: 2.0, b: 3.0 }).unwrap()).collect();
            let qs: Vec<f64> = (0..n - 1).map(|_| s.sample(DistSpec::Beta { a: 1.5, b: 2.5 }).unwrap()).collect();
            let tri = assemble_jacobi(&ps, &qs);
            let mut dmat = vec![vec![0.0; n]; n];
            for i in 0..n {
                let qprev = if i > 0 { qs[i - 1] } else { 0.0 };
                dmat[i][i] = (ps[i] * (1.0 - qprev)).sqrt();
                if i > 0 {
                    dmat[i][i - 1] = (qs[i - 1] * (1.0 - ps[i - 1])).sqrt();
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let dense: f64 = (0..n).map(|k| dmat[i][k] * dmat[j][k]).sum();
                    let tval = if i == j {
                        tri.diag[i]
                    } else if j == i + 1 || i == j + 1 {
                        tri.off[i.min(j)]
                    } else {
                        0.0
                    };
                    assert!((dense - tval).abs() < 1e-14 * (1.0 + dense.abs()), "jacobi n={n} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn toda_lax_moments() {
        let (beta, theta) = (2.0, 0.47968745042817869);
        let lax = build_toda_lax(16, beta, theta, RngState::new(14, 0)).unwrap();
        assert!(lax.corner > 0.0);
        let (mt, set) = mean_of(100_000, |t| {
            build_toda_lax(8, beta, theta, RngState::new(15, t)).unwrap().trace() / 8.0
        });
        assert!(mt.abs() < 4.0 * set, "{mt} {set}");
        // E[(off)²] = (β+θ)/β
        let want = (beta + theta) / beta;
        let (mo, seo) = mean_of(100_000, |t| {
            let l = build_toda_lax(8, beta, theta, RngState::new(16, t)).unwrap();
            l.off[2] * l.off[2]
        });
        assert!((mo - want).abs() < 4.0 * seo, "{mo} vs {want}");
        assert!(build_toda_lax(2, beta, theta, RngState::new(1, 1)).is_err());
    }

    #[test]
    fn validation_rejects_bad_params() {
        let mut p = EnsembleParams::alpha_family(Family::LaguerreAlpha, 4, 1.0, 1.5, 0.0, 0.0);
        assert!(p.validate().is_err());
        p.gamma = 0.5;
        assert!(p.validate().is_ok());
        let j = EnsembleParams::alpha_family(Family::JacobiAlpha, 4, 1.0, 0.0, 3.0, 0.5);
        assert!(j.validate().is_err()); // a integer
        let j2 = EnsembleParams::alpha_family(Family::JacobiAlpha, 4, 0.1, 0.0, -0.5, 0.2);
        assert!(j2.validate().is_err()); // a + alpha <= 0
    }
}
