//! Eigenvalues of symmetric tridiagonal and periodic Jacobi matrices,
//! spectral-measure weights, and pooled spectral histograms.
//!
//! The main kernel is implicit-shift QL with Wilkinson shifts (values only).
//! A Sturm-sequence bisection solver is shipped alongside as an independent
//! algebraic route; the two are cross-checked in the tests. Periodic matrices
//! are reduced to tridiagonal form by dense Householder reflections first
//! (ample at desk scale), except that a zero corner short-circuits to the
//! tridiagonal path exactly.

use crate::tridiag::{PeriodicJacobi, SymTridiag};

/// Eigenvalues sorted ascending.
pub type Spectrum = Vec<f64>;

/// Spectral measure: atoms (λ_j, q_j²) with q_j the first component of the
/// j-th orthonormal eigenvector. Weights sum to 1.
#[derive(Debug, Clone)]
pub struct SpectralMeasure {
    pub atoms: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EigError {
    /// QL sweep failed to converge within the iteration cap (50 per value).
    NoConvergence(String),
    /// Eigenvalue multiplicity above the separation tolerance.
    Ambiguity(String),
    Usage(String),
}

impl std::fmt::Display for EigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EigError::NoConvergence(m) => write!(f, "eigensolver did not converge: {m}"),
            EigError::Ambiguity(m) => write!(f, "ambiguous eigensystem: {m}"),
            EigError::Usage(m) => write!(f, "usage error: {m}"),
        }
    }
}

impl std::error::Error for EigError {}

const QL_MAX_ITER: usize = 50;

/// All eigenvalues of a symmetric tridiagonal matrix (implicit-shift QL).
pub fn eig_tridiag(m: &SymTridiag) -> Result<Spectrum, EigError> {
    let mut d = m.diag.clone();
    let mut e = m.off.clone();
    e.push(0.0);
    ql_implicit(&mut d, &mut e)?;
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(d)
}

fn ql_implicit(d: &mut [f64], e: &mut [f64]) -> Result<(), EigError> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_ITER {
                return Err(EigError::NoConvergence(format!(
                    "QL exceeded {QL_MAX_ITER} iterations at index {l} (n = {n})"
                )));
            }
            // Wilkinson shift
            let g0 = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let r0 = g0.hypot(1.0);
            let mut g = d[m] - d[l] + e[l] / (g0 + sign(r0, g0));
            let mut r;
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0f64;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                f = (d[i] - g) * s + 2.0 * c * b;
                p = s * f;
                d[i + 1] = g + p;
                g = c * f - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[inline]
fn sign(magnitude: f64, sgn: f64) -> f64 {
    if sgn >= 0.0 {
        magnitude.abs()
    } else {
        -magnitude.abs()
    }
}

// ───────────────────────── Sturm bisection route ─────────────────────────

/// Number of eigenvalues strictly below `lambda` (LDLᵀ pivot signs).
pub fn sturm_count(diag: &[f64], off: &[f64], lambda: f64) -> usize {
    let n = diag.len();
    let mut count = 0;
    let mut q = diag[0] - lambda;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..n {
        let qs = if q.abs() < 1e-300 { 1e-300f64.copysign(q) } else { q };
        q = (diag[i] - lambda) - off[i - 1] * off[i - 1] / qs;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues by Sturm bisection (shift-free; independent of QL).
pub fn sturm_eigenvalues(m: &SymTridiag) -> Spectrum {
    let n = m.n();
    if n == 1 {
        return vec![m.diag[0]];
    }
    let (mut lo, mut hi) = (f64::MAX, f64::MIN);
    for i in 0..n {
        let el = if i > 0 { m.off[i - 1].abs() } else { 0.0 };
        let er = if i < n - 1 { m.off[i].abs() } else { 0.0 };
        lo = lo.min(m.diag[i] - el - er);
        hi = hi.max(m.diag[i] + el + er);
    }
    lo -= 1.0;
    hi += 1.0;
    (0..n)
        .map(|k| {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if (b - a) <= 2.0 * f64::EPSILON * mid.abs().max(1.0) {
                    break;
                }
                if sturm_count(&m.diag, &m.off, mid) <= k {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

// ───────────────────────── periodic matrices ─────────────────────────

/// All eigenvalues of a periodic Jacobi matrix.
///
/// corner = 0 short-circuits to `eig_tridiag` (identical matrix); otherwise
/// dense Householder reduction to tridiagonal form feeds the same QL kernel.
pub fn eig_periodic(m: &PeriodicJacobi) -> Result<Spectrum, EigError> {
    if m.corner == 0.0 {
        let t = SymTridiag { diag: m.diag.clone(), off: m.off.clone() };
        return eig_tridiag(&t);
    }
    let mut a = m.to_dense();
    let (d, e) = householder_tridiag(&mut a);
    let t = SymTridiag { diag: d, off: e };
    eig_tridiag(&t)
}

/// Householder reduction of a dense symmetric matrix to tridiagonal form
/// (returns diag, off); the input buffer is consumed as workspace.
fn householder_tridiag(a: &mut [Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let n = a.len();
    let mut e = vec![0.0; n];
    let mut tau = vec![0.0; n];
    for i in (1..n).rev() {
        let l = i - 1; // columns 0..=l participate
        if l == 0 {
            e[i] = a[i][0];
            continue;
        }
        let scale: f64 = (0..=l).map(|k| a[i][k].abs()).sum();
        if scale == 0.0 {
            e[i] = a[i][l];
            continue;
        }
        let mut h = 0.0;
        for k in 0..=l {
            a[i][k] /= scale;
            h += a[i][k] * a[i][k];
        }
        let f = a[i][l];
        let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
        e[i] = scale * g;
        h -= f * g;
        a[i][l] = f - g;
        let mut facc = 0.0;
        for j in 0..=l {
            let mut gg = 0.0;
            for k in 0..=j {
                gg += a[j][k] * a[i][k];
            }
            for k in j + 1..=l {
                gg += a[k][j] * a[i][k];
            }
            tau[j] = gg / h;
            facc += tau[j] * a[i][j];
        }
        let hh = facc / (2.0 * h);
        for j in 0..=l {
            let fj = a[i][j];
            let gj = tau[j] - hh * fj;
            tau[j] = gj;
            for k in 0..=j {
                a[j][k] -= fj * tau[k] + gj * a[i][k];
            }
        }
    }
    let d: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    let off = e[1..].to_vec();
    (d, off)
}

// ───────────────────────── spectral weights ─────────────────────────

/// Spectral measure (λ_j, q_j²): first components of orthonormal
/// eigenvectors, obtained by inverse iteration per eigenvalue.
pub fn spectral_weights(m: &SymTridiag) -> Result<SpectralMeasure, EigError> {
    let vals = eig_tridiag(m)?;
    let n = m.n();
    let scale = vals
        .iter()
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
        .max(1e-300);
    for w in vals.windows(2) {
        if (w[1] - w[0]).abs() < 1e-12 * scale {
            return Err(EigError::Ambiguity(format!(
                "eigenvalues {} and {} closer than the separation tolerance",
                w[0], w[1]
            )));
        }
    }
    let mut atoms = Vec::with_capacity(n);
    for &lam in &vals {
        let v = inverse_iteration(m, lam);
        atoms.push((lam, v[0] * v[0]));
    }
    Ok(SpectralMeasure { atoms })
}

fn inverse_iteration(m: &SymTridiag, lambda: f64) -> Vec<f64> {
    let n = m.n();
    let shift = lambda * (1.0 + 1e-13) + 1e-290;
    // deterministic pseudo-random start (a uniform start can be nearly
    // orthogonal to the target eigenvector)
    let mut state = lambda.to_bits() ^ 0x9e37_79b9_7f4a_7c15;
    let mut v: Vec<f64> = (0..n)
        .map(|_| {
            state = state.wrapping_mul(0xd129_0d3b_3f62_19c9).wrapping_add(0x2545_f491_4f6c_dd1d);
            ((state >> 11) as f64 / 9007199254740992.0) - 0.5
        })
        .collect();
    let nv = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in &mut v {
        *x /= nv;
    }
    for _ in 0..4 {
        let mut w = solve_shifted(m, shift, &v);
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return v;
        }
        for x in &mut w {
            *x /= norm;
        }
        v = w;
    }
    v
}

/// Solve (T − shift·I) x = b with partial pivoting (tridiagonal, extra
/// second super-diagonal fill).
fn solve_shifted(m: &SymTridiag, shift: f64, b: &[f64]) -> Vec<f64> {
    let n = m.n();
    let mut dl = vec![0.0; n]; // sub
    let mut dd = vec![0.0; n]; // main
    let mut du = vec![0.0; n]; // super
    let mut du2 = vec![0.0; n]; // fill
    for i in 0..n {
        dd[i] = m.diag[i] - shift;
        if i + 1 < n {
            du[i] = m.off[i];
            dl[i + 1] = m.off[i];
        }
    }
    let mut x = b.to_vec();
    // forward elimination with row swaps
    for i in 0..n - 1 {
        if dl[i + 1].abs() > dd[i].abs() {
            // exchange rows i and i+1: row i ← (dl, dd, du)_{i+1} stored as
            // (dd, du, du2)_i; row i+1 ← old row i, (dd, du, 0)_i
            let (p0, p1, p2) = (dl[i + 1], dd[i + 1], du[i + 1]);
            let (q0, q1, q2) = (dd[i], du[i], 0.0);
            dd[i] = p0;
            du[i] = p1;
            du2[i] = p2;
            dl[i + 1] = q0;
            dd[i + 1] = q1;
            du[i + 1] = q2;
            x.swap(i, i + 1);
        }
        let piv = if dd[i].abs() < 1e-300 { 1e-300f64.copysign(dd[i]) } else { dd[i] };
        let f = dl[i + 1] / piv;
        dd[i + 1] -= f * du[i];
        du[i + 1] -= f * du2[i];
        x[i + 1] -= f * x[i];
        dl[i + 1] = 0.0;
    }
    // back substitution
    let mut out = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = x[i];
        if i + 1 < n {
            s -= du[i] * out[i + 1];
        }
        if i + 2 < n {
            s -= du2[i] * out[i + 2];
        }
        let piv = if dd[i].abs() < 1e-300 { 1e-300f64.copysign(dd[i]) } else { dd[i] };
        out[i] = s / piv;
    }
    out
}

// ───────────────────────── histograms ─────────────────────────

/// Uniform binning specification.
#[derive(Debug, Clone, Copy)]
pub struct BinSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl BinSpec {
    /// Default binning: `count` uniform bins over [min−ε, max+ε].
    pub fn covering(data_min: f64, data_max: f64, count: usize) -> Self {
        let span = (data_max - data_min).max(1e-12);
        let eps = 1e-6 * span;
        BinSpec { lo: data_min - eps, hi: data_max + eps, count }
    }
}

/// Pooled, normalized histogram with per-bin Monte Carlo standard errors.
#[derive(Debug, Clone)]
pub struct Histogram {
    /// bin edges, length count+1
    pub edges: Vec<f64>,
    /// normalized density per bin (integrates to 1 over the covered range)
    pub density: Vec<f64>,
    /// standard error of each density value across trials
    pub se: Vec<f64>,
}

impl Histogram {
    pub fn bin_width(&self) -> f64 {
        self.edges[1] - self.edges[0]
    }

    pub fn centers(&self) -> Vec<f64> {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect()
    }

    /// total mass = Σ density·width (1 up to points outside the range)
    pub fn mass(&self) -> f64 {
        let w = self.bin_width();
        self.density.iter().map(|d| d * w).sum()
    }
}

/// Pool the spectra of many trials into one normalized histogram.
pub fn empirical_histogram(spectra: &[Spectrum], bins: &BinSpec) -> Result<Histogram, EigError> {
    if spectra.is_empty() || spectra.iter().any(|s| s.is_empty()) {
        return Err(EigError::Usage("empirical_histogram: empty input".into()));
    }
    if bins.count == 0 || !(bins.hi > bins.lo) {
        return Err(EigError::Usage("empirical_histogram: bad bin spec".into()));
    }
    let nb = bins.count;
    let w = (bins.hi - bins.lo) / nb as f64;
    let total_points: usize = spectra.iter().map(|s| s.len()).sum();
    let trials = spectra.len();
    let mut mean = vec![0.0f64; nb];
    let mut m2 = vec![0.0f64; nb];
    // per-trial densities accumulated with Welford in a fixed order
    for (t, s) in spectra.iter().enumerate() {
        let mut counts = vec![0.0f64; nb];
        for &x in s {
            if x >= bins.lo && x < bins.hi {
                let b = (((x - bins.lo) / w) as usize).min(nb - 1);
                counts[b] += 1.0;
            } else if x == bins.hi {
                counts[nb - 1] += 1.0;
            }
        }
        let per_point = s.len() as f64 * w;
        for b in 0..nb {
            let dens = counts[b] / per_point;
            let delta = dens - mean[b];
            mean[b] += delta / (t + 1) as f64;
            m2[b] += delta * (dens - mean[b]);
        }
    }
    let mut density = vec![0.0; nb];
    let mut se = vec![0.0; nb];
    // pooled density weights trials by their point counts; with equal N per
    // trial this equals the trial mean
    let mut pooled = vec![0.0f64; nb];
    for s in spectra {
        for &x in s {
            if x >= bins.lo && x < bins.hi {
                let b = (((x - bins.lo) / w) as usize).min(nb - 1);
                pooled[b] += 1.0;
            } else if x == bins.hi {
                pooled[nb - 1] += 1.0;
            }
        }
    }
    for b in 0..nb {
        density[b] = pooled[b] / (total_points as f64 * w);
        se[b] = if trials > 1 {
            (m2[b] / ((trials - 1) as f64 * trials as f64)).sqrt()
        } else {
            0.0
        };
    }
    let edges = (0..=nb).map(|i| bins.lo + i as f64 * w).collect();
    Ok(Histogram { edges, density, se })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{DistSpec, Sampler};
    use crate::rng::RngState;

    fn tm(diag: &[f64], off: &[f64]) -> SymTridiag {
        SymTridiag::new(diag.to_vec(), off.to_vec()).unwrap()
    }

    #[test]
    fn two_by_two() {
        let s = eig_tridiag(&tm(&[0.0, 0.0], &[1.0])).unwrap();
        assert!((s[0] + 1.0).abs() < 1e-14 && (s[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn three_by_three_chain() {
        // char poly λ³ − 2λ: {−√2, 0, √2}
        let s = eig_tridiag(&tm(&[0.0, 0.0, 0.0], &[1.0, 1.0])).unwrap();
        let r2 = 2f64.sqrt();
        assert!((s[0] + r2).abs() < 1e-14);
        assert!(s[1].abs() < 1e-14);
        assert!((s[2] - r2).abs() < 1e-14);
    }

    #[test]
    fn trace_preserved() {
        let mut smp = Sampler::new(RngState::new(77, 0));
        for n in [1usize, 2, 5, 40] {
            let diag: Vec<f64> = (0..n).map(|_| smp.standard_normal()).collect();
            let off: Vec<f64> =
                (0..n.saturating_sub(1)).map(|_| smp.sample(DistSpec::Chi { dof: 2.0 }).unwrap()).collect();
            let m = tm(&diag, &off);
            let s = eig_tridiag(&m).unwrap();
            let scale = s.iter().fold(1.0f64, |a, b| a.max(b.abs()));
            assert!(
                (s.iter().sum::<f64>() - m.trace()).abs() < 1e-10 * n as f64 * scale,
                "n = {n}"
            );
        }
    }

    #[test]
    fn ql_matches_sturm_oracle() {
        let mut smp = Sampler::new(RngState::new(123, 5));
        for trial in 0..100 {
            let n = 20;
            let diag: Vec<f64> = (0..n).map(|_| smp.standard_normal()).collect();
            let off: Vec<f64> =
                (0..n - 1).map(|_| smp.sample(DistSpec::Chi { dof: 1.5 }).unwrap()).collect();
            let m = tm(&diag, &off);
            let a = eig_tridiag(&m).unwrap();
            let b = sturm_eigenvalues(&m);
            let scale = a.iter().fold(1.0f64, |x, y| x.max(y.abs()));
            for i in 0..n {
                assert!(
                    (a[i] - b[i]).abs() < 1e-10 * scale,
                    "trial {trial} idx {i}: {} vs {}",
                    a[i],
                    b[i]
                );
            }
        }
    }

    #[test]
    fn interlacing_of_principal_submatrix() {
        let mut smp = Sampler::new(RngState::new(9, 3));
        for _ in 0..20 {
            let n = 12;
            let diag: Vec<f64> = (0..n).map(|_| smp.standard_normal()).collect();
            let off: Vec<f64> =
                (0..n - 1).map(|_| smp.sample(DistSpec::Chi { dof: 2.5 }).unwrap()).collect();
            let m = tm(&diag, &off);
            let s = eig_tridiag(&m).unwrap();
            let sub = eig_tridiag(&m.principal_submatrix()).unwrap();
            for i in 0..n - 1 {
                assert!(s[i] < sub[i] && sub[i] < s[i + 1], "interlacing failed at {i}");
            }
        }
    }

    #[test]
    fn periodic_circulant_n3() {
        // diag 0, off = corner = 1: eigenvalues 2cos(2πk/3) = {−1, −1, 2}
        let m = PeriodicJacobi::new(vec![0.0; 3], vec![1.0; 2], 1.0).unwrap();
        let s = eig_periodic(&m).unwrap();
        assert!((s[0] + 1.0).abs() < 1e-12);
        assert!((s[1] + 1.0).abs() < 1e-12);
        assert!((s[2] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn periodic_circulant_n4() {
        let m = PeriodicJacobi::new(vec![0.0; 4], vec![1.0; 3], 1.0).unwrap();
        let s = eig_periodic(&m).unwrap();
        let want = [-2.0, 0.0, 0.0, 2.0];
        for (a, b) in s.iter().zip(want.iter()) {
            assert!((a - b).abs() < 1e-12, "{s:?}");
        }
    }

    #[test]
    fn periodic_zero_corner_equals_tridiag() {
        let mut smp = Sampler::new(RngState::new(4, 4));
        let n = 16;
        let diag: Vec<f64> = (0..n).map(|_| smp.standard_normal()).collect();
        let off: Vec<f64> = (0..n - 1).map(|_| smp.uniform() + 0.2).collect();
        let p = PeriodicJacobi::new(diag.clone(), off.clone(), 0.0).unwrap();
        let t = tm(&diag, &off);
        assert_eq!(eig_periodic(&p).unwrap(), eig_tridiag(&t).unwrap());
    }

    #[test]
    fn periodic_matches_dense_characteristic_roots() {
        // N <= 6: compare against root-finding on det(λI − L) evaluated by
        // cofactor expansion (independent dense route)
        let mut smp = Sampler::new(RngState::new(21, 6));
        for n in [3usize, 4, 5, 6] {
            let diag: Vec<f64> = (0..n).map(|_| smp.standard_normal()).collect();
            let off: Vec<f64> = (0..n - 1).map(|_| smp.uniform() + 0.3).collect();
            let corner = smp.uniform() + 0.3;
            let p = PeriodicJacobi::new(diag, off, corner).unwrap();
            let s = eig_periodic(&p).unwrap();
            let dense = p.to_dense();
            let det = |lam: f64| -> f64 {
                // LU determinant of (A − λ I)
                let mut a: Vec<Vec<f64>> = dense
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter().enumerate().map(|(j, &v)| if i == j { v - lam } else { v }).collect()
                    })
                    .collect();
                let mut det = 1.0;
                for i in 0..n {
                    let mut piv = i;
                    for r in i + 1..n {
                        if a[r][i].abs() > a[piv][i].abs() {
                            piv = r;
                        }
                    }
                    if piv != i {
                        a.swap(piv, i);
                        det = -det;
                    }
                    if a[i][i] == 0.0 {
                        return 0.0;
                    }
                    det *= a[i][i];
                    for r in i + 1..n {
                        let f = a[r][i] / a[i][i];
                        for c in i..n {
                            a[r][c] -= f * a[i][c];
                        }
                    }
                }
                det
            };
            // each eigenvalue is a root of the characteristic polynomial:
            // check sign change in a small bracket around it
            for &lam in &s {
                let h = 1e-7 * (1.0 + lam.abs());
                let (dl, dr) = (det(lam - h), det(lam + h));
                let central = det(lam);
                assert!(
                    central.abs() < 1e-9 * dl.abs().max(dr.abs()).max(1e-30) || dl * dr <= 0.0,
                    "n={n} λ={lam}: det {central} bracket ({dl}, {dr})"
                );
            }
        }
    }

    #[test]
    fn weights_two_by_two() {
        let m = tm(&[0.0, 0.0], &[1.0]);
        let w = spectral_weights(&m).unwrap();
        assert!((w.atoms[0].1 - 0.5).abs() < 1e-10);
        assert!((w.atoms[1].1 - 0.5).abs() < 1e-10);
    }

    #[test]
    fn weights_single_atom() {
        let m = tm(&[2.5], &[]);
        let w = spectral_weights(&m).unwrap();
        assert_eq!(w.atoms.len(), 1);
        assert!((w.atoms[0].1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn weights_sum_to_one_and_match_christoffel() {
        // independent oracle: q_j² = 1 / Σ_{k<N} p_k(λ_j)² from the
        // three-term recurrence of the orthonormal polynomials
        let mut smp = Sampler::new(RngState::new(31, 2));
        for _ in 0..10 {
            let n = 14;
            let diag: Vec<f64> = (0..n).map(|_| smp.standard_normal()).collect();
            let off: Vec<f64> =
                (0..n - 1).map(|_| smp.sample(DistSpec::Chi { dof: 2.0 }).unwrap()).collect();
            let m = tm(&diag, &off);
            let w = spectral_weights(&m).unwrap();
            let sum: f64 = w.atoms.iter().map(|a| a.1).sum();
            assert!((sum - 1.0).abs() < 1e-10, "sum = {sum}");
            for &(lam, q2) in &w.atoms {
                let mut pk = 1.0f64;
                let mut pk1 = 0.0f64; // p_{-1}
                let mut ssum = 0.0;
                for k in 0..n {
                    ssum += pk * pk;
                    if k + 1 < n {
                        let pnext = ((lam - diag[k]) * pk - if k > 0 { off[k - 1] * pk1 } else { 0.0 })
                            / off[k];
                        pk1 = pk;
                        pk = pnext;
                    }
                }
                let oracle = 1.0 / ssum;
                assert!(
                    (q2 - oracle).abs() < 1e-8 * oracle.max(1e-12),
                    "λ={lam}: q²={q2} oracle={oracle}"
                );
            }
        }
    }

    #[test]
    fn histogram_two_atoms() {
        let h = empirical_histogram(
            &[vec![-1.0, 1.0]],
            &BinSpec { lo: -2.0, hi: 2.0, count: 2 },
        )
        .unwrap();
        assert!((h.density[0] - 0.25).abs() < 1e-12);
        assert!((h.density[1] - 0.25).abs() < 1e-12);
        assert!((h.mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn histogram_mass_one() {
        let mut smp = Sampler::new(RngState::new(2, 2));
        let spectra: Vec<Vec<f64>> = (0..10)
            .map(|_| (0..100).map(|_| smp.standard_normal()).collect())
            .collect();
        let h = empirical_histogram(&spectra, &BinSpec { lo: -8.0, hi: 8.0, count: 64 }).unwrap();
        assert!((h.mass() - 1.0).abs() < 1e-12);
        assert!(empirical_histogram(&[], &BinSpec { lo: 0.0, hi: 1.0, count: 2 }).is_err());
    }
}
