//! Experiment driver: spectra sampling, moment tables, fluctuation
//! statistics, α → ∞ limit checks, and the Toda Lax density of states —
//! all as deterministic data files (CSV histograms + JSON summaries).
//!
//! Every command is a pure function of (config, seed): trials draw from
//! per-trial streams and results merge in a fixed order, so re-running
//! produces byte-identical output.

use rayon::prelude::*;
use serde::Serialize;
use std::io::Write;
use std::path::Path;

use crate::densities::{arcsine_limit, arcsine_support, dos_density, interior_grid, DensityFamily};
use crate::eig::{eig_periodic, eig_tridiag, empirical_histogram, BinSpec, Histogram, Spectrum};
use crate::ensembles::{build, EnsembleParams, Family};
use crate::motzkin::{moments_pair, MomentFamily, MomentParams, MomentsPair};
use crate::rng::RngState;
use crate::toda::{sample_gibbs_approx, sample_gibbs_constrained, TodaParams};

#[derive(Debug)]
pub enum LabError {
    Validation(String),
    Numeric(String),
    Io(std::io::Error),
}

impl std::fmt::Display for LabError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LabError::Validation(m) => write!(f, "validation error: {m}"),
            LabError::Numeric(m) => write!(f, "numeric failure: {m}"),
            LabError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for LabError {}

impl From<std::io::Error> for LabError {
    fn from(e: std::io::Error) -> Self {
        LabError::Io(e)
    }
}

impl LabError {
    /// Process exit code: validation 2, numeric 3, io 3.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Validation(_) => 2,
            _ => 3,
        }
    }
}

/// Run configuration shared by the commands.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub family: Family,
    pub n: usize,
    pub trials: usize,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub a: f64,
    pub b: f64,
    pub seed: u64,
    pub bins: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            family: Family::GaussianAlpha,
            n: 500,
            trials: 1000,
            alpha: 1.0,
            beta: 2.0,
            gamma: 0.8,
            a: 25.8,
            b: 10.0,
            seed: 20260808,
            bins: 120,
        }
    }
}

impl RunConfig {
    pub fn ensemble_params(&self) -> EnsembleParams {
        if self.family.is_alpha() {
            EnsembleParams::alpha_family(self.family, self.n, self.alpha, self.gamma, self.a, self.b)
        } else {
            EnsembleParams::beta_from_alpha(self.family, self.n, self.alpha, self.gamma, self.a, self.b)
        }
    }

    pub fn density_family(&self) -> DensityFamily {
        match self.family {
            Family::GaussianAlpha | Family::GaussianBeta => {
                DensityFamily::Gaussian { alpha: self.alpha }
            }
            Family::LaguerreAlpha | Family::LaguerreBeta => {
                DensityFamily::Laguerre { alpha: self.alpha, gamma: self.gamma }
            }
            Family::JacobiAlpha | Family::JacobiBeta => {
                DensityFamily::Jacobi { alpha: self.alpha, a: self.a, b: self.b }
            }
        }
    }

    pub fn moment_family(&self) -> (MomentFamily, MomentParams) {
        match self.family {
            Family::GaussianAlpha | Family::GaussianBeta => {
                (MomentFamily::Gaussian, MomentParams::none())
            }
            Family::LaguerreAlpha | Family::LaguerreBeta => {
                (MomentFamily::Laguerre, MomentParams::laguerre_f64(self.gamma))
            }
            Family::JacobiAlpha | Family::JacobiBeta => {
                (MomentFamily::Jacobi, MomentParams::jacobi_f64(self.a, self.b))
            }
        }
    }

    fn validate(&self) -> Result<(), LabError> {
        self.ensemble_params()
            .validate()
            .map_err(|e| LabError::Validation(e.to_string()))?;
        if self.bins == 0 {
            return Err(LabError::Validation("bins must be positive".into()));
        }
        Ok(())
    }
}

/// Sample `trials` spectra of the configured ensemble, in parallel but in a
/// deterministic order (stream id = trial index).
pub fn sample_spectra(cfg: &RunConfig) -> Result<Vec<Spectrum>, LabError> {
    cfg.validate()?;
    let params = cfg.ensemble_params();
    (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let m = build(&params, RngState::new(cfg.seed, t as u64))
                .map_err(|e| LabError::Validation(e.to_string()))?;
            eig_tridiag(&m).map_err(|e| LabError::Numeric(e.to_string()))
        })
        .collect()
}

fn pool_sorted(spectra: &[Spectrum]) -> Vec<f64> {
    let mut all: Vec<f64> = spectra.iter().flatten().copied().collect();
    all.sort_by(|a, b| a.partial_cmp(b).unwrap());
    all
}

/// KS distance between the pooled empirical CDF and the analytic CDF of a
/// density integrated cell by cell on a grid ≥ 4× the bin count.
///
/// Each cell uses 20-point Gauss–Legendre; with `hard_edge_at_zero` the
/// cells below x = 1 integrate in the substituted variable t = x^{1/4},
/// which regularizes the x^{σ} (σ > −1) spectral hard edge.
pub fn ks_vs_density<F: Fn(f64) -> Result<f64, LabError> + Sync>(
    pooled_sorted: &[f64],
    density: F,
    lo: f64,
    hi: f64,
    grid_points: usize,
    hard_edge_at_zero: bool,
) -> Result<f64, LabError> {
    let n = pooled_sorted.len();
    if n == 0 {
        return Err(LabError::Validation("empty sample".into()));
    }
    let m = grid_points.max(8);
    let h = (hi - lo) / m as f64;
    let increments: Result<Vec<f64>, LabError> = (0..m)
        .into_par_iter()
        .map(|i| {
            let (a, b) = (lo + i as f64 * h, lo + (i + 1) as f64 * h);
            let mut acc = 0.0;
            if hard_edge_at_zero && a < 1.0 && a >= 0.0 {
                // x = t^4 removes the algebraic edge: f(x)dx = 4 t³ f(t⁴) dt
                let (ta, tb) = (a.powf(0.25), b.min(1.0).powf(0.25));
                let (c, hw) = (0.5 * (ta + tb), 0.5 * (tb - ta));
                for (z, w) in crate::specfun::GL20_NODES {
                    let t = c + hw * z;
                    acc += w * 4.0 * t * t * t * density(t * t * t * t)?.max(0.0);
                }
                acc *= hw;
                if b > 1.0 {
                    let (c, hw) = (0.5 * (1.0 + b), 0.5 * (b - 1.0));
                    let mut acc2 = 0.0;
                    for (z, w) in crate::specfun::GL20_NODES {
                        acc2 += w * density(c + hw * z)?.max(0.0);
                    }
                    acc += hw * acc2;
                }
            } else {
                let (c, hw) = (0.5 * (a + b), 0.5 * (b - a));
                for (z, w) in crate::specfun::GL20_NODES {
                    acc += w * density(c + hw * z)?.max(0.0);
                }
                acc *= hw;
            }
            Ok(acc)
        })
        .collect();
    let increments = increments?;
    let mut ks = 0.0f64;
    let mut cum = 0.0;
    for i in 0..m {
        let x = lo + (i + 1) as f64 * h;
        cum += increments[i];
        let emp = partition_point(pooled_sorted, x) as f64 / n as f64;
        ks = ks.max((emp - cum).abs());
    }
    Ok(ks)
}

fn partition_point(sorted: &[f64], x: f64) -> usize {
    sorted.partition_point(|&v| v <= x)
}

/// Two-sample KS distance between pooled sorted samples.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let (mut i, mut j, mut ks) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            i += 1;
        } else {
            j += 1;
        }
        ks = ks.max((i as f64 / a.len() as f64 - j as f64 / b.len() as f64).abs());
    }
    ks
}

// ───────────────────────── sample-spectra ─────────────────────────

#[derive(Debug, Serialize)]
pub struct SpectraReport {
    pub config: RunConfig,
    pub pooled_points: usize,
    pub histogram_mass: f64,
    pub ks_vs_dos: f64,
    pub data_min: f64,
    pub data_max: f64,
}

pub struct SpectraOutput {
    pub report: SpectraReport,
    pub histogram: Histogram,
    pub overlay: Vec<f64>,
}

/// Pooled spectral histogram with the analytic DOS overlay and KS statistic.
pub fn run_sample_spectra(cfg: &RunConfig) -> Result<SpectraOutput, LabError> {
    let spectra = sample_spectra(cfg)?;
    let pooled = pool_sorted(&spectra);
    let (lo, hi) = (pooled[0], *pooled.last().unwrap());
    let bins = BinSpec::covering(lo, hi, cfg.bins);
    let hist = empirical_histogram(&spectra, &bins).map_err(|e| LabError::Numeric(e.to_string()))?;
    let fam = cfg.density_family();
    let overlay: Result<Vec<f64>, LabError> = hist
        .centers()
        .par_iter()
        .map(|&x| dos_at(&fam, x))
        .collect();
    let overlay = overlay?;
    let hard_edge = matches!(fam, DensityFamily::Laguerre { .. });
    let ks = ks_vs_density(
        &pooled,
        |x| dos_at(&fam, x),
        if hard_edge { 0.0 } else { bins.lo },
        bins.hi,
        4 * cfg.bins,
        hard_edge,
    )?;
    Ok(SpectraOutput {
        report: SpectraReport {
            config: cfg.clone(),
            pooled_points: pooled.len(),
            histogram_mass: hist.mass(),
            ks_vs_dos: ks,
            data_min: lo,
            data_max: hi,
        },
        histogram: hist,
        overlay,
    })
}

fn dos_at(fam: &DensityFamily, x: f64) -> Result<f64, LabError> {
    // outside the Jacobi support the DOS is zero by convention
    if let DensityFamily::Jacobi { .. } = fam {
        if !(0.0..=1.0).contains(&x) {
            return Ok(0.0);
        }
        if x == 0.0 || x == 1.0 {
            return Ok(0.0);
        }
    }
    if let DensityFamily::Laguerre { .. } = fam {
        if x <= 0.0 {
            return Ok(0.0);
        }
    }
    dos_density(fam, x).map_err(|e| LabError::Numeric(e.to_string()))
}

// ───────────────────────── moments-table ─────────────────────────

#[derive(Debug, Serialize)]
pub struct MomentRow {
    pub l: u32,
    pub v_coeffs: Option<Vec<String>>,
    pub u_coeffs: Option<Vec<String>>,
    pub v_value: f64,
    pub u_value: f64,
    pub mc_mean: f64,
    pub mc_se: f64,
    pub identity_residual: f64,
}

#[derive(Debug, Serialize)]
pub struct MomentsTable {
    pub config: RunConfig,
    pub rows: Vec<MomentRow>,
}

/// Per-l symbolic moments with Monte Carlo estimates of (1/N)·Tr(Hˡ).
pub fn run_moments_table(cfg: &RunConfig, lmax: u32) -> Result<MomentsTable, LabError> {
    cfg.validate()?;
    if lmax > crate::motzkin::MAX_L {
        return Err(LabError::Validation(format!(
            "l range {lmax} exceeds budget {}",
            crate::motzkin::MAX_L
        )));
    }
    let spectra = sample_spectra(cfg)?;
    let (mf, mp) = cfg.moment_family();
    let mut rows = Vec::new();
    for l in 1..=lmax {
        let pair = moments_pair(l, mf, &mp, cfg.alpha).map_err(|e| LabError::Numeric(e.to_string()))?;
        // MC trace moments
        let mut mean = 0.0;
        let mut m2 = 0.0;
        for (t, s) in spectra.iter().enumerate() {
            let v = s.iter().map(|x| x.powi(l as i32)).sum::<f64>() / s.len() as f64;
            let d = v - mean;
            mean += d / (t + 1) as f64;
            m2 += d * (v - mean);
        }
        let se = if spectra.len() > 1 {
            (m2 / ((spectra.len() - 1) as f64 * spectra.len() as f64)).sqrt()
        } else {
            0.0
        };
        rows.push(MomentRow {
            l,
            v_coeffs: ratfunc_coeffs(&pair),
            u_coeffs: pair.u_poly.as_ref().map(|p| {
                p.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>()
            }),
            v_value: pair.v_value,
            u_value: pair.u_value,
            mc_mean: mean,
            mc_se: se,
            identity_residual: pair.identity_residual,
        });
    }
    Ok(MomentsTable { config: cfg.clone(), rows })
}

fn ratfunc_coeffs(pair: &MomentsPair) -> Option<Vec<String>> {
    if pair.v.den.degree() == 0 {
        Some(pair.v.num.coeffs.iter().map(|c| c.to_string()).collect())
    } else {
        // rational v: emit numerator and denominator coefficient blocks
        let mut out: Vec<String> = pair.v.num.coeffs.iter().map(|c| c.to_string()).collect();
        out.push("/".into());
        out.extend(pair.v.den.coeffs.iter().map(|c| c.to_string()));
        Some(out)
    }
}

// ───────────────────────── fluctuations ─────────────────────────

#[derive(Debug, Serialize)]
pub struct FluctuationReport {
    pub config: RunConfig,
    pub poly_coeffs: Vec<f64>,
    pub centered_mean: f64,
    pub variance: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    pub normality_p_value: f64,
    pub pass: bool,
}

/// Fluctuation statistic S_N = √N(⟨ν^{(N)}, P⟩ − ⟨ν̄, P⟩) over the trials.
///
/// `poly` holds the coefficients of P (constant first). The centering uses
/// the exact symbolic moments, not the Monte Carlo mean.
pub fn run_fluctuations(cfg: &RunConfig, poly: &[f64]) -> Result<FluctuationReport, LabError> {
    cfg.validate()?;
    if cfg.trials < 200 {
        return Err(LabError::Validation(format!(
            "fluctuation reports need >= 200 trials, got {}",
            cfg.trials
        )));
    }
    if poly.iter().all(|c| *c == 0.0) {
        return Err(LabError::Validation("P must be a non-trivial polynomial".into()));
    }
    let (mf, mp) = cfg.moment_family();
    // ⟨ν̄, P⟩ = c₀ + Σ_{l>=1} c_l·v_l(α)
    let mut center = poly.first().copied().unwrap_or(0.0);
    for (l, &c) in poly.iter().enumerate().skip(1) {
        if c != 0.0 {
            let pair = moments_pair(l as u32, mf, &mp, cfg.alpha)
                .map_err(|e| LabError::Numeric(e.to_string()))?;
            center += c * pair.v_value;
        }
    }
    let spectra = sample_spectra(cfg)?;
    let sqn = (cfg.n as f64).sqrt();
    let stats: Vec<f64> = spectra
        .iter()
        .map(|s| {
            let avg = s
                .iter()
                .map(|&x| poly.iter().enumerate().fold(0.0, |acc, (k, &c)| acc + c * x.powi(k as i32)))
                .sum::<f64>()
                / s.len() as f64;
            sqn * (avg - center)
        })
        .collect();
    let t = stats.len() as f64;
    let mean = stats.iter().sum::<f64>() / t;
    let m2 = stats.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / t;
    let m3 = stats.iter().map(|s| (s - mean).powi(3)).sum::<f64>() / t;
    let m4 = stats.iter().map(|s| (s - mean).powi(4)).sum::<f64>() / t;
    let skew = m3 / m2.powf(1.5);
    let exk = m4 / (m2 * m2) - 3.0;
    let jb = t / 6.0 * (skew * skew + 0.25 * exk * exk);
    let p = (-0.5 * jb).exp(); // chi² with 2 dof survival
    Ok(FluctuationReport {
        config: cfg.clone(),
        poly_coeffs: poly.to_vec(),
        centered_mean: mean,
        variance: m2,
        skewness: skew,
        excess_kurtosis: exk,
        normality_p_value: p,
        pass: skew.abs() < 0.15 && exk.abs() < 0.3,
    })
}

// ───────────────────────── limit-check ─────────────────────────

#[derive(Debug, Serialize)]
pub struct LimitCheckRow {
    pub alpha: f64,
    pub sup_distance: f64,
}

#[derive(Debug, Serialize)]
pub struct LimitCheckReport {
    pub config: RunConfig,
    pub rows: Vec<LimitCheckRow>,
    pub monotone_decreasing: bool,
    pub support: (f64, f64),
}

/// Sup-grid distance between the rescaled DOS and its arcsine limit, per α.
///
/// The comparison grid is 241 uniform interior points of the arcsine support
/// with a 2.5% margin at each end (the limit density diverges at the
/// endpoints; the margin makes the sup-distance finite and comparable
/// across α).
pub fn run_limit_check(cfg: &RunConfig, alphas: &[f64]) -> Result<LimitCheckReport, LabError> {
    if alphas.is_empty() || alphas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(LabError::Validation("alpha list must be ascending".into()));
    }
    let base = cfg.density_family();
    let support = arcsine_support(&base);
    let margin = 0.025 * (support.1 - support.0);
    let grid = interior_grid(support.0 + margin, support.1 - margin, 241);
    let mut rows = Vec::new();
    for &al in alphas {
        let fam = with_alpha(&base, al);
        let sup = grid
            .par_iter()
            .map(|&z| -> Result<f64, LabError> {
                // rescaled DOS at the arcsine variable z
                let (x, jac) = match fam {
                    DensityFamily::Gaussian { alpha } => {
                        let s = alpha.sqrt();
                        (z * s, s)
                    }
                    DensityFamily::Laguerre { alpha, gamma } => {
                        let s = alpha / gamma;
                        (z * s, s)
                    }
                    DensityFamily::Jacobi { .. } => (z, 1.0),
                };
                let d = dos_at(&fam, x)? * jac;
                Ok((d - arcsine_limit(&fam, z)).abs())
            })
            .try_reduce(|| 0.0f64, |a, b| Ok(a.max(b)))?;
        rows.push(LimitCheckRow { alpha: al, sup_distance: sup });
    }
    let monotone = rows.windows(2).all(|w| w[1].sup_distance < w[0].sup_distance);
    Ok(LimitCheckReport { config: cfg.clone(), rows, monotone_decreasing: monotone, support })
}

fn with_alpha(fam: &DensityFamily, alpha: f64) -> DensityFamily {
    match *fam {
        DensityFamily::Gaussian { .. } => DensityFamily::Gaussian { alpha },
        DensityFamily::Laguerre { gamma, .. } => DensityFamily::Laguerre { alpha, gamma },
        DensityFamily::Jacobi { a, b, .. } => DensityFamily::Jacobi { alpha, a, b },
    }
}

// ───────────────────────── toda-dos ─────────────────────────

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TodaSampler {
    Approximate,
    Constrained,
}

#[derive(Debug, Serialize)]
pub struct TodaDosReport {
    pub n: usize,
    pub trials: usize,
    pub beta: f64,
    pub theta: f64,
    pub theta_residual: f64,
    pub sampler: TodaSampler,
    pub seed: u64,
    pub bins: usize,
    pub ks_vs_dos: f64,
    pub histogram_mass: f64,
}

pub struct TodaDosOutput {
    pub report: TodaDosReport,
    pub histogram: Histogram,
    pub overlay: Vec<f64>,
}

/// Pooled Lax spectra under the Gibbs measure vs the analytic density
/// √β·∂_α(α μ_α(√β x)) at α = β + θ.
pub fn run_toda_dos(
    cfg: &RunConfig,
    sampler: TodaSampler,
    mcmc_budget: usize,
) -> Result<TodaDosOutput, LabError> {
    let params = TodaParams::new(cfg.n, cfg.beta).map_err(|e| LabError::Validation(e.to_string()))?;
    let spectra: Result<Vec<Spectrum>, LabError> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let rng = RngState::new(cfg.seed, t as u64);
            let lax = match sampler {
                TodaSampler::Approximate => {
                    let st = sample_gibbs_approx(&params, rng)
                        .map_err(|e| LabError::Numeric(e.to_string()))?;
                    crate::toda::flaschka(&st).map_err(|e| LabError::Numeric(e.to_string()))?
                }
                TodaSampler::Constrained => {
                    let cs = sample_gibbs_constrained(&params, rng, mcmc_budget)
                        .map_err(|e| LabError::Numeric(e.to_string()))?;
                    crate::toda::flaschka(&cs.state).map_err(|e| LabError::Numeric(e.to_string()))?
                }
            };
            eig_periodic(&lax).map_err(|e| LabError::Numeric(e.to_string()))
        })
        .collect();
    let spectra = spectra?;
    let pooled = pool_sorted(&spectra);
    let bins = BinSpec::covering(pooled[0], *pooled.last().unwrap(), cfg.bins);
    let hist = empirical_histogram(&spectra, &bins).map_err(|e| LabError::Numeric(e.to_string()))?;
    let beta = params.beta;
    let alpha_eff = params.beta + params.theta;
    let dens = move |x: f64| -> Result<f64, LabError> {
        let fam = DensityFamily::Gaussian { alpha: alpha_eff };
        Ok(beta.sqrt()
            * dos_density(&fam, beta.sqrt() * x).map_err(|e| LabError::Numeric(e.to_string()))?)
    };
    let overlay: Result<Vec<f64>, LabError> =
        hist.centers().par_iter().map(|&x| dens(x)).collect();
    let ks = ks_vs_density(&pooled, dens, bins.lo, bins.hi, 4 * cfg.bins, false)?;
    let resid = (params.beta.ln()
        - crate::specfun::digamma(params.beta + params.theta)
            .map_err(|e| LabError::Numeric(e.to_string()))?)
    .abs();
    Ok(TodaDosOutput {
        report: TodaDosReport {
            n: cfg.n,
            trials: cfg.trials,
            beta: params.beta,
            theta: params.theta,
            theta_residual: resid,
            sampler,
            seed: cfg.seed,
            bins: cfg.bins,
            ks_vs_dos: ks,
            histogram_mass: hist.mass(),
        },
        histogram: hist,
        overlay: overlay?,
    })
}

// ───────────────────────── writers ─────────────────────────

/// Histogram + overlay as CSV: header row, fixed column order, 17
/// significant digits.
pub fn write_histogram_csv<W: Write>(
    mut w: W,
    hist: &Histogram,
    overlay: &[f64],
) -> std::io::Result<()> {
    writeln!(w, "bin_center,density,stderr,analytic_dos")?;
    for (i, c) in hist.centers().iter().enumerate() {
        writeln!(
            w,
            "{:.16e},{:.16e},{:.16e},{:.16e}",
            c, hist.density[i], hist.se[i], overlay[i]
        )?;
    }
    Ok(())
}

/// Spectra dump as CSV (columns: trial, index, value).
pub fn write_spectra_csv<W: Write>(mut w: W, spectra: &[Spectrum]) -> std::io::Result<()> {
    writeln!(w, "trial,index,value")?;
    for (t, s) in spectra.iter().enumerate() {
        for (i, v) in s.iter().enumerate() {
            writeln!(w, "{t},{i},{v:.16e}")?;
        }
    }
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), LabError> {
    let mut f = std::fs::File::create(path)?;
    let s = serde_json::to_string_pretty(value).map_err(|e| LabError::Numeric(e.to_string()))?;
    f.write_all(s.as_bytes())?;
    f.write_all(b"\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg() -> RunConfig {
        RunConfig {
            family: Family::GaussianAlpha,
            n: 40,
            trials: 300,
            alpha: 1.0,
            seed: 99,
            bins: 24,
            ..RunConfig::default()
        }
    }

    #[test]
    fn spectra_deterministic_rerun() {
        let cfg = small_cfg();
        let a = sample_spectra(&cfg).unwrap();
        let b = sample_spectra(&cfg).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().flatten().zip(b.iter().flatten()) {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    #[test]
    fn spectra_report_sane() {
        let out = run_sample_spectra(&small_cfg()).unwrap();
        assert_eq!(out.report.pooled_points, 40 * 300);
        assert!((out.report.histogram_mass - 1.0).abs() < 1e-12);
        assert!(out.report.ks_vs_dos < 0.2);
        // trials = 1, N = 2: two-atom histogram with mass 1
        let tiny = RunConfig { n: 2, trials: 1, bins: 2, ..small_cfg() };
        let out = run_sample_spectra(&tiny).unwrap();
        assert!((out.report.histogram_mass - 1.0).abs() < 1e-12);
    }

    #[test]
    fn moments_table_rows() {
        let cfg = RunConfig { n: 60, trials: 400, ..small_cfg() };
        let table = run_moments_table(&cfg, 4).unwrap();
        assert_eq!(table.rows.len(), 4);
        // odd-l rows vanish symbolically for the Gaussian family
        assert_eq!(table.rows[0].v_value, 0.0);
        assert_eq!(table.rows[0].identity_residual, 0.0);
        // l=2: v = 1+2α = 3, u = 1+α = 2
        assert_eq!(table.rows[1].v_value, 3.0);
        assert_eq!(table.rows[1].u_value, 2.0);
        // finite-N MC sits within a few SE + O(1/N) of v
        let row = &table.rows[1];
        assert!(
            (row.mc_mean - row.v_value).abs() < 5.0 * row.mc_se + 10.0 / cfg.n as f64,
            "mc {} vs v {}",
            row.mc_mean,
            row.v_value
        );
        assert!(run_moments_table(&cfg, 13).is_err());
    }

    #[test]
    fn fluctuations_linear_statistic() {
        let cfg = RunConfig { trials: 400, n: 64, ..small_cfg() };
        let rep = run_fluctuations(&cfg, &[0.0, 1.0]).unwrap();
        // P(x) = x: trace/N is a centered average of symmetric entries
        assert!(rep.skewness.abs() < 0.4, "{}", rep.skewness);
        assert!(run_fluctuations(&RunConfig { trials: 100, ..cfg.clone() }, &[0.0, 1.0]).is_err());
        assert!(run_fluctuations(&cfg, &[0.0]).is_err());
    }

    #[test]
    fn limit_check_runs() {
        let cfg = RunConfig { family: Family::GaussianAlpha, ..small_cfg() };
        let rep = run_limit_check(&cfg, &[5.0, 20.0]).unwrap();
        assert_eq!(rep.rows.len(), 2);
        assert!(rep.rows[1].sup_distance < rep.rows[0].sup_distance);
        assert!(run_limit_check(&cfg, &[5.0, 2.0]).is_err());
    }

    #[test]
    fn toda_dos_small() {
        let cfg = RunConfig { n: 24, trials: 200, beta: 2.0, bins: 30, ..small_cfg() };
        let out = run_toda_dos(&cfg, TodaSampler::Approximate, 0).unwrap();
        assert!(out.report.theta_residual < 1e-12);
        assert!((out.report.histogram_mass - 1.0).abs() < 1e-12);
        assert!(out.report.ks_vs_dos < 0.25);
    }

    #[test]
    fn csv_format_stable() {
        let hist = Histogram {
            edges: vec![0.0, 0.5, 1.0],
            density: vec![1.0, 1.0],
            se: vec![0.0, 0.0],
        };
        let mut buf = Vec::new();
        write_histogram_csv(&mut buf, &hist, &[0.9, 1.1]).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with("bin_center,density,stderr,analytic_dos\n"));
        assert!(s.contains("2.5000000000000000e-1"));
    }
}
