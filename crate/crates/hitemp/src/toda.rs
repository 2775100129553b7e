//! The periodic Toda chain under its Gibbs measure.
//!
//! Hamiltonian H = ½Σp² + ΣV(r_j) with V(x) = e^{−x} + x − 1 on the
//! relative distances r_j = q_{j+1} − q_j (periodic: Σr = 0 on the
//! constrained phase space, Σp = 0 by translation invariance).
//!
//! Flaschka variables a_j = −p_j, b_j = e^{−r_j/2} turn the flow into a Lax
//! equation on a periodic Jacobi matrix, so the Lax spectrum is conserved.
//! Under the θ-tilted approximate Gibbs measure the matrix entries become
//! independent: p ~ N(0, 1/β) and e^{−r/2} ~ chi_{2(β+θ)}/√(2β), with θ > 0
//! the unique root of log β = digamma(β + θ) (which makes ⟨r⟩ = 0).

use crate::dist::{DistError, DistSpec, Sampler};
use crate::rng::RngState;
use crate::specfun::{digamma, SpecFunError};
use crate::tridiag::PeriodicJacobi;

/// Phase-space point in (momentum, stretch) coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct TodaState {
    pub p: Vec<f64>,
    pub r: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TodaError {
    Params(String),
    Overflow(String),
    Instability(String),
    Sampling(String),
}

impl std::fmt::Display for TodaError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TodaError::Params(m) => write!(f, "bad parameters: {m}"),
            TodaError::Overflow(m) => write!(f, "overflow: {m}"),
            TodaError::Instability(m) => write!(f, "integrator instability: {m}"),
            TodaError::Sampling(m) => write!(f, "sampling failure: {m}"),
        }
    }
}

impl std::error::Error for TodaError {}

impl From<DistError> for TodaError {
    fn from(e: DistError) -> Self {
        TodaError::Sampling(e.to_string())
    }
}

/// Run parameters: N sites, inverse temperature β, tilt θ.
#[derive(Debug, Clone, Copy)]
pub struct TodaParams {
    pub n: usize,
    pub beta: f64,
    pub theta: f64,
}

impl TodaParams {
    /// Solve θ from β and bundle.
    pub fn new(n: usize, beta: f64) -> Result<Self, TodaError> {
        if n < 3 {
            return Err(TodaError::Params(format!("N = {n} < 3")));
        }
        let theta = solve_theta(beta).map_err(|e| TodaError::Params(e.to_string()))?;
        Ok(TodaParams { n, beta, theta })
    }
}

/// V_T(x) = e^{−x} + x − 1.
#[inline]
pub fn toda_potential(x: f64) -> f64 {
    (-x).exp() + x - 1.0
}

/// V_T′(x) = 1 − e^{−x}.
#[inline]
pub fn toda_force(x: f64) -> f64 {
    1.0 - (-x).exp()
}

/// H(p, r) = ½Σp² + ΣV_T(r_j) over all N periodic bonds.
pub fn hamiltonian(state: &TodaState) -> Result<f64, TodaError> {
    let mut h = 0.0;
    for &p in &state.p {
        h += 0.5 * p * p;
    }
    for &r in &state.r {
        let v = toda_potential(r);
        if !v.is_finite() {
            return Err(TodaError::Overflow(format!("V_T({r}) overflowed")));
        }
        h += v;
    }
    Ok(h)
}

/// Flaschka map: Lax matrix with a_j = −p_j on the diagonal and
/// b_j = e^{−r_j/2} on the off-diagonal/corner.
pub fn flaschka(state: &TodaState) -> Result<PeriodicJacobi, TodaError> {
    let n = state.p.len();
    if n < 3 || state.r.len() != n {
        return Err(TodaError::Params(format!(
            "flaschka needs N >= 3 with matching lengths, got p:{} r:{}",
            n,
            state.r.len()
        )));
    }
    let diag: Vec<f64> = state.p.iter().map(|&p| -p).collect();
    let bs: Vec<f64> = state.r.iter().map(|&r| (-0.5 * r).exp()).collect();
    let corner = bs[n - 1];
    PeriodicJacobi::new(diag, bs[..n - 1].to_vec(), corner)
        .map_err(|e| TodaError::Overflow(e.to_string()))
}

/// The unique θ > 0 with log β = digamma(β + θ), by safeguarded Newton.
pub fn solve_theta(beta: f64) -> Result<f64, SpecFunError> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(SpecFunError::Domain(format!("solve_theta needs beta > 0, got {beta}")));
    }
    let target = beta.ln();
    // digamma is increasing: bracket θ in (max(0, lo), hi)
    let g = |th: f64| digamma(beta + th).map(|v| v - target);
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    while g(hi)? < 0.0 {
        hi *= 2.0;
        if hi > 1e6 {
            return Err(SpecFunError::Accuracy {
                msg: "theta bracket expansion failed".into(),
                bound: hi,
            });
        }
    }
    let mut th = 0.5f64.min(0.5 * hi);
    for _ in 0..200 {
        let f = g(th)?;
        if f > 0.0 {
            hi = th;
        } else {
            lo = th;
        }
        // digamma'(x) ≈ 1/x + 1/(2x²)
        let x = beta + th;
        let dpsi = 1.0 / x + 0.5 / (x * x) + 1.0 / (6.0 * x * x * x);
        let mut next = th - f / dpsi;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - th).abs() < 1e-15 * th.max(1.0) {
            th = next;
            break;
        }
        th = next;
    }
    let resid = g(th)?.abs();
    if resid > 1e-12 {
        return Err(SpecFunError::Accuracy { msg: "theta residual too large".into(), bound: resid });
    }
    Ok(th)
}

/// One draw from the approximate (tilted, product) Gibbs measure:
/// p_j ~ N(0, 1/β) i.i.d., r_j = −2 log(chi_{2(β+θ)}/√(2β)).
pub fn sample_gibbs_approx(params: &TodaParams, rng: RngState) -> Result<TodaState, TodaError> {
    let mut s = Sampler::new(rng);
    let n = params.n;
    let sd = (1.0 / params.beta).sqrt();
    let p: Vec<f64> = (0..n).map(|_| sd * s.standard_normal()).collect();
    let scale = 1.0 / (2.0 * params.beta).sqrt();
    let mut r = Vec::with_capacity(n);
    for _ in 0..n {
        let c = scale * s.sample(DistSpec::Chi { dof: 2.0 * (params.beta + params.theta) })?;
        r.push(-2.0 * c.ln());
    }
    Ok(TodaState { p, r })
}

/// Result of the constrained sampler: the state plus chain diagnostics.
#[derive(Debug, Clone)]
pub struct ConstrainedSample {
    pub state: TodaState,
    pub acceptance_rate: f64,
    /// true when the post-adaptation acceptance rate left [0.1, 0.9]
    pub tuning_warning: bool,
}

/// One draw from the constrained Gibbs measure (Σp = Σr = 0): momenta are
/// mean-subtracted Gaussians (the exact conditional law); stretches are
/// sampled by a pairwise-move Metropolis chain on the simplex Σr = 0
/// targeting ∝ e^{−βΣV_T(r)}.
///
/// `budget` counts post-burn-in pair moves; burn-in is 50·N moves with scale
/// adaptation toward 40% acceptance.
pub fn sample_gibbs_constrained(
    params: &TodaParams,
    rng: RngState,
    budget: usize,
) -> Result<ConstrainedSample, TodaError> {
    let mut s = Sampler::new(rng);
    let n = params.n;
    let beta = params.beta;
    let sd = (1.0 / beta).sqrt();
    let mut p: Vec<f64> = (0..n).map(|_| sd * s.standard_normal()).collect();
    let pm = p.iter().sum::<f64>() / n as f64;
    for v in &mut p {
        *v -= pm;
    }

    let mut r = vec![0.0f64; n];
    let mut scale = 1.0 / beta.sqrt().max(0.5);
    let burnin = 50 * n;
    let mut accepted_adapt = 0usize;
    let mut window = 0usize;
    for step in 0..burnin + budget {
        let i = (s.uniform() * n as f64) as usize % n;
        let mut j = (s.uniform() * (n - 1) as f64) as usize % (n - 1);
        if j >= i {
            j += 1;
        }
        let delta = scale * (2.0 * s.uniform() - 1.0);
        let de = toda_potential(r[i] + delta) + toda_potential(r[j] - delta)
            - toda_potential(r[i])
            - toda_potential(r[j]);
        let accept = de <= 0.0 || s.uniform() < (-beta * de).exp();
        if accept {
            r[i] += delta;
            r[j] -= delta;
        }
        if step < burnin {
            if accept {
                accepted_adapt += 1;
            }
            window += 1;
            if window == 100 {
                let rate = accepted_adapt as f64 / 100.0;
                if rate > 0.45 {
                    scale *= 1.12;
                } else if rate < 0.35 {
                    scale /= 1.12;
                }
                accepted_adapt = 0;
                window = 0;
            }
        } else if accept {
            accepted_adapt += 1; // reuse the counter post-burn-in
        }
        if step == burnin {
            accepted_adapt = 0;
        }
    }
    let rate = if budget > 0 { accepted_adapt as f64 / budget as f64 } else { f64::NAN };
    // exact re-centering guards the Σr = 0 invariant against drift
    let rm = r.iter().sum::<f64>() / n as f64;
    for v in &mut r {
        *v -= rm;
    }
    Ok(ConstrainedSample {
        state: TodaState { p, r },
        acceptance_rate: rate,
        tuning_warning: budget > 0 && !(0.1..=0.9).contains(&rate),
    })
}

/// Strang-split leapfrog for the periodic Toda flow in (p, r):
/// ṙ_j = p_{j+1} − p_j, ṗ_j = V′(r_j) − V′(r_{j−1}); both half-flows are
/// exact, so the scheme is symplectic in the underlying (p, q).
pub fn integrate(state: &TodaState, dt: f64, steps: usize) -> Result<TodaState, TodaError> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(TodaError::Params(format!("dt = {dt}")));
    }
    verlet_steps(state, dt, steps)
}

/// Störmer–Verlet core; `dt` may be negative (used by the Yoshida
/// composition's backward substep).
fn verlet_steps(state: &TodaState, dt: f64, steps: usize) -> Result<TodaState, TodaError> {
    let n = state.p.len();
    if state.r.len() != n || n < 2 {
        return Err(TodaError::Params("state length mismatch".into()));
    }
    let mut p = state.p.clone();
    let mut r = state.r.clone();
    let half = 0.5 * dt;
    let kick = |p: &mut [f64], r: &[f64], h: f64| {
        let mut prev = toda_force(r[n - 1]);
        for j in 0..n {
            let fj = toda_force(r[j]);
            p[j] += h * (fj - prev);
            prev = fj;
        }
    };
    let drift = |r: &mut [f64], p: &[f64], h: f64| {
        for j in 0..n - 1 {
            r[j] += h * (p[j + 1] - p[j]);
        }
        r[n - 1] += h * (p[0] - p[n - 1]);
    };
    kick(&mut p, &r, half);
    for step in 0..steps {
        drift(&mut r, &p, dt);
        if step + 1 == steps {
            kick(&mut p, &r, half);
        } else {
            kick(&mut p, &r, dt);
        }
        if step % 1024 == 0 {
            let sup = p.iter().chain(r.iter()).fold(0.0f64, |a, v| a.max(v.abs()));
            if sup > 1e10 {
                return Err(TodaError::Instability(format!("state norm {sup} at step {step}")));
            }
        }
    }
    Ok(TodaState { p, r })
}

/// Fourth-order Yoshida composition of the same kick/drift splitting: each
/// step is three Störmer–Verlet substeps with scaled time steps
/// (w₁dt, w₀dt, w₁dt), w₁ = 1/(2−2^{1/3}), w₀ = 1 − 2w₁ < 0. Same
/// invariants, energy error O(dt⁴) instead of O(dt²).
pub fn integrate_yoshida4(state: &TodaState, dt: f64, steps: usize) -> Result<TodaState, TodaError> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(TodaError::Params(format!("dt = {dt}")));
    }
    const W1: f64 = 1.351_207_191_959_657_8; // 1/(2 − 2^{1/3})
    const W0: f64 = 1.0 - 2.0 * W1;
    let mut cur = state.clone();
    for _ in 0..steps {
        cur = verlet_steps(&cur, W1 * dt, 1)?;
        cur = verlet_steps(&cur, W0 * dt, 1)?;
        cur = verlet_steps(&cur, W1 * dt, 1)?;
    }
    Ok(cur)
}
