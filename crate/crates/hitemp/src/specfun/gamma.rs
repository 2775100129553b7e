//! Log-gamma and digamma.

use super::SpecFunError;

// Lanczos approximation, g = 7, 9 coefficients.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_ln_gamma(x: f64) -> f64 {
    // valid for x > 0.5
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Natural log of Γ(x) for x > 0. Relative error ≲ 1e−14.
pub fn log_gamma(x: f64) -> Result<f64, SpecFunError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecFunError::Domain(format!("log_gamma requires x > 0, got {x}")));
    }
    if x < 0.5 {
        // reflection keeps the small-argument accuracy
        let s = sin_pi(x);
        Ok(std::f64::consts::PI.ln() - s.ln() - lanczos_ln_gamma(1.0 - x))
    } else {
        Ok(lanczos_ln_gamma(x))
    }
}

/// sin(πx) with exact argument reduction.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - x.round();
    let s = (std::f64::consts::PI * r).sin();
    if (x.round() as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// (ln|Γ(x)|, sign of Γ(x)) for any non-pole real x.
pub fn ln_abs_gamma(x: f64) -> Result<(f64, f64), SpecFunError> {
    if x > 0.0 {
        return Ok((log_gamma(x)?, 1.0));
    }
    if x == x.floor() {
        return Err(SpecFunError::Pole(format!("gamma pole at {x}")));
    }
    // reflection: Γ(x) = π / (sin(πx) Γ(1−x))
    let s = sin_pi(x);
    let ln = std::f64::consts::PI.ln() - s.abs().ln() - log_gamma(1.0 - x)?;
    Ok((ln, s.signum()))
}

/// Digamma Γ'(x)/Γ(x) for x > 0. Absolute error ≲ 1e−13.
pub fn digamma(x: f64) -> Result<f64, SpecFunError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecFunError::Domain(format!("digamma requires x > 0, got {x}")));
    }
    let mut acc = 0.0;
    let mut t = x;
    while t < 10.0 {
        acc -= 1.0 / t;
        t += 1.0;
    }
    // asymptotic series with Bernoulli numbers up to B12
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    let series = t.ln() - 0.5 * inv
        - inv2
            * (1.0 / 12.0
                + inv2
                    * (-1.0 / 120.0
                        + inv2 * (1.0 / 252.0 + inv2 * (-1.0 / 240.0 + inv2 * (1.0 / 132.0)))));
    Ok(acc + series)
}
