//! Pattern-function kernels: the per-event functions whose sample means
//! estimate the CF and its Wirtinger derivatives from quadrature data.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{factorial, hermite, ln_factorial};

/// Records with |Re gamma| below this are poles of the pattern function.
pub const POLE_TOL: f64 = 1e-12;

/// Real exponents beyond this overflow exp() in f64.
const MAX_EXP: f64 = 700.0;
const LN_F64_MAX: f64 = 709.78;

const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Pattern function D_q^r(x, gamma); D_q^r = 0 for q < 0 or r < 0.
///
/// Magnitudes beyond f64 range come back as a range error carrying the
/// natural-log magnitude instead of a silent infinity.
pub fn pattern_d(q: i64, r: i64, x: f64, gamma: Complex64) -> Result<Complex64> {
    if q < 0 || r < 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if gamma.re.abs() < POLE_TOL {
        return Err(Error::Pole);
    }
    let arg = x * gamma - gamma * gamma * 0.5;
    if arg.re <= MAX_EXP {
        let value = d_finite(q as u32, r as u32, x, gamma, arg.exp());
        if value.is_finite() {
            return Ok(value);
        }
    }
    d_log(q as u32, r as u32, x, gamma, arg)
}

/// Direct evaluation with a caller-supplied exp(x gamma - gamma^2/2); the
/// exponential and the Hermite recurrence are shared across the composition
/// sum, which dominates the estimator's cost.
pub(crate) fn d_finite(q: u32, r: u32, x: f64, gamma: Complex64, exp_factor: Complex64) -> Complex64 {
    let s = 2.0 * gamma.re;
    // tables shared across the composition sum
    let mut h = [Complex64::new(0.0, 0.0); 17];
    let hz = gamma * SQRT_HALF;
    h[0] = Complex64::new(1.0, 0.0);
    if r >= 1 {
        h[1] = 2.0 * hz;
        for k in 1..r as usize {
            h[k + 1] = 2.0 * hz * h[k] - 2.0 * (k as f64) * h[k - 1];
        }
    }
    let mut xp = [0.0f64; 17];
    xp[0] = 1.0;
    for k in 0..r as usize {
        xp[k + 1] = xp[k] * x;
    }
    let r_fact = factorial(r);
    let mut sum = Complex64::new(0.0, 0.0);
    for k1 in 0..=r {
        // s^{-(q + k1 + 1)}
        let s_pow = s.powi(-((q + k1 + 1) as i32));
        let qk_fact = factorial(q + k1);
        for k2 in 0..=(r - k1) {
            let k3 = r - k1 - k2;
            let sign = if (q + k1 + k3) % 2 == 0 { 1.0 } else { -1.0 };
            let coef = sign * r_fact * qk_fact * 0.5f64.powi(k3 as i32 / 2)
                * if k3 % 2 == 1 { SQRT_HALF } else { 1.0 }
                / (factorial(k1) * factorial(k2) * factorial(k3))
                * s_pow;
            sum += coef * xp[k2 as usize] * h[k3 as usize];
        }
    }
    sum * exp_factor
}

/// Log-magnitude + phase assembly for magnitudes near or past f64 range.
fn d_log(q: u32, r: u32, x: f64, gamma: Complex64, arg: Complex64) -> Result<Complex64> {
    use std::f64::consts::PI;
    let s = 2.0 * gamma.re;
    let ln_s = s.abs().ln();
    let s_negative = s < 0.0;
    let mut terms: Vec<(f64, f64)> = Vec::new();
    for k1 in 0..=r {
        for k2 in 0..=(r - k1) {
            let k3 = r - k1 - k2;
            if x == 0.0 && k2 > 0 {
                continue;
            }
            let hval = hermite(k3, gamma * SQRT_HALF);
            if hval.norm() == 0.0 {
                continue;
            }
            let x_contrib = if k2 == 0 { 0.0 } else { (k2 as f64) * x.abs().ln() };
            let ln_mag = ln_factorial(r) - ln_factorial(k1) - ln_factorial(k2)
                - ln_factorial(k3)
                + ln_factorial(q + k1)
                - (k3 as f64 / 2.0) * std::f64::consts::LN_2
                - ((q + k1 + 1) as f64) * ln_s
                + x_contrib
                + arg.re
                + hval.norm().ln();
            let mut phase = arg.im + hval.arg();
            if (q + k1 + k3) % 2 == 1 {
                phase += PI;
            }
            if s_negative && (q + k1 + 1) % 2 == 1 {
                phase += PI;
            }
            if x < 0.0 && k2 % 2 == 1 {
                phase += PI;
            }
            terms.push((ln_mag, phase));
        }
    }
    if terms.is_empty() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let peak = terms.iter().map(|t| t.0).fold(f64::NEG_INFINITY, f64::max);
    if !peak.is_finite() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let acc: Complex64 = terms
        .iter()
        .map(|&(lm, ph)| (lm - peak).exp() * Complex64::from_polar(1.0, ph))
        .sum();
    if acc.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let total_ln = peak + acc.norm().ln();
    if total_ln > LN_F64_MAX {
        return Err(Error::Range { log_magnitude: total_ln });
    }
    Ok(Complex64::from_polar(total_ln.exp(), acc.arg()))
}

/// Per-event kernel of the CF-derivative sampler at beta != 0:
/// e^{i(m-n)phi} [ m D_n^{m-1}(x, g) + g D_n^m(x, g)
///              + n D_m^{n-1}(-x, g*) + g* D_m^n(-x, g*) ],  g = beta e^{i phi}.
pub(crate) fn derivative_kernel(
    m: u32,
    n: u32,
    beta: Complex64,
    x: f64,
    phi: f64,
) -> Result<Complex64> {
    let rot = Complex64::from_polar(1.0, phi);
    let gamma = beta * rot;
    if gamma.re.abs() < POLE_TOL {
        return Err(Error::Pole);
    }
    let gc = gamma.conj();
    let arg1 = x * gamma - gamma * gamma * 0.5;
    let arg2 = -x * gc - gc * gc * 0.5;
    let phase = Complex64::from_polar(1.0, (m as f64 - n as f64) * phi);
    if arg1.re <= MAX_EXP && arg2.re <= MAX_EXP {
        let e1 = arg1.exp();
        let e2 = arg2.exp();
        let mut acc = gamma * d_finite(n, m, x, gamma, e1) + gc * d_finite(m, n, -x, gc, e2);
        if m > 0 {
            acc += (m as f64) * d_finite(n, m - 1, x, gamma, e1);
        }
        if n > 0 {
            acc += (n as f64) * d_finite(m, n - 1, -x, gc, e2);
        }
        if acc.is_finite() {
            return Ok(phase * acc);
        }
    }
    // overflow-safe route
    let mut acc = gamma * pattern_d(n as i64, m as i64, x, gamma)?
        + gc * pattern_d(m as i64, n as i64, -x, gc)?;
    acc += (m as f64) * pattern_d(n as i64, m as i64 - 1, x, gamma)?;
    acc += (n as f64) * pattern_d(m as i64, n as i64 - 1, -x, gc)?;
    Ok(phase * acc)
}

/// Coefficient k! l! / (sqrt(2^{k+l}) (k+l)!) of the moment kernel.
pub(crate) fn moment_coefficient(k: u32, l: u32) -> f64 {
    factorial(k) * factorial(l) / (2.0f64.powf((k + l) as f64 / 2.0) * factorial(k + l))
}

/// Per-event kernel whose mean estimates <a^dag^k a^l>.
pub(crate) fn moment_kernel(k: u32, l: u32, coef: f64, x: f64, phi: f64) -> Complex64 {
    let h = crate::specfun::hermite_real(k + l, x * SQRT_HALF);
    Complex64::from_polar(coef * h, (k as f64 - l as f64) * phi)
}
