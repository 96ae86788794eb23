//! Special functions and combinatorics: Hermite and Laguerre polynomials,
//! factorials and 3-part compositions used by the analytic characteristic
//! functions and the pattern-function kernels.
//!
//! Recurrences are the primary evaluation path; they are numerically stabler
//! than coefficient sums for the complex arguments the pattern functions need.

use std::sync::LazyLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest n for which n! is exactly representable in f64.
const FACT_EXACT_MAX: u32 = 20;
/// Largest n for which n! is finite in f64.
const FACT_F64_MAX: u32 = 170;

static FACT_TABLE: LazyLock<[f64; (FACT_F64_MAX + 1) as usize]> = LazyLock::new(|| {
    let mut t = [1.0; (FACT_F64_MAX + 1) as usize];
    for n in 1..t.len() {
        t[n] = t[n - 1] * n as f64;
    }
    t
});

/// One term (k1, k2, k3) of a 3-part composition, k1 + k2 + k3 = r.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Composition3 {
    pub k1: u32,
    pub k2: u32,
    pub k3: u32,
}

/// Physicists' Hermite polynomial H_n(z), three-term recurrence
/// H_{n+1}(z) = 2 z H_n(z) - 2 n H_{n-1}(z).
pub fn hermite(n: u32, z: Complex64) -> Complex64 {
    let mut prev = Complex64::new(1.0, 0.0);
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * z;
    for k in 1..n {
        let next = 2.0 * z * cur - 2.0 * (k as f64) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// H_n(x) for real x.
pub fn hermite_real(n: u32, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * (k as f64) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Laguerre polynomial L_n(x), recurrence
/// (n+1) L_{n+1}(x) = (2n+1-x) L_n(x) - n L_{n-1}(x).
pub fn laguerre(n: u32, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// n!, exact for n <= 20, via the f64 table up to 170, log-gamma beyond.
pub fn factorial(n: u32) -> f64 {
    if n <= FACT_F64_MAX {
        FACT_TABLE[n as usize]
    } else {
        ln_factorial(n).exp()
    }
}

/// ln(n!), exact table for small n, log-gamma beyond.
pub fn ln_factorial(n: u32) -> f64 {
    if n <= FACT_EXACT_MAX {
        FACT_TABLE[n as usize].ln()
    } else {
        statrs::function::gamma::ln_gamma(n as f64 + 1.0)
    }
}

/// Multinomial coefficient r! / (k1! k2! k3!), requiring k1 + k2 + k3 = r.
pub fn multinomial(r: u32, k1: u32, k2: u32, k3: u32) -> Result<f64> {
    if k1 + k2 + k3 != r {
        return Err(Error::Domain(format!(
            "multinomial parts {k1}+{k2}+{k3} do not sum to {r}"
        )));
    }
    if r <= FACT_F64_MAX {
        Ok(factorial(r) / (factorial(k1) * factorial(k2) * factorial(k3)))
    } else {
        Ok((ln_factorial(r) - ln_factorial(k1) - ln_factorial(k2) - ln_factorial(k3)).exp())
    }
}

/// All (k1, k2, k3) with k1 + k2 + k3 = r, lexicographic in (k1, k2, k3).
/// Count is (r+1)(r+2)/2.
pub fn compositions3(r: u32) -> Vec<Composition3> {
    let mut out = Vec::with_capacity(((r + 1) * (r + 2) / 2) as usize);
    for k1 in 0..=r {
        for k2 in 0..=(r - k1) {
            out.push(Composition3 {
                k1,
                k2,
                k3: r - k1 - k2,
            });
        }
    }
    out
}
