//! Statistical reconstruction of the CF and its Wirtinger derivatives from
//! phase-tagged quadrature records, with full covariance bookkeeping,
//! determinant error propagation and signed significance.
//!
//! Every GBM entry is estimated from the same record set in one pass, and the
//! full cross-covariance of all entry components is accumulated from the
//! per-event kernel vectors. A diagonal-only mode is kept for comparison.
//!
//! At beta = 0 the pattern-function kernel of the sampling formula has its
//! pole on every record, so derivative entries at the origin are sampled
//! through the equivalent Hermite moment kernels
//! d^m d*^n Phi(0) = (-1)^n <a^dag^m a^n>.

mod pattern;

pub use pattern::{pattern_d, POLE_TOL};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::gbm::{linalg, CriterionResult, CriterionSource, GbmSpec};
use crate::states::DerivativeOrder;

/// Fraction of pole-excluded records beyond which the data are rejected.
const MAX_POLE_FRACTION: f64 = 1e-3;

/// Default half-width of the phase window of the direct CF sampler, radians.
pub const DEFAULT_PHASE_WINDOW: f64 = 0.01;

/// One balanced-homodyne event: quadrature value and local-oscillator phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRecord {
    pub x: f64,
    pub phase: f64,
}

/// Immutable set of phase-tagged quadrature records, phases in [0, pi).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureDataset {
    records: Vec<QuadratureRecord>,
}

impl QuadratureDataset {
    pub fn new(records: Vec<QuadratureRecord>) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::InsufficientData("dataset needs at least one record".into()));
        }
        for (i, r) in records.iter().enumerate() {
            if !r.x.is_finite() || !r.phase.is_finite() {
                return Err(Error::InvalidState(format!("non-finite record at index {i}")));
            }
            if !(0.0..std::f64::consts::PI).contains(&r.phase) {
                return Err(Error::InvalidState(format!(
                    "phase {} outside [0, pi) at index {i}",
                    r.phase
                )));
            }
        }
        Ok(QuadratureDataset { records })
    }

    pub fn records(&self) -> &[QuadratureRecord] {
        &self.records
    }

    /// Record count M; at least 1 by construction.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.records.len()
    }
}

/// Complex estimate with the 2x2 covariance of its real/imaginary parts.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ComplexEstimate {
    #[serde(with = "crate::states::serde_complex")]
    pub value: Complex64,
    pub cov: [[f64; 2]; 2],
    pub samples: usize,
}

impl ComplexEstimate {
    pub fn exact(value: Complex64, samples: usize) -> Self {
        ComplexEstimate { value, cov: [[0.0; 2]; 2], samples }
    }

    /// Combined standard error sqrt(var_re + var_im).
    pub fn std_error(&self) -> f64 {
        (self.cov[0][0] + self.cov[1][1]).max(0.0).sqrt()
    }
}

/// Covariance propagation mode for determinant errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CovarianceMode {
    /// Full cross-covariance across all matrix entries (default).
    Full,
    /// Per-entry 2x2 blocks only; naive propagation for comparison.
    Diagonal,
}

/// Estimated GBM: entry values plus the full cross-covariance of all
/// 2 N^2 real entry components (row-major entries, re before im).
#[derive(Debug, Clone)]
pub struct EstimatedMatrix {
    dim: usize,
    values: Vec<Complex64>,
    cov: Vec<f64>,
    samples: usize,
    excluded: usize,
}

impl EstimatedMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn excluded(&self) -> usize {
        self.excluded
    }

    pub fn value(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.dim + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> ComplexEstimate {
        let e = i * self.dim + j;
        let k = self.dim * self.dim * 2;
        let cov = [
            [self.cov[(2 * e) * k + 2 * e], self.cov[(2 * e) * k + 2 * e + 1]],
            [self.cov[(2 * e + 1) * k + 2 * e], self.cov[(2 * e + 1) * k + 2 * e + 1]],
        ];
        ComplexEstimate { value: self.values[e], cov, samples: self.samples }
    }
}

#[derive(Clone, Copy, Default)]
struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    #[inline]
    fn add(&mut self, v: f64) {
        let y = v - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// One estimation target: a signed kernel whose mean is a matrix entry or a
/// requested derivative.
#[derive(Debug, Clone, Copy)]
enum Target {
    /// sign * (-1)^l * <a^dag^k a^l> via the Hermite moment kernel.
    Moment { k: u32, l: u32, coef: f64, sign: f64 },
    /// sign * d^m d*^n Phi(delta) via the pattern-function kernel.
    Pattern { m: u32, n: u32, delta: Complex64, sign: f64 },
}

impl Target {
    fn derivative(sign: f64, order: DerivativeOrder, delta: Complex64) -> Target {
        if delta.norm() == 0.0 {
            let par = if order.d_beta_conj % 2 == 0 { 1.0 } else { -1.0 };
            Target::Moment {
                k: order.d_beta,
                l: order.d_beta_conj,
                coef: pattern::moment_coefficient(order.d_beta, order.d_beta_conj),
                sign: sign * par,
            }
        } else {
            Target::Pattern {
                m: order.d_beta,
                n: order.d_beta_conj,
                delta,
                sign,
            }
        }
    }

    #[inline]
    fn eval(&self, x: f64, phi: f64) -> Result<Complex64> {
        match *self {
            Target::Moment { k, l, coef, sign } => Ok(sign * pattern::moment_kernel(k, l, coef, x, phi)),
            Target::Pattern { m, n, delta, sign } => {
                Ok(sign * pattern::derivative_kernel(m, n, delta, x, phi)?)
            }
        }
    }
}

struct JointEstimate {
    values: Vec<Complex64>,
    /// (2T)x(2T) covariance of the estimates (sample covariance / M).
    cov: Vec<f64>,
    samples: usize,
    excluded: usize,
}

/// Single pass over the records: joint means and (optionally full)
/// cross-covariance of all targets. A record on the pole set of any pattern
/// target is excluded from every target so all estimates share one record
/// set; exclusions beyond 0.1% of M are a data-quality error.
fn joint_estimate(data: &QuadratureDataset, targets: &[Target], full_cov: bool) -> Result<JointEstimate> {
    let t = targets.len();
    let comps = 2 * t;
    let mut sums = vec![Kahan::default(); comps];
    let mut prods = vec![Kahan::default(); comps * comps];
    let mut kernel = vec![0.0f64; comps];
    let mut used = 0usize;
    let mut excluded = 0usize;

    'records: for rec in data.records() {
        for (idx, target) in targets.iter().enumerate() {
            match target.eval(rec.x, rec.phase) {
                Ok(v) => {
                    kernel[2 * idx] = v.re;
                    kernel[2 * idx + 1] = v.im;
                }
                Err(Error::Pole) => {
                    excluded += 1;
                    continue 'records;
                }
                Err(e) => return Err(e),
            }
        }
        used += 1;
        for a in 0..comps {
            sums[a].add(kernel[a]);
            if full_cov {
                for b in a..comps {
                    prods[a * comps + b].add(kernel[a] * kernel[b]);
                }
            } else {
                let lo = (a / 2) * 2;
                for b in a..=(lo + 1) {
                    prods[a * comps + b].add(kernel[a] * kernel[b]);
                }
            }
        }
    }

    let total = data.len();
    if used == 0 {
        return Err(Error::InsufficientData("all records excluded as pattern-function poles".into()));
    }
    if (excluded as f64) > MAX_POLE_FRACTION * total as f64 {
        return Err(Error::DataQuality(format!(
            "{excluded} of {total} records on the pattern-function pole set (limit {:.2}%)",
            100.0 * MAX_POLE_FRACTION
        )));
    }

    let m = used as f64;
    let means: Vec<f64> = sums.iter().map(|k| k.sum / m).collect();
    let mut cov = vec![0.0f64; comps * comps];
    if used > 1 {
        for a in 0..comps {
            for b in a..comps {
                let p = prods[a * comps + b].sum;
                if !full_cov && b > (a / 2) * 2 + 1 {
                    continue;
                }
                let c = (p - m * means[a] * means[b]) / (m - 1.0) / m;
                cov[a * comps + b] = c;
                cov[b * comps + a] = c;
            }
        }
    }
    let values = (0..t)
        .map(|i| Complex64::new(means[2 * i], means[2 * i + 1]))
        .collect();
    Ok(JointEstimate { values, cov, samples: used, excluded })
}

/// Direct CF sampler: e^{|beta|^2/2} <e^{i |beta| x}> over the records whose
/// phase lies within `phase_window` of pi/2 - arg(beta) (mod pi).
pub fn sample_cf_direct(
    data: &QuadratureDataset,
    beta: Complex64,
    phase_window: f64,
) -> Result<ComplexEstimate> {
    use std::f64::consts::PI;
    if beta.norm() == 0.0 {
        return Ok(ComplexEstimate::exact(Complex64::new(1.0, 0.0), data.len()));
    }
    let target = (PI / 2.0 - beta.arg()).rem_euclid(PI);
    let amp = beta.norm();
    let scale = (beta.norm_sqr() / 2.0).exp();

    let mut sums = [Kahan::default(); 2];
    let mut prods = [Kahan::default(); 3];
    let mut count = 0usize;
    for rec in data.records() {
        let d = (rec.phase - target).rem_euclid(PI);
        if d.min(PI - d) > phase_window {
            continue;
        }
        let z = Complex64::from_polar(1.0, amp * rec.x);
        sums[0].add(z.re);
        sums[1].add(z.im);
        prods[0].add(z.re * z.re);
        prods[1].add(z.re * z.im);
        prods[2].add(z.im * z.im);
        count += 1;
    }
    if count == 0 {
        return Err(Error::InsufficientData(format!(
            "no records within {phase_window} rad of phase {target:.4}"
        )));
    }
    let m = count as f64;
    let mean = Complex64::new(sums[0].sum / m, sums[1].sum / m);
    let mut cov = [[0.0f64; 2]; 2];
    if count > 1 {
        let s2 = scale * scale;
        cov[0][0] = s2 * (prods[0].sum - m * mean.re * mean.re) / (m - 1.0) / m;
        cov[1][1] = s2 * (prods[2].sum - m * mean.im * mean.im) / (m - 1.0) / m;
        let c = s2 * (prods[1].sum - m * mean.re * mean.im) / (m - 1.0) / m;
        cov[0][1] = c;
        cov[1][0] = c;
    }
    Ok(ComplexEstimate { value: scale * mean, cov, samples: count })
}

/// Sample d_beta^m d_beta*^n Phi(beta) from the whole record set.
/// With (m, n) = (0, 0) this estimates Phi(beta) itself.
pub fn sample_cf_derivative(
    data: &QuadratureDataset,
    order: DerivativeOrder,
    beta: Complex64,
) -> Result<ComplexEstimate> {
    let target = Target::derivative(1.0, order, beta);
    let est = joint_estimate(data, &[target], true)?;
    Ok(ComplexEstimate {
        value: est.values[0],
        cov: [
            [est.cov[0], est.cov[1]],
            [est.cov[2], est.cov[3]],
        ],
        samples: est.samples,
    })
}

/// Sample the normally ordered moment <a^dag^k a^l>.
pub fn sample_moment(data: &QuadratureDataset, k: u32, l: u32) -> Result<ComplexEstimate> {
    let target = Target::Moment { k, l, coef: pattern::moment_coefficient(k, l), sign: 1.0 };
    let est = joint_estimate(data, &[target], true)?;
    Ok(ComplexEstimate {
        value: est.values[0],
        cov: [
            [est.cov[0], est.cov[1]],
            [est.cov[2], est.cov[3]],
        ],
        samples: est.samples,
    })
}

/// Estimate every GBM entry of `spec` jointly from the data.
pub fn estimate_gbm(data: &QuadratureDataset, spec: &GbmSpec) -> Result<EstimatedMatrix> {
    spec.validate()?;
    let n = spec.dim();
    let mut targets = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (sign, order, delta) = spec.entry_request(i, j);
            targets.push(Target::derivative(sign, order, delta));
        }
    }
    let est = joint_estimate(data, &targets, true).map_err(|e| match e {
        Error::Pole => Error::DataQuality("pattern-function pole while estimating GBM".into()),
        other => other,
    })?;
    Ok(EstimatedMatrix {
        dim: n,
        values: est.values,
        cov: est.cov,
        samples: est.samples,
        excluded: est.excluded,
    })
}

/// Determinant of an estimated GBM with first-order error propagation:
/// gradient d(det)/d(entry) from cofactors, contracted against the entry
/// cross-covariance (full or per-entry diagonal).
pub fn det_with_error(matrix: &EstimatedMatrix, mode: CovarianceMode) -> Result<CriterionResult> {
    let n = matrix.dim;
    check_statistical_hermiticity(matrix)?;
    let det = linalg::det_complex(&matrix.values, n).re;

    // d Re(det) / d re(a_ij) = Re(cof_ij), d Re(det) / d im(a_ij) = -Im(cof_ij)
    let comps = 2 * n * n;
    let mut grad = vec![0.0f64; comps];
    for i in 0..n {
        for j in 0..n {
            let cof = linalg::cofactor(&matrix.values, n, i, j);
            grad[2 * (i * n + j)] = cof.re;
            grad[2 * (i * n + j) + 1] = -cof.im;
        }
    }
    let mut var = 0.0;
    for a in 0..comps {
        for b in 0..comps {
            if mode == CovarianceMode::Diagonal && a / 2 != b / 2 {
                continue;
            }
            var += grad[a] * matrix.cov[a * comps + b] * grad[b];
        }
    }
    Ok(CriterionResult::statistical(det, var.max(0.0).sqrt()))
}

fn check_statistical_hermiticity(matrix: &EstimatedMatrix) -> Result<()> {
    let n = matrix.dim;
    let max_norm = matrix.values.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    for i in 0..n {
        for j in 0..i {
            let a = matrix.entry(i, j);
            let b = matrix.entry(j, i);
            let dev = (a.value - b.value.conj()).norm();
            let se = (a.std_error().powi(2) + b.std_error().powi(2)).sqrt();
            let tol = 6.0 * se + 1e-9 * max_norm.max(1.0);
            if dev > tol {
                return Err(Error::NumericalInconsistency(format!(
                    "estimated matrix not Hermitian within statistics at ({i},{j}): \
                     deviation {dev:.3e} > {tol:.3e}"
                )));
            }
        }
    }
    Ok(())
}

/// Criterion evaluation backed by a dataset; implements the same interface
/// as the analytic providers so grid scans work on either.
pub struct DatasetCriterion<'a> {
    pub data: &'a QuadratureDataset,
    pub cov_mode: CovarianceMode,
}

impl CriterionSource for DatasetCriterion<'_> {
    fn evaluate(&self, spec: &GbmSpec) -> Result<CriterionResult> {
        let m = estimate_gbm(self.data, spec)?;
        det_with_error(&m, self.cov_mode)
    }
}

/// Chi-square diagnostic of the phase histogram against uniform on [0, pi).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PhaseUniformity {
    pub chi2: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// Guard for the sampling formula's uniform-phase precondition; passes when
/// the statistic is below the 99.9% chi-square quantile for bins-1 dof.
pub fn phase_uniformity(data: &QuadratureDataset, bins: usize) -> Result<PhaseUniformity> {
    if bins < 2 {
        return Err(Error::Domain("phase uniformity needs at least 2 bins".into()));
    }
    let mut counts = vec![0usize; bins];
    for rec in data.records() {
        let mut idx = (rec.phase / std::f64::consts::PI * bins as f64) as usize;
        if idx >= bins {
            idx = bins - 1;
        }
        counts[idx] += 1;
    }
    let expected = data.len() as f64 / bins as f64;
    let chi2: f64 = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    let dist = ChiSquared::new((bins - 1) as f64)
        .map_err(|e| Error::Domain(format!("chi-square setup: {e}")))?;
    let threshold = dist.inverse_cdf(0.999);
    Ok(PhaseUniformity { chi2, threshold, pass: chi2 < threshold })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    fn uniform_phase_dataset(m: usize, seed: u64, x_of: impl Fn(f64, &mut StdRng) -> f64) -> QuadratureDataset {
        let mut rng = StdRng::seed_from_u64(seed);
        let records = (0..m)
            .map(|_| {
                let phase = rng.random_range(0.0..PI);
                QuadratureRecord { x: x_of(phase, &mut rng), phase }
            })
            .collect();
        QuadratureDataset::new(records).unwrap()
    }

    fn gaussian(rng: &mut StdRng) -> f64 {
        rand_distr::Distribution::sample(&rand_distr::StandardNormal, rng)
    }

    #[test]
    fn direct_sampler_at_origin() {
        let data = uniform_phase_dataset(100, 1, |_, rng| gaussian(rng));
        let e = sample_cf_direct(&data, Complex64::new(0.0, 0.0), 0.01).unwrap();
        assert_eq!(e.value, Complex64::new(1.0, 0.0));
        assert_eq!(e.cov, [[0.0; 2]; 2]);
    }

    #[test]
    fn direct_sampler_empty_window() {
        let data = QuadratureDataset::new(vec![QuadratureRecord { x: 0.1, phase: 0.2 }]).unwrap();
        let r = sample_cf_direct(&data, Complex64::new(0.0, 2.0), 1e-6);
        assert!(matches!(r, Err(Error::InsufficientData(_))));
    }

    #[test]
    fn derivative_sampler_normalization() {
        // (m,n) = (0,0) at beta = 0 is exactly 1 per record
        let data = uniform_phase_dataset(1000, 2, |_, rng| gaussian(rng));
        let e = sample_cf_derivative(&data, DerivativeOrder::new(0, 0), Complex64::new(0.0, 0.0))
            .unwrap();
        assert!((e.value - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(e.std_error() < 1e-12);
    }

    #[test]
    fn vacuum_cf_estimate() {
        // vacuum: Phi(beta) = 1 for the derivative sampler at any beta
        let data = uniform_phase_dataset(200_000, 3, |_, rng| gaussian(rng));
        let beta = Complex64::new(0.8, 0.3);
        let e = sample_cf_derivative(&data, DerivativeOrder::new(0, 0), beta).unwrap();
        let err = (e.value - Complex64::new(1.0, 0.0)).norm();
        assert!(err < 4.0 * e.std_error(), "err {err}, se {}", e.std_error());
    }

    #[test]
    fn thermal_moment_estimate() {
        // thermal quadrature variance 1 + 2 nbar
        let nbar: f64 = 0.5;
        let sd: f64 = (1.0 + 2.0 * nbar).sqrt();
        let data = uniform_phase_dataset(200_000, 4, |_, rng| sd * gaussian(rng));
        let e = sample_moment(&data, 1, 1).unwrap();
        assert!((e.value.re - nbar).abs() < 3.5 * e.std_error());
        let e00 = sample_moment(&data, 0, 0).unwrap();
        assert_eq!(e00.value, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn thermal_second_derivative_at_origin() {
        let nbar: f64 = 0.5;
        let sd: f64 = (1.0 + 2.0 * nbar).sqrt();
        let data = uniform_phase_dataset(200_000, 5, |_, rng| sd * gaussian(rng));
        let e = sample_cf_derivative(&data, DerivativeOrder::new(1, 1), Complex64::new(0.0, 0.0))
            .unwrap();
        assert!((e.value.re + nbar).abs() < 3.5 * e.std_error());
    }

    #[test]
    fn det_error_1x1_exact() {
        let data = uniform_phase_dataset(100, 6, |_, rng| gaussian(rng));
        let spec = GbmSpec::new(vec![0], vec![0], vec![Complex64::new(0.0, 0.0)]).unwrap();
        let m = estimate_gbm(&data, &spec).unwrap();
        let r = det_with_error(&m, CovarianceMode::Full).unwrap();
        assert_relative_eq!(r.det, 1.0, max_relative = 1e-12);
        assert_eq!(r.sigma, 0.0);
        assert!(r.significance.is_none());
    }

    #[test]
    fn det_error_2x2_diagonal_formula() {
        // hand-built 2x2 diagonal estimate with independent errors
        let (v11, v22) = (0.8, 1.7);
        let (s11, s22) = (0.01, 0.02);
        let n = 2;
        let comps = 2 * n * n;
        let mut cov = vec![0.0; comps * comps];
        cov[0] = s11 * s11; // re(entry 0,0)
        let e3 = 2 * 3; // re(entry 1,1)
        cov[e3 * comps + e3] = s22 * s22;
        let m = EstimatedMatrix {
            dim: n,
            values: vec![
                Complex64::new(v11, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(v22, 0.0),
            ],
            cov,
            samples: 1000,
            excluded: 0,
        };
        let r = det_with_error(&m, CovarianceMode::Full).unwrap();
        let expect = ((v22 * s11).powi(2) + (v11 * s22).powi(2)).sqrt();
        assert_relative_eq!(r.sigma, expect, max_relative = 1e-12);
        assert_relative_eq!(r.det, v11 * v22, max_relative = 1e-12);
        // significance consistency: sigma * significance = det
        assert_relative_eq!(r.significance.unwrap() * r.sigma, r.det, max_relative = 1e-12);
    }

    #[test]
    fn headline_significance_ratio() {
        let r = CriterionResult::statistical(-0.469, 0.007);
        assert_relative_eq!(r.significance.unwrap(), -67.0, epsilon = 0.05);
    }

    #[test]
    fn phase_uniformity_diagnostic() {
        let uniform = uniform_phase_dataset(100_000, 7, |_, rng| gaussian(rng));
        assert!(phase_uniformity(&uniform, 20).unwrap().pass);

        let clustered = QuadratureDataset::new(
            (0..1000).map(|_| QuadratureRecord { x: 0.0, phase: 1.0 }).collect(),
        )
        .unwrap();
        assert!(!phase_uniformity(&clustered, 20).unwrap().pass);
    }

    #[test]
    fn pole_exclusion_limit() {
        // phases clustered exactly on the pole of beta = i: arg gamma = +-pi/2
        let beta = Complex64::new(0.0, 1.0);
        let mut records: Vec<QuadratureRecord> =
            (0..1000).map(|k| QuadratureRecord { x: 0.1, phase: 1e-4 * (k % 7) as f64 }).collect();
        // pole phase for beta = i is phi = pi/2 - 0 ... gamma = i e^{i phi}; Re = -sin(phi)
        for r in records.iter_mut().take(50) {
            r.phase = 0.0; // Re gamma = 0 exactly
        }
        let data = QuadratureDataset::new(records).unwrap();
        let r = sample_cf_derivative(&data, DerivativeOrder::new(0, 0), beta);
        assert!(matches!(r, Err(Error::DataQuality(_))), "got {r:?}");
    }

    #[test]
    fn dataset_validation() {
        assert!(QuadratureDataset::new(vec![]).is_err());
        assert!(QuadratureDataset::new(vec![QuadratureRecord { x: 0.0, phase: PI }]).is_err());
        assert!(QuadratureDataset::new(vec![QuadratureRecord { x: 0.0, phase: 0.0 }]).is_ok());
    }
}
