//! Generalized Bochner matrices (GBMs): construction from any CF-derivative
//! source, determinant criteria, named presets and phase-space grid scans.
//!
//! The matrix element convention is
//! entry(i,j) = (-1)^{n_i + m_i} d_beta^{n_i + m_j} d_beta*^{n_j + m_i}
//!              Phi(beta) at beta = beta_i - beta_j,
//! which is positive semidefinite for every classical state.

pub mod linalg;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::{CfProvider, DerivativeOrder};

/// Relative Hermiticity tolerance for analytically built matrices.
const HERMITICITY_TOL: f64 = 1e-9;

/// Criterion selector: dimension N, derivative-order vectors and the
/// phase-space points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GbmSpec {
    pub n_orders: Vec<u32>,
    pub m_orders: Vec<u32>,
    #[serde(
        serialize_with = "serialize_betas",
        deserialize_with = "deserialize_betas"
    )]
    pub betas: Vec<Complex64>,
}

fn serialize_betas<S: serde::Serializer>(v: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for b in v {
        seq.serialize_element(&[b.re, b.im])?;
    }
    seq.end()
}

fn deserialize_betas<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<Complex64>, D::Error> {
    let pairs = Vec::<[f64; 2]>::deserialize(d)?;
    Ok(pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect())
}

impl GbmSpec {
    pub fn new(n_orders: Vec<u32>, m_orders: Vec<u32>, betas: Vec<Complex64>) -> Result<Self> {
        let spec = GbmSpec { n_orders, m_orders, betas };
        spec.validate()?;
        Ok(spec)
    }

    pub fn dim(&self) -> usize {
        self.betas.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.betas.len();
        if n == 0 {
            return Err(Error::Config("GBM spec needs N >= 1".into()));
        }
        if self.n_orders.len() != n || self.m_orders.len() != n {
            return Err(Error::Config(format!(
                "GBM spec vector lengths differ: n={}, m={}, betas={}",
                self.n_orders.len(),
                self.m_orders.len(),
                n
            )));
        }
        Ok(())
    }

    /// Derivative order and evaluation point of entry (i, j), with its sign.
    pub fn entry_request(&self, i: usize, j: usize) -> (f64, DerivativeOrder, Complex64) {
        let order = DerivativeOrder::new(
            self.n_orders[i] + self.m_orders[j],
            self.n_orders[j] + self.m_orders[i],
        );
        let sign = if (self.n_orders[i] + self.m_orders[i]) % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        (sign, order, self.betas[i] - self.betas[j])
    }
}

/// Dense Hermitian matrix with verified (not symmetrized) Hermiticity.
#[derive(Debug, Clone)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Wraps entries after verifying Hermiticity within
    /// `HERMITICITY_TOL * max-norm`. Symmetrization would mask source bugs,
    /// so a violation is an error.
    pub fn from_entries(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        assert_eq!(data.len(), dim * dim);
        let max_norm = data.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        let tol = HERMITICITY_TOL * max_norm.max(1e-300);
        for i in 0..dim {
            for j in 0..=i {
                let dev = (data[i * dim + j] - data[j * dim + i].conj()).norm();
                if dev > tol {
                    return Err(Error::NumericalInconsistency(format!(
                        "matrix not Hermitian at ({i},{j}): deviation {dev:.3e} > {tol:.3e}"
                    )));
                }
            }
        }
        Ok(HermitianMatrix { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }
}

/// Build the GBM for `spec` from a CF-derivative source.
///
/// Entries with zero derivative order go through `source.cf` directly, so the
/// plain Bochner reduction is path-exact.
pub fn build_gbm<S: CfProvider + ?Sized>(source: &S, spec: &GbmSpec) -> Result<HermitianMatrix> {
    spec.validate()?;
    let n = spec.dim();
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (sign, order, delta) = spec.entry_request(i, j);
            let value = if order.total() == 0 {
                source.cf(delta)?
            } else {
                source.cf_derivative(order, delta)?
            };
            data.push(sign * value);
        }
    }
    HermitianMatrix::from_entries(n, data)
}

/// Determinant of a Hermitian matrix; the imaginary part of the computed
/// determinant must vanish within 1e-8 * (|Re| + 1).
pub fn det_hermitian(m: &HermitianMatrix) -> Result<f64> {
    let d = linalg::det_complex(m.entries(), m.dim());
    if d.im.abs() > 1e-8 * (d.re.abs() + 1.0) {
        return Err(Error::NumericalInconsistency(format!(
            "determinant has non-real part {:.3e} (re {:.3e})",
            d.im, d.re
        )));
    }
    Ok(d.re)
}

/// Determinant value with its propagated error and signed significance.
/// `sigma == 0` marks analytic evaluation; `significance` is then `None`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CriterionResult {
    pub det: f64,
    pub sigma: f64,
    pub significance: Option<f64>,
}

impl CriterionResult {
    pub fn analytic(det: f64) -> Self {
        CriterionResult { det, sigma: 0.0, significance: None }
    }

    pub fn statistical(det: f64, sigma: f64) -> Self {
        let significance = if sigma > 0.0 { Some(det / sigma) } else { None };
        CriterionResult { det, sigma, significance }
    }
}

/// Named criterion families; `beta` parameterizes the phase-space point
/// (ignored by the fixed `Squeezing` and `Mom2` specs).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PresetKind {
    /// N = 2 plain Bochner minor, det = 1 - |Phi(beta)|^2.
    Bochner2,
    /// The 3x3 mixed CF/moment criterion, m = (0,1,0), n = (0,0,1),
    /// betas = (beta, 0, beta).
    Example3x3,
    /// Example3x3 at beta = 0: the quadrature squeezing condition.
    Squeezing,
    /// 2x2 matrix of moments minor, det = <:n:> - |<a>|^2.
    Mom2,
    /// Generalized 2x2 minor, det = <:n:> - |<:a exp(beta a^dag - beta* a):>|^2.
    Gbm2,
}

impl PresetKind {
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "bochner2" => Ok(PresetKind::Bochner2),
            "example3x3" => Ok(PresetKind::Example3x3),
            "squeezing" => Ok(PresetKind::Squeezing),
            "mom2" => Ok(PresetKind::Mom2),
            "gbm2" => Ok(PresetKind::Gbm2),
            _ => Err(Error::Config(format!(
                "unknown preset '{name}' (expected bochner2, example3x3, squeezing, mom2, gbm2)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PresetKind::Bochner2 => "bochner2",
            PresetKind::Example3x3 => "example3x3",
            PresetKind::Squeezing => "squeezing",
            PresetKind::Mom2 => "mom2",
            PresetKind::Gbm2 => "gbm2",
        }
    }

    pub fn spec(&self, beta: Complex64) -> GbmSpec {
        let zero = Complex64::new(0.0, 0.0);
        match self {
            PresetKind::Bochner2 => GbmSpec {
                n_orders: vec![0, 0],
                m_orders: vec![0, 0],
                betas: vec![beta, zero],
            },
            PresetKind::Example3x3 => GbmSpec {
                n_orders: vec![0, 0, 1],
                m_orders: vec![0, 1, 0],
                betas: vec![beta, zero, beta],
            },
            PresetKind::Squeezing => PresetKind::Example3x3.spec(zero),
            PresetKind::Mom2 => GbmSpec {
                n_orders: vec![0, 1],
                m_orders: vec![0, 0],
                betas: vec![zero, zero],
            },
            PresetKind::Gbm2 => GbmSpec {
                n_orders: vec![0, 1],
                m_orders: vec![0, 0],
                betas: vec![beta, zero],
            },
        }
    }
}

/// Look up a preset spec by name at phase-space point `beta`.
pub fn preset(name: &str, beta: Complex64) -> Result<GbmSpec> {
    Ok(PresetKind::from_name(name)?.spec(beta))
}

/// Anything that can turn a GBM spec into a criterion value: analytic CF
/// providers (sigma = 0) or data-backed estimators (sigma from propagation).
pub trait CriterionSource {
    fn evaluate(&self, spec: &GbmSpec) -> Result<CriterionResult>;
}

impl<T: CfProvider + ?Sized> CriterionSource for T {
    fn evaluate(&self, spec: &GbmSpec) -> Result<CriterionResult> {
        let m = build_gbm(self, spec)?;
        Ok(CriterionResult::analytic(det_hermitian(&m)?))
    }
}

/// Rectangular Re/Im lattice in phase space.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Grid {
    pub re_min: f64,
    pub re_max: f64,
    pub re_step: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub im_step: f64,
}

impl Grid {
    pub fn validate(&self) -> Result<()> {
        let vals = [
            self.re_min, self.re_max, self.re_step, self.im_min, self.im_max, self.im_step,
        ];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config("grid bounds must be finite".into()));
        }
        if self.re_step <= 0.0 || self.im_step <= 0.0 {
            return Err(Error::Config("grid steps must be > 0".into()));
        }
        if self.re_max < self.re_min || self.im_max < self.im_min {
            return Err(Error::Config("grid max must be >= min".into()));
        }
        Ok(())
    }

    fn axis(min: f64, max: f64, step: f64) -> Vec<f64> {
        let count = ((max - min) / step + 0.5).floor() as usize + 1;
        (0..count).map(|k| min + step * k as f64).collect()
    }

    /// Lattice points, row-major over (Re beta, Im beta).
    pub fn points(&self) -> Vec<Complex64> {
        let re = Self::axis(self.re_min, self.re_max, self.re_step);
        let im = Self::axis(self.im_min, self.im_max, self.im_step);
        let mut pts = Vec::with_capacity(re.len() * im.len());
        for &r in &re {
            for &i in &im {
                pts.push(Complex64::new(r, i));
            }
        }
        pts
    }
}

/// One scan point; per-point failures are recorded and the scan continues.
#[derive(Debug)]
pub struct ScanPoint {
    pub beta: Complex64,
    pub result: Result<CriterionResult>,
}

/// Evaluate a beta-parameterized criterion family over a grid. Output order
/// is the row-major lattice order, independent of evaluation scheduling.
pub fn grid_scan<S: CriterionSource + ?Sized>(
    source: &S,
    family: PresetKind,
    grid: &Grid,
) -> Result<Vec<ScanPoint>> {
    grid.validate()?;
    Ok(grid
        .points()
        .into_iter()
        .map(|beta| ScanPoint {
            beta,
            result: source.evaluate(&family.spec(beta)),
        })
        .collect())
}
