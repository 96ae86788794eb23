//! Analytic reference states: closed-form characteristic functions (CFs),
//! their Wirtinger derivatives and normally ordered moments.
//!
//! Conventions fixed here and used everywhere else:
//! - quadrature x(phi) = e^{i phi} a + e^{-i phi} a^dagger, vacuum variance 1;
//! - squeezed vacuum is parameterized by its principal quadrature variances
//!   (v_min, v_max) and the phase `theta` of maximal variance, so that
//!   V(phi) = v_max cos^2(phi - theta) + v_min sin^2(phi - theta);
//! - dB values convert as V = 10^{dB/10}.
//!
//! States are ideal; detection efficiency lives in the simulator.

mod polyexp;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::factorial;
use polyexp::{Poly2, PolyExp, QuadForm};

/// Highest supported total Wirtinger derivative order m + n.
pub const MAX_DERIVATIVE_ORDER: u32 = 8;

/// Serialize Complex64 as a [re, im] pair.
pub mod serde_complex {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [v.re, v.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

/// Wirtinger derivative order: `d_beta` in beta, `d_beta_conj` in beta*.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivativeOrder {
    pub d_beta: u32,
    pub d_beta_conj: u32,
}

impl DerivativeOrder {
    pub fn new(d_beta: u32, d_beta_conj: u32) -> Self {
        DerivativeOrder { d_beta, d_beta_conj }
    }

    pub fn total(&self) -> u32 {
        self.d_beta + self.d_beta_conj
    }
}

/// Catalog of reference states with closed-form CFs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum StateModel {
    Coherent {
        #[serde(with = "serde_complex")]
        alpha: Complex64,
    },
    Thermal {
        mean_photons: f64,
    },
    Fock {
        n: u32,
    },
    PhotonAddedThermal {
        added: u32,
        mean_photons: f64,
    },
    SqueezedVacuum {
        v_min: f64,
        v_max: f64,
        theta: f64,
    },
    Mixture {
        weights: Vec<f64>,
        components: Vec<StateModel>,
    },
}

impl StateModel {
    pub fn validate(&self) -> Result<()> {
        match self {
            StateModel::Coherent { alpha } => {
                if !alpha.re.is_finite() || !alpha.im.is_finite() {
                    return Err(Error::InvalidState("coherent amplitude not finite".into()));
                }
            }
            StateModel::Thermal { mean_photons } => {
                if !(*mean_photons >= 0.0) {
                    return Err(Error::InvalidState("thermal mean photon number < 0".into()));
                }
            }
            StateModel::Fock { .. } => {}
            StateModel::PhotonAddedThermal { mean_photons, .. } => {
                if !(*mean_photons >= 0.0) {
                    return Err(Error::InvalidState(
                        "photon-added-thermal mean photon number < 0".into(),
                    ));
                }
            }
            StateModel::SqueezedVacuum { v_min, v_max, .. } => {
                if !(*v_min > 0.0 && *v_max > 0.0) {
                    return Err(Error::InvalidState("squeezed variances must be > 0".into()));
                }
                if v_min > v_max {
                    return Err(Error::InvalidState("squeezed state needs v_min <= v_max".into()));
                }
            }
            StateModel::Mixture { weights, components } => {
                if weights.len() != components.len() || weights.is_empty() {
                    return Err(Error::InvalidState(
                        "mixture weights/components length mismatch".into(),
                    ));
                }
                if weights.iter().any(|w| *w < 0.0) {
                    return Err(Error::InvalidState("mixture weight < 0".into()));
                }
                let sum: f64 = weights.iter().sum();
                if (sum - 1.0).abs() > 1e-12 {
                    return Err(Error::InvalidState(format!(
                        "mixture weights sum to {sum}, expected 1"
                    )));
                }
                for c in components {
                    c.validate()?;
                    if matches!(c, StateModel::Mixture { .. }) {
                        // flat mixtures only; nested ones add nothing
                        return Err(Error::InvalidState("nested mixtures not supported".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// True for states with a classical (non-negative) P function.
    pub fn is_classical(&self) -> bool {
        match self {
            StateModel::Coherent { .. } => true,
            StateModel::Thermal { .. } => true,
            StateModel::Fock { n } => *n == 0,
            StateModel::PhotonAddedThermal { .. } => false,
            StateModel::SqueezedVacuum { v_min, .. } => *v_min >= 1.0,
            StateModel::Mixture { components, .. } => components.iter().all(|c| c.is_classical()),
        }
    }

    /// Weighted closed-form components (mixtures are flattened).
    fn components(&self) -> Vec<(f64, PolyExp)> {
        match self {
            StateModel::Mixture { weights, components } => weights
                .iter()
                .zip(components)
                .flat_map(|(w, c)| {
                    c.components()
                        .into_iter()
                        .map(move |(wi, p)| (w * wi, p))
                })
                .collect(),
            _ => vec![(1.0, self.polyexp())],
        }
    }

    fn polyexp(&self) -> PolyExp {
        let one = Complex64::new(1.0, 0.0);
        match *self {
            StateModel::Coherent { alpha } => {
                // exp(beta alpha* - beta* alpha)
                let quad = QuadForm {
                    lin_b: alpha.conj(),
                    lin_bc: -alpha,
                    ..Default::default()
                };
                PolyExp::new(Poly2::constant(one), quad)
            }
            StateModel::Thermal { mean_photons } => {
                let quad = QuadForm {
                    cross: Complex64::new(-mean_photons, 0.0),
                    ..Default::default()
                };
                PolyExp::new(Poly2::constant(one), quad)
            }
            StateModel::Fock { n } => {
                // L_n(|beta|^2), a polynomial in beta beta*
                PolyExp::new(laguerre_poly2(n, 1.0), QuadForm::default())
            }
            StateModel::PhotonAddedThermal { added, mean_photons } => {
                // L_k[(1 + nbar)|beta|^2] exp(-nbar |beta|^2)
                let quad = QuadForm {
                    cross: Complex64::new(-mean_photons, 0.0),
                    ..Default::default()
                };
                PolyExp::new(laguerre_poly2(added, 1.0 + mean_photons), quad)
            }
            StateModel::SqueezedVacuum { v_min, v_max, theta } => {
                // exponent |beta|^2/2 - [v_max Im(beta e^{i theta})^2
                //                        + v_min Re(beta e^{i theta})^2] / 2
                let rot2 = Complex64::from_polar(1.0, 2.0 * theta);
                let quad = QuadForm {
                    b2: rot2 * ((v_max - v_min) / 8.0),
                    bc2: rot2.conj() * ((v_max - v_min) / 8.0),
                    cross: Complex64::new(0.5 - (v_max + v_min) / 4.0, 0.0),
                    ..Default::default()
                };
                PolyExp::new(Poly2::constant(one), quad)
            }
            StateModel::Mixture { .. } => unreachable!("mixtures are flattened in components()"),
        }
    }
}

/// Coefficients of L_n(s t) as a Poly2 in t = beta beta*.
fn laguerre_poly2(n: u32, scale: f64) -> Poly2 {
    let mut p = Poly2::default();
    for i in 0..=n {
        let binom = factorial(n) / (factorial(i) * factorial(n - i));
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let c = sign * binom / factorial(i) * scale.powi(i as i32);
        p.add_term(i, i, Complex64::new(c, 0.0));
    }
    p
}

/// Characteristic function Phi(beta) of a catalog state.
pub fn cf(state: &StateModel, beta: Complex64) -> Complex64 {
    state
        .components()
        .iter()
        .map(|(w, p)| *w * p.eval(beta))
        .sum()
}

/// Exact Wirtinger derivative d_beta^m d_beta*^n Phi at beta.
pub fn cf_derivative(state: &StateModel, order: DerivativeOrder, beta: Complex64) -> Result<Complex64> {
    if order.total() > MAX_DERIVATIVE_ORDER {
        return Err(Error::UnsupportedOrder {
            m: order.d_beta,
            n: order.d_beta_conj,
            limit: MAX_DERIVATIVE_ORDER,
        });
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for (w, p) in state.components() {
        let mut d = p;
        for _ in 0..order.d_beta {
            d = d.derivative(0);
        }
        for _ in 0..order.d_beta_conj {
            d = d.derivative(1);
        }
        sum += w * d.eval(beta);
    }
    Ok(sum)
}

/// Normally ordered moment <a^dagger^k a^l> = d_beta^k (-d_beta*)^l Phi |_0.
pub fn moment(state: &StateModel, k: u32, l: u32) -> Result<Complex64> {
    match state {
        StateModel::Coherent { alpha } => Ok(alpha.conj().powu(k) * alpha.powu(l)),
        StateModel::Thermal { mean_photons } => {
            if k == l {
                Ok(Complex64::new(factorial(k) * mean_photons.powi(k as i32), 0.0))
            } else {
                Ok(Complex64::new(0.0, 0.0))
            }
        }
        _ => {
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            Ok(sign * cf_derivative(state, DerivativeOrder::new(k, l), Complex64::new(0.0, 0.0))?)
        }
    }
}

/// Central-finite-difference Wirtinger derivative of an arbitrary CF,
/// with one Richardson extrapolation step. Fallback / cross-check path.
pub fn wirtinger_fd<F>(f: &F, order: DerivativeOrder, beta: Complex64, step: f64) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    let coarse = wirtinger_fd_raw(f, order.d_beta, order.d_beta_conj, beta, step);
    let fine = wirtinger_fd_raw(f, order.d_beta, order.d_beta_conj, beta, step / 2.0);
    (4.0 * fine - coarse) / 3.0
}

fn wirtinger_fd_raw<F>(f: &F, m: u32, n: u32, beta: Complex64, h: f64) -> Complex64
where
    F: Fn(Complex64) -> Complex64,
{
    if m == 0 && n == 0 {
        return f(beta);
    }
    let dx = Complex64::new(h, 0.0);
    let dy = Complex64::new(0.0, h);
    if m > 0 {
        // d_beta = (d_x - i d_y) / 2
        let gx = (wirtinger_fd_raw(f, m - 1, n, beta + dx, h)
            - wirtinger_fd_raw(f, m - 1, n, beta - dx, h))
            / (2.0 * h);
        let gy = (wirtinger_fd_raw(f, m - 1, n, beta + dy, h)
            - wirtinger_fd_raw(f, m - 1, n, beta - dy, h))
            / (2.0 * h);
        (gx - Complex64::i() * gy) / 2.0
    } else {
        // d_beta* = (d_x + i d_y) / 2
        let gx = (wirtinger_fd_raw(f, m, n - 1, beta + dx, h)
            - wirtinger_fd_raw(f, m, n - 1, beta - dx, h))
            / (2.0 * h);
        let gy = (wirtinger_fd_raw(f, m, n - 1, beta + dy, h)
            - wirtinger_fd_raw(f, m, n - 1, beta - dy, h))
            / (2.0 * h);
        (gx + Complex64::i() * gy) / 2.0
    }
}

/// Extremal quadrature phases and the corresponding normally ordered
/// variances <:[Delta x(phi)]^2:>, from second moments. For phase-symmetric
/// states the degenerate choice is phi_min = 0.
pub struct QuadratureExtrema {
    pub phi_min: f64,
    pub phi_max: f64,
    pub var_min_ordered: f64,
    pub var_max_ordered: f64,
}

pub fn quadrature_extrema(state: &StateModel) -> Result<QuadratureExtrema> {
    let mean_a = moment(state, 0, 1)?;
    let a2 = moment(state, 0, 2)?;
    let n = moment(state, 1, 1)?;
    let c2 = a2 - mean_a * mean_a;
    let c11 = n.re - mean_a.norm_sqr();
    if c2.norm() < 1e-12 {
        return Ok(QuadratureExtrema {
            phi_min: 0.0,
            phi_max: std::f64::consts::FRAC_PI_2,
            var_min_ordered: 2.0 * c11,
            var_max_ordered: 2.0 * c11,
        });
    }
    // <:Delta x(phi)^2:> = 2 Re(e^{2 i phi} c2) + 2 c11
    let phi_min = (std::f64::consts::PI - c2.arg()) / 2.0;
    Ok(QuadratureExtrema {
        phi_min: phi_min.rem_euclid(std::f64::consts::PI),
        phi_max: (phi_min + std::f64::consts::FRAC_PI_2).rem_euclid(std::f64::consts::PI),
        var_min_ordered: 2.0 * c11 - 2.0 * c2.norm(),
        var_max_ordered: 2.0 * c11 + 2.0 * c2.norm(),
    })
}

/// Abstract source of Phi and its Wirtinger derivatives.
pub trait CfProvider {
    fn cf(&self, beta: Complex64) -> Result<Complex64>;
    fn cf_derivative(&self, order: DerivativeOrder, beta: Complex64) -> Result<Complex64>;
}

impl CfProvider for StateModel {
    fn cf(&self, beta: Complex64) -> Result<Complex64> {
        Ok(cf(self, beta))
    }

    fn cf_derivative(&self, order: DerivativeOrder, beta: Complex64) -> Result<Complex64> {
        cf_derivative(self, order, beta)
    }
}
