//! Nonclassicality certification for single-mode optical states.
//!
//! The library decides whether a state admits a classical (non-negative)
//! phase-space representation by testing determinants of matrices built
//! from derivatives of the normally ordered characteristic function.
//! Determinants can be evaluated analytically from a closed-form state
//! model or statistically from balanced-homodyne quadrature records,
//! with full error propagation and signed significances.
//!
//! Modules:
//! - [`states`]: closed-form state catalog and exact CF derivatives
//! - [`gbm`]: criterion matrices, determinants, presets, grid scans
//! - [`estimator`]: sampling-based CF/derivative/moment estimation
//! - [`bhdsim`]: reproducible balanced-homodyne data simulation
//! - [`specfun`]: Hermite and Laguerre polynomials, factorials

pub mod bhdsim;
pub mod error;
pub mod estimator;
pub mod gbm;
pub mod specfun;
pub mod states;

pub use error::{Error, Result};
pub use estimator::{CovarianceMode, DatasetCriterion, QuadratureDataset, QuadratureRecord};
pub use gbm::{CriterionResult, CriterionSource, GbmSpec, Grid, PresetKind};
pub use states::{CfProvider, DerivativeOrder, StateModel};

pub mod cli;
