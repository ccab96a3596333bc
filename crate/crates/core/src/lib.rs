//! Copula-based Rényi inaccuracy measures.
//!
//! The crate evaluates the multivariate copula Rényi inaccuracy (MCCRI) and
//! its survival, co-copula and dual variants, their entropy and Kerridge-type
//! limits, Fréchet-Hoeffding bound integrals, semiparametric estimates from
//! data, and Monte Carlo studies of those estimates.

pub mod bounds;
pub mod copula;
pub mod error;
pub mod estimation;
pub mod marginals;
pub mod measures;
pub mod quadrature;
pub mod rng;
pub mod simulation;

pub use bounds::{bound_report, BoundReport, BoundRequest, BoundTarget};
pub use copula::{
    check_pointwise_dominance, CopulaModel, DominanceMode, DominanceReport, Family, UnitPoint,
    Verdict,
};
pub use error::{Error, Result};
pub use estimation::{estimate_mccri, fit_mpl, pseudo_observations, DataMatrix, EstimationResult};
pub use marginals::{DistortionProfile, MarginalModel, Scale};
pub use measures::{evaluate, reduced_mccri, MeasureKind, MeasureRequest, MeasureValue};
pub use quadrature::IntegrationConfig;
pub use simulation::{run_study, SimulationConfig, SimulationReport};
