use thiserror::Error;

/// Errors raised by the copula, quadrature, measure and estimation layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{family} parameter {value} out of range: {bound}")]
    ParameterOutOfRange {
        family: &'static str,
        value: f64,
        bound: &'static str,
    },

    #[error("{family} is not supported at dimension {dim}")]
    UnsupportedDimension { family: &'static str, dim: usize },

    #[error("coordinate {index} = {value} lies outside [0, 1]")]
    CoordinateOutOfRange { index: usize, value: f64 },

    #[error("density requested at boundary point {0:?}")]
    BoundaryPoint(Vec<f64>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-finite integrand value {value} at node {node:?}")]
    NonFiniteIntegrand { value: f64, node: Vec<f64> },

    #[error("tensor Gauss-Legendre refused for dimension {0} (> 4); use Monte Carlo")]
    TensorDimensionTooLarge(usize),

    #[error("degenerate measure: integral {0} is not a positive finite number")]
    DegenerateIntegral(f64),

    #[error("incomposable marginals at coordinate {index}: {reason}")]
    Incomposable { index: usize, reason: String },

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("estimation failed: {0}")]
    Estimation(String),

    #[error("simulation failed: {0}")]
    Simulation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
