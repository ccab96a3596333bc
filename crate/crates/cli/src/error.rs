use thiserror::Error;

/// Failures surfaced by the command line, split by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, unreadable inputs, invalid parameters (exit code 1).
    #[error("{0}")]
    Usage(String),
    /// A well-formed request whose computation failed (exit code 2).
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numeric(_) => 2,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl From<coprenyi::Error> for CliError {
    fn from(e: coprenyi::Error) -> Self {
        use coprenyi::Error::*;
        match e {
            DimensionMismatch { .. }
            | ParameterOutOfRange { .. }
            | UnsupportedDimension { .. }
            | CoordinateOutOfRange { .. }
            | InvalidArgument(_)
            | TensorDimensionTooLarge(_)
            | Incomposable { .. } => CliError::Usage(e.to_string()),
            BoundaryPoint(_)
            | NonFiniteIntegrand { .. }
            | DegenerateIntegral(_)
            | DegenerateData(_)
            | Estimation(_)
            | Simulation(_) => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
