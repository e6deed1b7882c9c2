use crate::units::Dimension;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: Dimension, right: Dimension },

    #[error("geometry outside the far-field range: R/d = {ratio} < {min} (override required)")]
    GeometryOverrideRequired { ratio: f64, min: f64 },

    #[error("coulomb displacement bound requires an explicit minimum confinement length")]
    MissingConfinement,

    #[error("covariance matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("covariance violates the Heisenberg floor or describes a mixed state (det = {det})")]
    NotPure { det: f64 },

    #[error("no convergence: {0}")]
    NoConvergence(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
