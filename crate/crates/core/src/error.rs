use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature ran out of panels before meeting its tolerance.
    #[error("quadrature did not converge: error estimate {estimate:e} after {panels} panels (target {target:e})")]
    Accuracy {
        value: f64,
        estimate: f64,
        target: f64,
        panels: usize,
    },

    /// Two points (or a point and a function) belong to different spaces.
    #[error("space mismatch: {left} vs {right}")]
    SpaceMismatch { left: String, right: String },

    /// Unknown catalog name, chain name or malformed selector.
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
