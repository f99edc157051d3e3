use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the domain of an operation (bad diagram, weight above level, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A result could not be rounded to an integer within tolerance.
    #[error("precision error: residual {residual:e} at {bits} bits")]
    Precision { residual: f64, bits: usize },

    /// A Weyl denominator vanished numerically. Never expected for valid labels.
    #[error("singular evaluation point: {0}")]
    Singular(String),

    /// A computation exceeded a configured size cap.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
