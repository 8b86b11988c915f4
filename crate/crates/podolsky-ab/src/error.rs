//! Error type shared by the numerical kernels.

use std::fmt;

/// Errors from special-function evaluation, field assembly and the
/// numerical oracles.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside the function's domain (e.g. z < 0 for I_nu).
    Domain(String),
    /// A requested plain `f64` value exceeds the representable range;
    /// the scaled variant should be used instead.
    Overflow(String),
    /// Series, continued fraction or adaptive scheme did not converge
    /// within its iteration budget.
    ConvergenceFailure(String),
    /// Parameter set not supported (unknown order, bad pFq parameters).
    InvalidParameter(String),
    /// Evaluation method incompatible with the supplied inputs.
    InvalidMethod(String),
    /// The discretized boundary-value system could not be factorized.
    SingularSystem(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Overflow(msg) => write!(f, "overflow: {msg}"),
            Error::ConvergenceFailure(msg) => write!(f, "failed to converge: {msg}"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::InvalidMethod(msg) => write!(f, "invalid method: {msg}"),
            Error::SingularSystem(msg) => write!(f, "singular system: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
