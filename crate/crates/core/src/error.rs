use alloc::string::String;
use core::fmt;

/// Errors raised by the algebraic core.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Invalid arguments: unknown names, clashes, mismatched fields.
    Usage(String),
    /// A mathematical precondition does not hold (zero constant term, non-skew form, ...).
    Domain(String),
    /// A relation mixes homogeneous components of different degrees.
    Inhomogeneous { first: u32, second: u32 },
    /// The operation needs a quadratic presentation.
    NotQuadratic(String),
    /// A proposed derivation fails the Leibniz rule or has the wrong shape.
    InvalidDerivation(String),
    /// Input beyond the desk-scale guard.
    TooLarge(String),
    /// Root iteration hit its cap.
    NoConvergence { residual: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Usage(m) => write!(f, "usage error: {m}"),
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Inhomogeneous { first, second } => {
                write!(f, "inhomogeneous relation: terms of degree {first} and {second}")
            }
            Error::NotQuadratic(m) => write!(f, "not quadratic: {m}"),
            Error::InvalidDerivation(m) => write!(f, "invalid derivation: {m}"),
            Error::TooLarge(m) => write!(f, "input too large: {m}"),
            Error::NoConvergence { residual } => {
                write!(f, "root iteration did not converge (best residual {residual:e})")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
