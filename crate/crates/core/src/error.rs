use thiserror::Error;

use crate::scalar::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("unbound variable x{0}")]
    UnboundVariable(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("coefficients sum to {0}, expected 1")]
    CoefficientSum(Rational),
    #[error("point is not in the rational convex hull")]
    NotAMember,
    #[error("points are affinely dependent")]
    AffinelyDependent,
    #[error("affine map is not invertible")]
    NonInvertible,
    #[error("chain synthesis failed: {0}")]
    Synthesis(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

impl Error {
    /// Stable short code for machine-readable diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroDenominator | Error::DivisionByZero => "E_ARITH",
            Error::Parse(_) => "E_PARSE",
            Error::InvalidRing(_) => "E_RING",
            Error::ZeroValuation => "E_VALUATION",
            Error::DimensionMismatch { .. } => "E_DIMENSION",
            Error::EmptyInput(_) => "E_EMPTY",
            Error::UnboundVariable(_) => "E_UNBOUND",
            Error::InvalidParameter(_) => "E_PARAMETER",
            Error::CoefficientSum(_) => "E_COEFF_SUM",
            Error::NotAMember => "E_NOT_MEMBER",
            Error::AffinelyDependent => "E_DEPENDENT",
            Error::NonInvertible => "E_NON_INVERTIBLE",
            Error::Synthesis(_) => "E_SYNTHESIS",
            Error::Unsupported(_) => "E_UNSUPPORTED",
        }
    }
}
