use thiserror::Error;

/// Errors raised by the library. Checks that merely fail (an identity does
/// not hold) are reported through report structs, not through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible cyclotomic orders {0} and {1}: neither divides the other")]
    IncompatibleCyclotomicOrders(u32, u32),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("singular Gram matrix")]
    SingularGram,
    #[error("incompatible coefficient spaces: {0}")]
    IncompatibleCoefficients(String),
    #[error("series is not a unit: constant term vanishes")]
    NotAUnit,
    #[error("substitution requires a vanishing constant term")]
    NonvanishingConstantTerm,
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("diagonal restriction vanishes through degree {0}")]
    DiagonalVanishes(usize),
    #[error("truncation too small: need {needed}, have {have}")]
    TruncationTooSmall { needed: usize, have: usize },
    #[error("tail is not polynomial within truncation {0}")]
    NonPolynomialTail(usize),
    #[error("eigencomponent mismatch: {0}")]
    EigencomponentMismatch(String),
    #[error("invalid gauge data: {0}")]
    InvalidGauge(String),
    #[error("pole does not cancel: {0}")]
    PoleDoesNotCancel(String),
    #[error("category mismatch: {0}")]
    CategoryMismatch(String),
    #[error("subspaces are not complementary: {0}")]
    NotComplementary(String),
    #[error("invalid Stolin pair: {0}")]
    InvalidPair(String),
    #[error("not contained in the order: {0}")]
    NotInOrder(String),
    #[error("unknown algebra: {0}")]
    UnknownAlgebra(String),
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }
}
