use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot invert the zero series")]
    ZeroInverse,
    /// Truncation hides the leading term; recompute with a higher order.
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("edge {edge} has a non-integral direction")]
    NonIntegralDirection { edge: usize },
    #[error("points {0:?} and {1:?} coincide")]
    DuplicatePoint(String, String),
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
    #[error("evaluation point coincides with the boundary point of label {0:?}")]
    OnBoundary(String),
    #[error("asymmetric Pluecker input at pair ({0:?}, {1:?})")]
    AsymmetricInput(String, String),
    #[error("zero divisor: coordinate ({0:?}, {1:?}) vanishes")]
    ZeroDivisor(String, String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// Constraints are not generic; re-randomize.
    #[error("degenerate constraints: {0}")]
    Degenerate(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroInverse => "ZeroInverse",
            Error::PrecisionLoss(_) => "PrecisionLoss",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::NonIntegralDirection { .. } => "NonIntegralDirection",
            Error::DuplicatePoint(..) => "DuplicatePoint",
            Error::InvalidDegree(_) => "InvalidDegree",
            Error::OnBoundary(_) => "OnBoundary",
            Error::AsymmetricInput(..) => "AsymmetricInput",
            Error::ZeroDivisor(..) => "ZeroDivisor",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Degenerate(_) => "Degenerate",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}
