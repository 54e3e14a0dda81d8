use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("content of an empty list is undefined")]
    EmptyList,

    #[error("zero has no finite divisor set")]
    ZeroArgument,

    #[error("invalid box bound {0}: bounds must be finite reals >= 1")]
    InvalidBox(f64),

    #[error("invalid ellipse semi-axis {0}: must be finite and > 0")]
    InvalidEllipse(f64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("value out of supported range: {0}")]
    OutOfRange(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}
