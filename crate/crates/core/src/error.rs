use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("division by an identically zero expression")]
    DivisionByZero,
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("chart mismatch: {0}")]
    ChartMismatch(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("incompatible structures: {0}")]
    Incompatible(String),
    #[error("odd-dimensional chart: complex structures need even dimension")]
    OddDimension,
    #[error("even-dimensional chart: contact forms need odd dimension")]
    EvenDimension,
    #[error("degenerate form: {0}")]
    Degenerate(String),
    #[error("not a first-order multiderivation: {0}")]
    NotFirstOrder(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("not holomorphic: {0}")]
    NotHolomorphic(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
