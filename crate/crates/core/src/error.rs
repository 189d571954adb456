use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field error: {0}")]
    Field(String),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("ring error: {0}")]
    Ring(String),
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("no image given for variable `{0}`")]
    MissingImage(String),
    #[error("expected {expected} coordinates, got {found}")]
    PointLength { expected: usize, found: usize },
    #[error("truncated Gröbner basis (degree {available}) cannot answer a question in degree {requested}")]
    TruncationTooLow { available: u32, requested: u32 },
    #[error("operation requires homogeneous input: {0}")]
    NotHomogeneous(String),
    #[error("chart variable `{0}` does not have weight 1")]
    ChartWeight(String),
    #[error("matrix is not skew-symmetric at ({0}, {1})")]
    NotSkew(usize, usize),
    #[error("time budget exhausted after {0} ms")]
    Timeout(u128),
    #[error("{0}")]
    Check(String),
}

/// Syntax error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}
