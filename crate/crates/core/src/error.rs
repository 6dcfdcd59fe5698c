use thiserror::Error;

/// Errors raised by the estimation toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Order-statistic index outside `1..=n`.
    #[error("index error: order statistic {k} requested from a sample of size {n}")]
    Index { k: usize, n: usize },

    /// Sample size does not match `i(s+1) - 1`.
    #[error("shape error: expected a sample of size n = {expected} (i = {i}, s = {s}), got {got}")]
    Shape {
        expected: usize,
        got: usize,
        i: usize,
        s: usize,
    },

    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),

    #[error("unsupported estimator kind: {0}")]
    UnsupportedKind(String),

    /// Adaptive quadrature stopped before reaching the requested tolerance.
    #[error("quadrature error: requested tolerance {requested:e}, achieved {achieved:e}")]
    Quadrature { requested: f64, achieved: f64 },

    #[error("config error: {0}")]
    Config(String),

    /// Malformed line in a sample file (1-based line number).
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
