use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("density vanishes at {0}; the majorant would be unbounded")]
    UnboundedMajorant(f64),
    #[error("input is not log-concave: {0}")]
    NotLogConcave(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("expectation diverges for every scale")]
    Divergence,
    #[error("integer overflow computing {0}")]
    Overflow(String),
    #[error("duplicate interpolation node {0}")]
    DuplicateNodes(f64),
}
