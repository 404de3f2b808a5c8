use thiserror::Error;

/// Errors raised by every numerical routine in the crate.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("{function}: argument {value} is outside the domain")]
    Domain { function: &'static str, value: f64 },

    #[error("{function} diverges at the origin for order {order}")]
    Divergence { function: &'static str, order: f64 },

    #[error("zero {index} of J_{order} did not converge (residual {residual:e})")]
    Convergence {
        order: f64,
        index: usize,
        residual: f64,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point lies outside the forward cone (c*dt - r = {gap})")]
    OutsideCone { gap: f64 },

    #[error("integration domain is empty")]
    EmptyDomain,

    #[error("non-finite integrand value at node {index}")]
    NonFinite { index: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("angular rule {rule} is not available in dimension {n}")]
    UnsupportedRule { rule: &'static str, n: usize },

    #[error("as-printed reconstruction needs the x-dependent zeroth term")]
    MissingZeroth,

    #[error("degenerate calibration: {0}")]
    Degenerate(String),

    #[error("coefficient (j={j}, k={k}): {source}")]
    Coefficient {
        j: usize,
        k: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("transform entry (lambda index {lambda}, centre index {xi}): {source}")]
    TransformEntry {
        lambda: usize,
        xi: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
