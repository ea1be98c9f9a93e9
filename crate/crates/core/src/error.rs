use thiserror::Error;

/// Errors raised across the decision engine, the oracle and the factorizer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation (zero radicand, m = 0, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Input is valid but exceeds a configured resource bound.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A caller broke a documented precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// An internal invariant failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    /// The input is legal but not supported by this operation.
    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// The randomized field test could not find a generating element.
    #[error("oracle inconclusive: {0}")]
    OracleInconclusive(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
