use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// Operands have incompatible dimensions.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// An input violates a mathematical precondition (non-Hermitian matrix,
    /// negative payoff, non-normalized state, broken continuity chain, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative routine failed to reach its accuracy target.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// The affine constraint system admits no solution.
    #[error("infeasible affine constraints: {0}")]
    InfeasibleAffine(String),

    /// The solver exhausted its iteration budget without a verdict.
    #[error("iteration limit reached after {0} iterations")]
    IterationLimit(usize),

    /// The requested certificate does not exist for this model.
    #[error("no certificate: {0}")]
    NoCertificate(String),

    /// The model sits on the feasibility boundary at the working tolerance;
    /// no side of the arbitrage alternative can be certified.
    #[error("degenerate model: {0}")]
    Degenerate(String),

    /// A scenario or report file failed to parse or validate.
    #[error("invalid scenario: {0}")]
    Scenario(String),
}

pub type Result<T> = std::result::Result<T, Error>;
