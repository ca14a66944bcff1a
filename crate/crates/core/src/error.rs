use thiserror::Error;

/// Errors shared by every evaluator in the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Evaluation requested at (or too close to) a pole of the function.
    #[error("pole: {what} at {at}")]
    Pole { what: String, at: f64 },

    /// Arguments outside the operation's domain.
    #[error("domain: {0}")]
    Domain(String),

    /// Series truncation budget exhausted before the tail bound closed.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// Quadrature failed to reach the requested tolerance.
    #[error("quadrature failure: {0}")]
    Quadrature(String),

    /// Least-squares fit too ill-conditioned to trust.
    #[error("ill-conditioned fit: condition number {cond:.3e} exceeds {limit:.1e}")]
    IllConditioned { cond: f64, limit: f64 },

    /// Arguments do not satisfy the hypotheses of the requested case.
    #[error("dispatch mismatch: {0}")]
    DispatchMismatch(String),

    /// Identity name not present in the registry.
    #[error("unknown identity: {0}")]
    UnknownIdentity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
