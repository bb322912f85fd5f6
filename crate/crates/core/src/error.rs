use thiserror::Error;

/// Errors raised by ring arithmetic, symbol evaluation and the sum engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Coordinates or norms left the representable range.
    #[error("overflow: {0}")]
    Overflow(String),
    /// A size cap (residue system, factorization cutoff) was exceeded.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// Estimated work exceeds the configured budget.
    #[error("work budget exceeded: estimated {estimated} steps, budget {budget}")]
    Budget { estimated: u128, budget: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
