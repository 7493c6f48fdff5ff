use thiserror::Error;

/// Errors raised by the verification engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition on an input was not met.
    #[error("domain error: {0}")]
    Domain(String),

    /// An enumeration would exceed its configured cap.
    #[error("budget exceeded: {what} needs {count} items, cap is {cap}")]
    BudgetExceeded { what: String, count: u128, cap: u128 },

    /// A 3-bit pairwise code describes a preference cycle.
    #[error("cyclic: {0}")]
    CyclicCode(String),

    /// Malformed DIMACS input.
    #[error("line {line}: {message}")]
    Dimacs { line: usize, message: String },

    /// An internal invariant was violated; indicates a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
