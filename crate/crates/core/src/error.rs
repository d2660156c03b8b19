use alloc::string::String;

/// Errors raised by the kernels.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An input violated an operation's precondition or fell outside its domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A numerical iteration did not reach its tolerance within the budget.
    #[error("numeric failure: no convergence after {iterations} iterations")]
    NumericFailure { iterations: usize },
    /// The prime divides the discriminant (or the leading coefficient).
    #[error("prime {0} is ramified for this polynomial")]
    RamifiedPrime(u64),
    /// A value did not fit the fixed-width type required by a fast path.
    #[error("overflow: {0}")]
    Overflow(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = core::result::Result<T, Error>;
