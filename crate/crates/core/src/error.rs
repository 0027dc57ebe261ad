use thiserror::Error;

/// Errors raised by field construction, the closed-form pipeline and the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid prime {p}: {reason}")]
    InvalidPrime { p: u64, reason: &'static str },

    #[error("unsupported input: {0}")]
    UnsupportedInput(String),

    #[error("{c} is not a quadratic residue modulo {p}")]
    NonResidue { c: u64, p: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("field order {order} exceeds the brute-force cap {cap}")]
    CapExceeded { order: String, cap: u64 },

    #[error("argument must be nonzero")]
    ZeroArgument,

    #[error("{what}: no single case applies for p = {p}, n = {n}")]
    BranchNotExhaustive { what: &'static str, p: u64, n: u64 },

    #[error("{what}: inexact division for p = {p}, n = {n}")]
    DivisibilityViolation { what: &'static str, p: u64, n: u64 },

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// True for failures that indicate a broken internal invariant rather
    /// than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::BranchNotExhaustive { .. }
                | Error::DivisibilityViolation { .. }
                | Error::InvariantViolation(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
