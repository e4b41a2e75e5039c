use alloc::string::String;

use num_bigint::BigUint;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Malformed textual input (shape, cycle type, choice set, polynomial).
    #[error("parse error: {0}")]
    Parse(String),
    /// Structurally invalid request, e.g. `N > min n_i` for a polynomial.
    #[error("domain error: {0}")]
    Domain(String),
    /// An enumeration would exceed the configured cap.
    #[error("{what} requires {required}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        required: BigUint,
        cap: BigUint,
    },
    /// Two computations that must agree did not.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
