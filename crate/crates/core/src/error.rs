use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument outside the domain of the operation (zero divisor,
    /// non-prime modulus, interval radius too large, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A computation would exceed the configured enumeration budget.
    #[error("resource limit: {what} needs {needed} but the budget is {budget}")]
    Resource {
        what: String,
        needed: u128,
        budget: u128,
    },

    /// A numerical result contradicts a theorem the code relies on
    /// (root off the critical circles, failed reconstruction).
    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Writing a report failed (closed pipe, full disk, ...).
    #[error("output error: {0}")]
    Output(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
