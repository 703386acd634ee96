use thiserror::Error;

/// Errors raised by the arithmetic, polynomial and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An index or parameter outside its admissible range.
    #[error("{what} = {value} out of range [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: i128,
        lo: i128,
        hi: i128,
    },

    /// An exactness assumption was violated (non-divisible quotient,
    /// leftover prime factor above the bound, ...).
    #[error("integrity error: {0}")]
    Integrity(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn integrity(msg: impl Into<String>) -> Self {
        Error::Integrity(msg.into())
    }
}

/// Fails with [`Error::OutOfRange`] unless `lo <= value <= hi`.
pub(crate) fn check_range(what: &'static str, value: i128, lo: i128, hi: i128) -> Result<()> {
    if value < lo || value > hi {
        Err(Error::OutOfRange {
            what,
            value,
            lo,
            hi,
        })
    } else {
        Ok(())
    }
}
