use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An exact value does not fit the fixed-width integer used for it.
    #[error("arithmetic overflow while computing {0}")]
    Overflow(String),
    /// A result that must be exact (e.g. a divisibility) failed to be.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("size limit exceeded: {what} would exceed {cap} elements")]
    SizeLimit { what: &'static str, cap: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn overflow(what: impl Into<String>) -> Self {
        Error::Overflow(what.into())
    }

    /// True for errors caused by arithmetic range or capacity limits rather
    /// than by bad input.
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            Error::Overflow(_) | Error::SizeLimit { .. } | Error::Inconsistent(_)
        )
    }
}
