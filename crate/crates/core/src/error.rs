use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Arguments outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed or out-of-range input that is not a domain question (sizes, limits).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A configured work budget ran out before the requested accuracy was reached.
    #[error("resource budget exceeded: {what}")]
    Budget {
        what: String,
        partial: Option<Complex64>,
        tail_bound: Option<f64>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn budget(what: impl Into<String>) -> Self {
        Error::Budget {
            what: what.into(),
            partial: None,
            tail_bound: None,
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}
