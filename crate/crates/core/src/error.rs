use thiserror::Error;

use crate::rep::RepError;
use crate::ring::RingError;

/// Errors from the analysis layers (residual classification, Pink-Lie
/// computations, conjugate self-twists).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: &'static str, cap: u64 },
    #[error("unclassifiable projective image of order {0}")]
    Unclassifiable(usize),
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("no conjugator found: {0}")]
    NoConjugator(String),
    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    /// Whether the error stems from an enumeration cap.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. }
                | Error::Ring(RingError::CapExceeded { .. })
                | Error::Rep(RepError::CapExceeded { .. })
                | Error::Rep(RepError::Ring(RingError::CapExceeded { .. }))
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
