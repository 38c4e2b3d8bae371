use thiserror::Error;

use crate::report::VerificationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("64-bit overflow while computing {0}")]
    Overflow(&'static str),

    #[error("product {required} exceeds the configured cap of {cap}")]
    CapExceeded { required: u128, cap: u64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A precondition that is itself a verification (e.g. "input is a sum
    /// system") did not hold. Carries the failing report.
    #[error("verification failed: {}", .0.violated_invariant.as_deref().unwrap_or("unknown"))]
    Verification(Box<VerificationReport>),

    #[error("part {part} has {cardinality} elements; mixed-parity systems have no sum-and-distance counterpart")]
    MixedParity { part: usize, cardinality: usize },

    #[error("internal contradiction: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

impl From<VerificationReport> for Error {
    fn from(report: VerificationReport) -> Self {
        Error::Verification(Box::new(report))
    }
}
