use thiserror::Error;

use crate::linear::LinearError;
use crate::monomial::MonomialError;
use crate::quiver::QuiverError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error(transparent)]
    Linear(#[from] LinearError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Two independent computations disagree, or a theorem-level assertion
    /// failed. Always an implementation defect.
    #[error("consistency violation: {0}")]
    Consistency(String),
}
