use thiserror::Error;

/// Failure modes shared by every evaluation path.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument or parameter lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),
    /// A numerical scheme could not meet its tolerance within its budget.
    #[error("accuracy error: {0}")]
    Accuracy(String),
    /// A denominator vanished (to working precision) at an evaluation node.
    #[error("singularity: {0}")]
    Singularity(String),
    /// A Laplace-domain argument lies on the branch cut along the negative real axis.
    #[error("branch cut: {0}")]
    Branch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
