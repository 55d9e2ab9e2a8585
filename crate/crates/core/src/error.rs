use thiserror::Error;

/// Errors raised by the algebra routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or mismatched arguments.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// A degree above the configured enumeration cap was requested.
    #[error("degree {requested} exceeds the configured cap of {cap}")]
    ResourceLimit { requested: usize, cap: usize },
    /// Positive characteristic computations require degree < p.
    #[error("degree {degree} is not below the field characteristic {prime}")]
    CharacteristicGuard { degree: usize, prime: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn arg_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
