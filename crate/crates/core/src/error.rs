use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EqcError {
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    Validation(String),

    /// A dense representation would exceed the configured size cap.
    /// `required == usize::MAX` means the size overflowed.
    #[error("{what} needs dimension {required}, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        required: usize,
        cap: usize,
    },

    #[error("unsupported: {0}")]
    Capability(String),

    /// Grid or statistical precondition (e.g. an odd N in an ε fit grid).
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, EqcError>;

pub(crate) fn validation<T>(msg: impl Into<String>) -> Result<T> {
    Err(EqcError::Validation(msg.into()))
}
