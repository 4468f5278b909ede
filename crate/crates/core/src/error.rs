use thiserror::Error;

/// Errors raised by construction and evaluation.
///
/// Check operations do not use this type for their findings; violations of an
/// algebraic identity are reported through [`crate::report::CheckReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("input error: {0}")]
    Input(String),

    /// An arithmetic result left the algebra, e.g. a negative power of a
    /// polynomial (non-Laurent) variable.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("series did not terminate within {cap} applications")]
    IterationCap { cap: usize },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Two independent computations of the same quantity disagree.
    #[error("internal consistency failure: {what}: {left} != {right}")]
    Consistency {
        what: String,
        left: String,
        right: String,
    },
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
