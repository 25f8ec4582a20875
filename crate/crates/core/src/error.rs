use thiserror::Error;

use crate::crown::CrownVerdict;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input. `line` is 1-based when the input came from a file.
    #[error("format error{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Format { line: Option<usize>, message: String },

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    /// A caller broke a documented precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid crown decomposition: {0}")]
    InvalidCrown(CrownVerdict),

    #[error("oracle refused instance with {n} vertices (ceiling {ceiling})")]
    OracleCeiling { n: usize, ceiling: usize },

    #[error("generator: {0}")]
    Generator(String),

    /// Signals a bug in the engine itself (solver, translation, bookkeeping).
    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn format(line: impl Into<Option<usize>>, message: impl Into<String>) -> Self {
        Error::Format {
            line: line.into(),
            message: message.into(),
        }
    }
}
