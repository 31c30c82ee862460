use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A fitted model (e.g. the sinh² excitation law) does not describe the data.
    #[error("model violation: {0}")]
    ModelViolation(String),

    /// The truncated Fock basis is too small or too large for the request.
    #[error("fock cutoff: {0}")]
    Cutoff(String),

    #[error("configuration error at `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("cannot parse configuration: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }

    /// Process exit status: 2 for configuration problems, 3 for numerical ones.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::Parse(_) | Error::InvalidInput(_) => 2,
            Error::Io(_) => 1,
            _ => 3,
        }
    }
}
