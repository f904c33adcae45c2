use tcss_core::localfield::FieldError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read spec: {0}")]
    Io(String),
    #[error("cannot parse spec: {0}")]
    Spec(String),
    #[error("invalid field: {0}")]
    Field(FieldError),
    #[error("{0}")]
    Compute(String),
}

impl Error {
    /// Process exit code: 2 for unusable input, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Spec(_) | Error::Field(_) => 2,
            Error::Compute(_) => 1,
        }
    }
}

impl From<FieldError> for Error {
    fn from(e: FieldError) -> Self {
        Error::Field(e)
    }
}
