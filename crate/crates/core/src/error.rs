use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A numeric input was non-finite or out of its allowed range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Two inputs that must agree do not.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A sweep description (grid, axis) is malformed.
    #[error("invalid sweep spec: {0}")]
    InvalidSpec(String),

    /// Malformed sweep table text.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
