use thiserror::Error;

/// Errors produced by the simulator.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Every receive compensation gain toward the surface is zero, so the
    /// span-based sizing rule has no weight to work with.
    #[error("no visible surface: all receive compensation gains are zero")]
    NoVisibleSurface,

    #[error("scenario field `{field}`: {reason}")]
    Validation { field: String, reason: String },

    #[error("scenario parse error: {0}")]
    Parse(#[from] toml::de::Error),

    #[error("invalid grid spec `{spec}`: {reason}")]
    Grid { spec: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn validation(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
