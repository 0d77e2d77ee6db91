use thiserror::Error;

/// Exit status when every check passes.
pub const EXIT_OK: i32 = 0;
/// At least one exact check failed.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Bad flags, bad config file, unparsable query.
pub const EXIT_USAGE: i32 = 2;
/// The truncation window cannot hold the requested computation.
pub const EXIT_CONFIG: i32 = 3;
/// Anything else the core reports (unstable key, missing backend, ...).
pub const EXIT_RUNTIME: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] conelab_core::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Core(conelab_core::Error::InvalidTruncation(_) | conelab_core::Error::WindowOverflow { .. }) => {
                EXIT_CONFIG
            }
            CliError::Core(_) | CliError::Io(_) => EXIT_RUNTIME,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
