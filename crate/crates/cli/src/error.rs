use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] partiq_core::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("output error: {0}")]
    Render(String),
}

impl CliError {
    /// 2 for usage and parse errors, 3 for size limits.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(partiq_core::Error::SizeLimitExceeded { .. }) => 3,
            CliError::Usage(_) | CliError::Core(_) => 2,
            CliError::Io(_) | CliError::Render(_) => 1,
        }
    }
}
