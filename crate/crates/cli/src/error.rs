use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const OUTSIDE_SCOPE: i32 = 3;
    pub const REGIME: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] hypam::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Core(e) => match e {
                hypam::Error::RegimeViolation(_) => exit::REGIME,
                hypam::Error::NonconvergentAtTolerance { .. } => exit::FAILED,
                _ => exit::USAGE,
            },
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => exit::FAILED,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
