use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("config: missing key {0}")]
    MissingKey(&'static str),

    #[error("config: {0}")]
    Invalid(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{}: {msg}", path.display())]
    Csv { path: PathBuf, msg: String },

    #[error(transparent)]
    Numeric(#[from] ss_asymptotics::Error),

    /// Outputs were written but a check did not pass.
    #[error("check failed: {0}")]
    Guard(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for bad input, 3 for I/O, 4 for numerical failures, 5 for failed checks.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. }
            | CliError::MissingKey(_)
            | CliError::Invalid(_)
            | CliError::Csv { .. } => 2,
            CliError::Io { .. } => 3,
            CliError::Numeric(ss_asymptotics::Error::InvalidProfile(_))
            | CliError::Numeric(ss_asymptotics::Error::BoundaryDecay { .. }) => 2,
            CliError::Numeric(_) => 4,
            CliError::Guard(_) => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
