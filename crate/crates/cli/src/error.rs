use thiserror::Error;
use turning_frame::Error as CoreError;

/// Failure of a CLI run, classified by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Resolution(String),
    #[error("{0}")]
    Asymptotics(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    /// 0 success, 2 configuration or validation, 3 resolution,
    /// 4 asymptotics; 1 for i/o and other runtime failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Resolution(_) => 3,
            CliError::Asymptotics(_) => 4,
            CliError::Io(_) | CliError::Runtime(_) => 1,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let msg = e.to_string();
        match e {
            CoreError::InvalidParameter { .. }
            | CoreError::Domain(_)
            | CoreError::Parse(_)
            | CoreError::InvalidState(_)
            | CoreError::BeyondTurningPoint { .. }
            | CoreError::DimensionMismatch { .. }
            | CoreError::NotHermitian(_) => CliError::Config(msg),
            CoreError::Resolution(_) => CliError::Resolution(msg),
            CoreError::InsufficientAsymptoticSamples { .. } | CoreError::NotAsymptotic { .. } => {
                CliError::Asymptotics(msg)
            }
            CoreError::Io(_) => CliError::Io(msg),
            CoreError::Inconsistent { .. } | CoreError::Numerical(_) => CliError::Runtime(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
