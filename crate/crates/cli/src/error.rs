use std::process::ExitCode;

use galegap_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed input; `location` names the file and field.
    #[error("parse error in {location}: {message}")]
    Parse { location: String, message: String },
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn parse(location: impl Into<String>, message: impl ToString) -> Self {
        CliError::Parse { location: location.into(), message: message.to_string() }
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Parse { .. } | CliError::Io { .. } => ExitCode::from(2),
            CliError::Contract(_) => ExitCode::from(3),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Parse { what, text } => CliError::parse(what, format!("cannot read {text:?}")),
            CoreError::Contract { contract } => CliError::Contract(contract.into()),
            other => CliError::Contract(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
