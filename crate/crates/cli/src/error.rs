use apportion::ApportionError;
use apportion_oracle::OracleError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input data or an invalid combination of options.
    #[error("{0}")]
    Input(String),
    #[error("line {line}: {message}")]
    InputLine { line: u64, message: String },
    #[error("{0}")]
    Execution(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::InputLine { .. } => 1,
            CliError::Execution(_) => 2,
        }
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub(crate) fn at(line: u64, msg: impl Into<String>) -> Self {
        CliError::InputLine {
            line,
            message: msg.into(),
        }
    }
}

impl From<ApportionError> for CliError {
    fn from(e: ApportionError) -> Self {
        CliError::Execution(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Execution(e.to_string())
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
