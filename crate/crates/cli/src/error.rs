use std::fmt;

/// Failure of a subcommand, carrying the exit code it maps to.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad input data, domain violations, IO failures. Exit code 2.
    Input(String),
    /// Unusable configuration or manifest. Exit code 3.
    Config(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Config(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Config(m) => write!(f, "configuration error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<tailratio::Error> for CliError {
    fn from(e: tailratio::Error) -> Self {
        match e {
            tailratio::Error::Config(_) => CliError::Config(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
