use std::fmt;
use std::process::ExitCode;

/// A failed command, classified by the exit code it produces.
#[derive(Debug)]
pub enum CliError {
    /// Flag combinations the parser cannot rule out on its own.
    Usage(String),
    /// Unreadable or malformed input, or an instance outside a solver's domain.
    Input(String),
    Budget(String),
    /// A computed answer failed its own check.
    Verification(String),
    /// `validate` found a decomposition that breaks one of its conditions.
    Invalid,
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Invalid => 1,
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
            CliError::Budget(_) => 4,
            CliError::Verification(_) => 5,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Budget(m) => write!(f, "{m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
            CliError::Invalid => write!(f, "decomposition is invalid"),
        }
    }
}

impl From<tempotw::Error> for CliError {
    fn from(e: tempotw::Error) -> Self {
        match e {
            tempotw::Error::Budget(_) => CliError::Budget(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;
