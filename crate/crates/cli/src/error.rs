use std::fmt;
use std::io;

/// Failure of a CLI run, mapped onto the process exit status.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, bad config file, or parameters outside the valid domain.
    Usage(String),
    /// The computation ran but too many points failed, or validation failed.
    Numerical(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<ptssh_core::Error> for CliError {
    fn from(e: ptssh_core::Error) -> Self {
        match e {
            ptssh_core::Error::InvalidConfig(m) => CliError::Usage(m),
            other => CliError::Numerical(other.to_string()),
        }
    }
}
