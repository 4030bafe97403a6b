use std::path::PathBuf;

use hus_core::Error;

use crate::spec::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}{error}", path.as_ref().map(|p| format!("{}: ", p.display())).unwrap_or_default())]
    Parse { path: Option<PathBuf>, error: ParseError },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    /// Malformed command-line values.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl From<ParseError> for CliError {
    fn from(error: ParseError) -> Self {
        CliError::Parse { path: None, error }
    }
}

/// Process exit status for a successful run.
pub const EXIT_OK: u8 = 0;
/// Unparseable input, unreadable files, bad arguments.
pub const EXIT_PARSE: u8 = 1;
/// A hypothesis or precondition of the requested analysis fails.
pub const EXIT_HYPOTHESIS: u8 = 2;
/// A numerical procedure broke down.
pub const EXIT_NUMERIC: u8 = 3;
/// A property suite found a counterexample.
pub const EXIT_COUNTEREXAMPLE: u8 = 4;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Io { .. } | CliError::Usage(_) => EXIT_PARSE,
            CliError::Core(Error::NumericallyZero | Error::NonConvergent(_)) => EXIT_NUMERIC,
            CliError::Core(_) => EXIT_HYPOTHESIS,
        }
    }
}
