//! Structure reports and verification suites on top of `superq`.

pub mod report;
pub mod session;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] superq::Error),
    #[error("unknown check {0:?}; run `superq verify --list`")]
    UnknownCheck(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type CliResult<T> = Result<T, CliError>;

/// Exit codes: 2 for unusable input, 3 when a field extension is needed,
/// 1 for everything else.
pub fn exit_code(e: &CliError) -> i32 {
    use superq::Error::*;
    match e {
        CliError::Core(Parse(_) | InvalidSpec(_) | InvalidField(_) | Io(_)) => 2,
        CliError::Core(ExtensionNeeded { .. }) => 3,
        CliError::UnknownCheck(_) | CliError::Io(_) => 2,
        CliError::Core(_) => 1,
    }
}
