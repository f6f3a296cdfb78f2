use std::fmt;
use std::path::Path;

use timelag_core::Error;

/// Process exit codes.
pub mod code {
    pub const FAILURE: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const INPUT: u8 = 3;
    pub const DEGENERATE: u8 = 4;
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        Self::new(code::INPUT, format!("{}: {e}", path.display()))
    }

    pub fn csv(path: &Path, e: csv::Error) -> Self {
        Self::new(code::FAILURE, format!("{}: {e}", path.display()))
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if e.is_degenerate() {
            code::DEGENERATE
        } else if e.is_input() {
            code::INPUT
        } else if matches!(e, Error::Config(_) | Error::InvalidSpec(_)) {
            code::USAGE
        } else {
            code::FAILURE
        };
        Self::new(code, e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}
