use std::fmt;
use std::path::Path;

use exact_adjoint::Error;

pub const EXIT_PARSE: u8 = 2;
pub const EXIT_INVARIANT: u8 = 3;
pub const EXIT_ORACLE: u8 = 4;
pub const EXIT_TABLE: u8 = 5;

/// A failed command with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(EXIT_PARSE, message)
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        Self::new(1, format!("{}: {err}", path.display()))
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Parse { .. } => EXIT_PARSE,
            _ => EXIT_INVARIANT,
        };
        Self::new(code, err.to_string())
    }
}

/// Adds the source name to parse errors.
pub fn in_file(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |err| {
        let mut f = Failure::from(err);
        f.message = format!("{}: {}", path.display(), f.message);
        f
    }
}

pub type CliResult<T> = std::result::Result<T, Failure>;

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|e| Failure::io(path, e))
}
