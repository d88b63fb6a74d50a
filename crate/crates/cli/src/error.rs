use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VIOLATIONS: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const RESOURCE: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column} (field {field}): {message}")]
    Parse {
        line: usize,
        column: usize,
        field: String,
        message: String,
    },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] toric_towers::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_resource() => exit::RESOURCE,
            _ => exit::USAGE,
        }
    }
}
