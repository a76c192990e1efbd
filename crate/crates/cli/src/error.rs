use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes. Nothing else is ever returned.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 1;
    pub const MATH_DOMAIN: i32 = 2;
    pub const ZETA_MISMATCH: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}:{column}: {msg}")]
    Parse { path: PathBuf, line: usize, column: usize, msg: String },

    #[error("invalid algebra file: {0}")]
    File(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] finric_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_math_domain() => exit::MATH_DOMAIN,
            _ => exit::INPUT,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
