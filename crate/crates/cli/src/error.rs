use serde::Serialize;
use thiserror::Error;

/// Exit statuses of the `kbg` binary.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const ERROR: i32 = 1;
    pub const FAIL: i32 = 2;
    pub const INCONCLUSIVE: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at {path:?}: {message}")]
    Parse { path: String, message: String },
    #[error("{0}")]
    Compute(#[from] kbg_core::Error),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Serialize)]
struct Diagnostic<'a> {
    error: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<&'a str>,
    message: String,
}

impl CliError {
    pub fn parse(path: &str, message: String) -> CliError {
        CliError::Parse {
            path: path.to_string(),
            message,
        }
    }

    /// JSON pointer of the offending field, for parse errors.
    pub fn path(&self) -> Option<&str> {
        match self {
            CliError::Parse { path, .. } => Some(path),
            _ => None,
        }
    }

    /// One-line JSON diagnostic for the error stream.
    pub fn to_json(&self) -> String {
        let (kind, message) = match self {
            CliError::Parse { message, .. } => ("parse", message.clone()),
            CliError::Compute(e) => ("compute", e.to_string()),
            CliError::Io { message, .. } => ("io", message.clone()),
        };
        let d = Diagnostic {
            error: kind,
            path: self.path(),
            message,
        };
        serde_json::to_string(&d).expect("diagnostic serializes")
    }
}
