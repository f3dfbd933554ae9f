use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    Io,
    Parse,
    Validation,
    Unsupported,
}

/// A failure with the exit code it maps to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
}

impl CliError {
    pub fn validation(msg: impl Into<String>) -> Self {
        Self {
            kind: ErrorKind::Validation,
            message: msg.into(),
            line: None,
            column: None,
        }
    }

    pub fn io(msg: impl Into<String>) -> Self {
        Self {
            kind: ErrorKind::Io,
            message: msg.into(),
            line: None,
            column: None,
        }
    }

    pub fn from_json(e: serde_json::Error) -> Self {
        Self {
            kind: ErrorKind::Parse,
            message: e.to_string(),
            line: Some(e.line()),
            column: Some(e.column()),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::Parse | ErrorKind::Io => 2,
            ErrorKind::Validation => 3,
            ErrorKind::Unsupported => 4,
        }
    }
}

impl From<bunch_core::Error> for CliError {
    fn from(e: bunch_core::Error) -> Self {
        let kind = match e {
            bunch_core::Error::Unsupported(_) | bunch_core::Error::SizeLimit { .. } => ErrorKind::Unsupported,
            _ => ErrorKind::Validation,
        };
        Self {
            kind,
            message: e.to_string(),
            line: None,
            column: None,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ErrorKind::Io => "io error",
            ErrorKind::Parse => "parse error",
            ErrorKind::Validation => "validation error",
            ErrorKind::Unsupported => "unsupported",
        };
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "{kind} at line {l}, column {c}: {}", self.message),
            _ => write!(f, "{kind}: {}", self.message),
        }
    }
}

impl std::error::Error for CliError {}
