use std::fmt;

use gridiv_core::Error;
use serde_json::json;

pub const EXIT_INPUT: u8 = 2;
pub const EXIT_DISAGREEMENT: u8 = 3;
pub const EXIT_GUARD: u8 = 4;

/// A failed run: exit status plus a message, reported on stderr as JSON.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    pub fn disagreement(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_DISAGREEMENT,
            message: message.into(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.code {
            EXIT_DISAGREEMENT => "oracle_disagreement",
            EXIT_GUARD => "guard_exceeded",
            EXIT_INPUT => "input",
            _ => "io",
        }
    }

    pub fn to_json(&self) -> String {
        json!({
            "error": {
                "kind": self.kind(),
                "exit_code": self.code,
                "message": self.message,
            }
        })
        .to_string()
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
            Error::EdgeLimitExceeded { .. } => EXIT_GUARD,
            Error::TableConflict { .. }
            | Error::Disagreement { .. }
            | Error::Fit { .. }
            | Error::NonIntegralOrbitCount { .. } => EXIT_DISAGREEMENT,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(err: std::io::Error) -> Self {
        Self {
            code: 1,
            message: err.to_string(),
        }
    }
}
