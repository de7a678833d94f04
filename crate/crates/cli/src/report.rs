use std::fmt;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::Value;

/// Outcome classes and their process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// Computed, property holds, or pattern absent.
    Ok,
    /// Witness found or property fails.
    Witness,
    /// Budget exhausted or undecided.
    Unknown,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Witness => 1,
            Status::Unknown => 2,
        }
    }
}

pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DATA: u8 = 65;
pub const EXIT_SOFTWARE: u8 = 70;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Data(String),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Data(_) => EXIT_DATA,
            Failure::Internal(_) => EXIT_SOFTWARE,
        })
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Data(m) => write!(f, "{m}"),
            Failure::Internal(m) => write!(f, "{m}"),
        }
    }
}

impl From<ramseylab::Error> for Failure {
    fn from(e: ramseylab::Error) -> Self {
        use ramseylab::Error;
        match e {
            Error::Parse { .. } => Failure::Data(e.to_string()),
            Error::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// What every command prints under `--json`.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Value,
    pub result: Value,
    /// Wall-clock seconds; the only field that varies between identical runs.
    pub timing: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// A command's result before it is printed.
pub struct Outcome {
    pub status: Status,
    pub result: Value,
    /// Plain-text rendering for the non-JSON mode.
    pub text: String,
    pub seed: Option<u64>,
}

impl Outcome {
    pub fn new(
        status: Status,
        result: impl Serialize,
        text: impl Into<String>,
    ) -> Result<Self, Failure> {
        let result = serde_json::to_value(result).map_err(|e| Failure::Internal(e.to_string()))?;
        Ok(Outcome {
            status,
            result,
            text: text.into(),
            seed: None,
        })
    }
}
