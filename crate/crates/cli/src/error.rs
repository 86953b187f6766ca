use std::fmt;
use std::process::ExitCode;

use serde::Serialize;

use qlower_core::harness::HarnessError;
use qlower_core::indicator::format::BundleFormatError;
use qlower_core::indicator::ApproxError;
use qlower_core::lowering::LoweringError;
use qlower_core::net::format::FormatError;
use qlower_core::net::NetError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    /// Inputs were well-formed but a check failed (alphabet, bound, precondition, tolerance).
    Validation,
    Usage,
    Io,
}

impl ErrorKind {
    pub fn exit_code(self) -> ExitCode {
        ExitCode::from(match self {
            ErrorKind::Validation => 1,
            ErrorKind::Usage => 2,
            ErrorKind::Io => 3,
        })
    }
}

#[derive(Debug, Serialize)]
pub struct CliError {
    #[serde(rename = "error")]
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Usage, message: message.into() }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Validation, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError { kind: ErrorKind::Io, message: message.into() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("error serializes")
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Io { .. } => CliError::io(e.to_string()),
            _ => CliError::validation(e.to_string()),
        }
    }
}

impl From<BundleFormatError> for CliError {
    fn from(e: BundleFormatError) -> Self {
        match e {
            BundleFormatError::Format(f) => f.into(),
            BundleFormatError::Approx(a) => a.into(),
        }
    }
}

macro_rules! validation_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::validation(e.to_string())
            }
        }
    )*};
}

validation_from!(LoweringError, ApproxError, NetError, HarnessError);
