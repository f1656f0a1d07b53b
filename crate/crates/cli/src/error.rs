//! Structured errors with stable code strings and process exit codes.
//!
//! Exit codes: `2` input error, `3` hypothesis violation (reflections or
//! trivial group), `4` resource cap.

use omk_core::{GroupError, InvariantError, PairError};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    /// Stable machine-readable code.
    pub code: &'static str,
    /// Process exit code.
    pub exit_code: i32,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

impl std::error::Error for CliError {}

impl CliError {
    pub fn input(code: &'static str, message: impl Into<String>) -> CliError {
        CliError {
            code,
            exit_code: 2,
            message: message.into(),
        }
    }

    pub fn io(err: &std::io::Error, path: &std::path::Path) -> CliError {
        CliError::input("io_error", format!("{}: {err}", path.display()))
    }

    pub fn invalid_json(err: &serde_json::Error) -> CliError {
        CliError::input("invalid_json", err.to_string())
    }

    pub fn invalid_spec(message: impl Into<String>) -> CliError {
        CliError::input("invalid_spec", message)
    }

    pub fn parse(context: &str, err: &dyn fmt::Display) -> CliError {
        CliError::input("parse_error", format!("{context}: {err}"))
    }
}

impl From<GroupError> for CliError {
    fn from(err: GroupError) -> CliError {
        let (code, exit_code) = match &err {
            GroupError::CapExceeded { .. } => ("cap_exceeded", 4),
            GroupError::OrderOverflow { .. } => ("order_overflow", 4),
            GroupError::SingularGenerator { .. } => ("singular_generator", 2),
            _ => ("invalid_spec", 2),
        };
        CliError {
            code,
            exit_code,
            message: err.to_string(),
        }
    }
}

impl From<InvariantError> for CliError {
    fn from(err: InvariantError) -> CliError {
        let (code, exit_code) = match &err {
            InvariantError::TrivialGroup => ("trivial_group", 3),
            InvariantError::HasReflections(_) => ("has_reflections", 3),
            _ => ("invalid_spec", 2),
        };
        CliError {
            code,
            exit_code,
            message: err.to_string(),
        }
    }
}

impl From<PairError> for CliError {
    fn from(err: PairError) -> CliError {
        let code = match &err {
            PairError::DuplicateComponent(_) => "duplicate_component",
            PairError::DuplicateSubset(_) => "duplicate_subset",
            PairError::MissingEmptyStratum => "missing_empty_stratum",
            PairError::UnknownComponent(_) => "unknown_component",
            PairError::StrataNotPartition { .. } => "strata_not_partition",
        };
        CliError::input(code, err.to_string())
    }
}
