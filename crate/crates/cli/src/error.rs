use std::fmt;

use thiserror::Error;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Io = 1,
    InvalidInput = 2,
    Unstable = 3,
    NumericalFailure = 4,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid `{field}`: {reason}")]
    Invalid { field: String, reason: String },
    #[error("unstable operating point: {0}")]
    Unstable(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn invalid(field: impl fmt::Display, reason: impl fmt::Display) -> Self {
        CliError::Invalid {
            field: field.to_string(),
            reason: reason.to_string(),
        }
    }

    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Invalid { .. } => ExitStatus::InvalidInput,
            CliError::Unstable(_) => ExitStatus::Unstable,
            CliError::Numerical(_) => ExitStatus::NumericalFailure,
            CliError::Io(_) => ExitStatus::Io,
        }
    }
}

impl From<optorouter_core::Error> for CliError {
    fn from(err: optorouter_core::Error) -> Self {
        use optorouter_core::Error as E;
        match err {
            E::InvalidParameter { field, reason } => CliError::invalid(field, reason),
            E::ContractViolation(msg) => CliError::invalid("config", msg),
            E::NearSingular { .. } => CliError::Unstable(err.to_string()),
            E::NumericalFailure { .. } => CliError::Numerical(err.to_string()),
        }
    }
}
