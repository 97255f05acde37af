use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter {
        field: &'static str,
        reason: &'static str,
    },
    /// `|d(ω)|` collapsed relative to its polynomial scale; the operating point
    /// sits on an instability boundary.
    #[error("response denominator is singular at omega = {omega:e} rad/s")]
    NearSingular { omega: f64 },
    #[error("numerical failure in {stage}: {detail}")]
    NumericalFailure {
        stage: &'static str,
        detail: &'static str,
    },
    #[error("contract violation: {0}")]
    ContractViolation(&'static str),
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: &'static str) -> Self {
        Error::InvalidParameter { field, reason }
    }
}
