use thiserror::Error;

use crate::types::MotionState;

/// Errors raised by the dynamics library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation or type.
    #[error("{what} = {value} is out of domain: {requirement}")]
    Domain {
        what: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// The request itself is malformed (bad grid, unknown parameter, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// Scenario text could not be parsed.
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// Integration produced a state the dynamics cannot continue from.
    #[error("integration aborted at t = {t}: {reason}")]
    IntegrationAborted {
        t: f64,
        reason: String,
        last_valid: Box<MotionState<f64>>,
    },

    /// No ground friction coefficient in [0, 1] guarantees forward motion.
    #[error("no friction coefficient in [0, 1] guarantees forward motion")]
    UnreachableGuarantee,

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64, requirement: &'static str) -> Self {
        Error::Domain {
            what,
            value,
            requirement,
        }
    }

    /// True for errors caused by the numerics rather than by the input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::IntegrationAborted { .. } | Error::UnreachableGuarantee
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
