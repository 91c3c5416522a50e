use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid {name}: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("space L_{{{p},{b};({a0},{a_inf})}} is trivial (equal to {{0}})")]
    TrivialSpace {
        p: String,
        b: String,
        a0: f64,
        a_inf: f64,
    },

    #[error("step function is not in canonical non-increasing form")]
    NotCanonical,

    #[error("inadmissible interpolation parameters: {0}")]
    Inadmissible(String),

    /// No theorem or corollary applies; `condition` names the violated hypothesis.
    #[error("{context}: condition `{condition}` violated")]
    Hypothesis {
        context: &'static str,
        condition: String,
    },

    #[error("triple (q, c, B) has no class: {0}")]
    Unclassified(String),

    #[error("insufficient resolution: {0}")]
    Resolution(String),

    #[error("empty spectrum")]
    EmptySpectrum,
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn hypothesis(context: &'static str, condition: impl Into<String>) -> Self {
        Error::Hypothesis {
            context,
            condition: condition.into(),
        }
    }

    /// True for failures of a mathematical precondition (dispatch, hypotheses,
    /// classification) as opposed to malformed input.
    pub fn is_dispatch_failure(&self) -> bool {
        matches!(
            self,
            Error::Hypothesis { .. }
                | Error::Unclassified(_)
                | Error::TrivialSpace { .. }
                | Error::Inadmissible(_)
        )
    }
}
