use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An input violates a precondition (a theorem hypothesis or a geometric constraint).
    #[error("domain error: {0}")]
    Domain(String),

    /// Panel refinement hit the cap before two successive estimates agreed.
    #[error("quadrature did not converge after {panels} panels (best estimate {estimate:e}, error estimate {error:e})")]
    NonConvergence { estimate: f64, error: f64, panels: usize },

    /// A Trudinger–Moser integrand overflowed.
    #[error("functional blew up: {0}")]
    BlowUp(String),

    /// Every optimizer start produced a degenerate (zero or non-finite) objective.
    #[error("optimizer failed: {0}")]
    Degenerate(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for precondition failures, false for numerical failures.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::Domain(_))
    }
}
