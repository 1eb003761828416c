use thiserror::Error;

/// Every failure a construction, query or verification can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("size budget exceeded: {what} needs {needed}, cap is {cap}")]
    BudgetExceeded {
        what: String,
        needed: u128,
        cap: u128,
    },

    #[error("ring axiom violated: {0}")]
    AxiomViolation(String),

    #[error("not a ring homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("not a multiplicative set: {0}")]
    NotMultiplicative(String),

    #[error("unknown element name `{name}` in {ring}")]
    UnknownElement { name: String, ring: String },

    /// An internal cross-check disagreed. Always a bug in this crate or a
    /// counterexample to a claimed law.
    #[error("verification defect: {0}")]
    Defect(String),
}

pub type Result<T, E = RingError> = std::result::Result<T, E>;

pub(crate) fn budget(what: impl Into<String>, needed: u128, cap: u128) -> RingError {
    RingError::BudgetExceeded {
        what: what.into(),
        needed,
        cap,
    }
}
