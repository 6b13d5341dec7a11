use thiserror::Error;

use crate::exact::ExactScalar;

/// Errors raised by the exact and numeric pipelines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("NonPositiveParameter: {name} = {value} must be > 0")]
    NonPositiveParameter {
        name: &'static str,
        value: ExactScalar,
    },

    #[error("OrderMismatch: series of order {left} and {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("NonzeroConstantTerm: exp expects f[0] = 0, got {0}")]
    NonzeroConstantTerm(ExactScalar),

    #[error("ConstantTermNotOne: log expects f[0] = 1, got {0}")]
    ConstantTermNotOne(ExactScalar),

    #[error("OrderTooSmall: need order >= {required}, got {actual}")]
    OrderTooSmall { required: usize, actual: usize },

    #[error("TranscendentalPrefactor: operation needs a purely rational series (e^{0} prefactor)")]
    TranscendentalPrefactor(i32),

    #[error("HypothesisViolated: {0}")]
    HypothesisViolated(String),

    #[error("NonpositiveDenominatorCoefficient at index {index}")]
    NonpositiveDenominatorCoefficient { index: usize },

    #[error("DomainError: {0}")]
    DomainError(String),

    #[error("NonconvergentAtTolerance: term cap {terms} reached")]
    NonconvergentAtTolerance { terms: usize },

    #[error("RegimeViolation: {0}")]
    RegimeViolation(String),

    #[error("ParseError: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
