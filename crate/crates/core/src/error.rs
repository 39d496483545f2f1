use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument `{name}` must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("argument `{name}` must be non-negative, got {value}")]
    Negative { name: &'static str, value: f64 },

    #[error("number of variables must be at least {min}, got {got}")]
    TooFewVariables { min: usize, got: usize },

    #[error("polynomial arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },

    #[error("slot {slot} out of range for {arity} variables")]
    SlotOutOfRange { slot: usize, arity: usize },

    #[error("invalid GIG parameters: {0}")]
    InvalidParams(String),

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("quadrature did not reach tolerance {tolerance:e} within {panels} panels")]
    QuadratureNotConverged { tolerance: f64, panels: usize },

    #[error("result is not finite")]
    NonFinite,
}
