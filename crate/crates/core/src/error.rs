use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {dim} is not supported here: {hint}")]
    UnsupportedDimension { dim: usize, hint: &'static str },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("heat-ball truncation at tau_max = {tau_max} leaves a relative tail of {tail:.3e}")]
    Truncation { tau_max: f64, tail: f64 },

    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),

    #[error("sample set is empty")]
    EmptySamples,

    #[error("sample {index} is not finite")]
    NonFiniteValue { index: usize },

    #[error("weight {index} is not positive")]
    NonPositiveWeight { index: usize },

    #[error("values and weights differ in length ({values} vs {weights})")]
    LengthMismatch { values: usize, weights: usize },

    #[error("operation undefined for exponent {0}")]
    UnsupportedExponent(String),

    #[error("gradient vanishes at the evaluation point")]
    ZeroGradient,

    #[error("stencil leaves the field's domain: {0}")]
    DomainEscape(String),

    #[error("parameter out of the formula's validity range: {0}")]
    OutOfRange(String),

    #[error("rule does not match the requested integral: {0}")]
    MismatchedRule(String),

    #[error("finite-difference derivative failed its consistency check: {0}")]
    DerivativeCheck(String),

    #[error("need at least {needed} sweep points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
