use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BfnError {
    #[error("fields live on different grids")]
    GridMismatch,

    /// A coefficient overflowed to inf/NaN; `leg` is zero-based.
    #[error("non-finite state in leg {leg} at step {step}")]
    NonFiniteState { leg: usize, step: usize },

    #[error("backward variant {variant} is not available for {model}")]
    VariantMismatch { variant: String, model: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("field must be mean-free (zero mode is {0:e})")]
    NotMeanFree(f64),

    #[error("cannot rescale a zero forcing")]
    ZeroForcing,

    #[error("time span is not an integer number of steps: {0}")]
    InvalidTimeGrid(String),
}

pub type Result<T> = std::result::Result<T, BfnError>;
