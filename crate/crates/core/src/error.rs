use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("unknown vector field `{0}` (expected one of R, F, JF, V, X)")]
    UnknownField(String),

    #[error("field index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("point ({p:.3e}, {q:.3e}) is within {distance:.1e} of a fixed point and has no finite strip coordinate")]
    FixedPointSingular { p: f64, q: f64, distance: f64 },

    #[error("step control failed at t = {t}: error estimate {error:.3e} with step {step:.3e}")]
    StepFailure { t: f64, step: f64, error: f64 },

    #[error("no sign change of the scaling exponent on transversal {index} (g = {g_lo:.3e} .. {g_hi:.3e}); lower delta or raise the resolution")]
    NoBracket { index: usize, g_lo: f64, g_hi: f64 },

    #[error("second transversal crossing at t = {second} after the crossing at t = {first}")]
    MultipleCrossings { first: f64, second: f64 },

    #[error(
        "displacing isotopy misses the target fiber by {miss:.3e} (tolerance {tolerance:.1e})"
    )]
    DisplacementFailed { miss: f64, tolerance: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// Wraps `self` with the name of the pipeline stage that produced it.
    pub fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}
