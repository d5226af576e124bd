use thiserror::Error;

use crate::expr::{EvalError, ParseError};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("evaluation failed: {0}")]
    Eval(#[from] EvalError),
    #[error("coefficient value is not finite at x = {x}")]
    NonFinite { x: f64 },
    #[error("grid size {0} must be a power of two and at least 16")]
    InvalidGridSize(usize),
    #[error("period must be positive and finite, got {0}")]
    InvalidPeriod(f64),
    #[error("{name} must be positive, got {value}")]
    NotPositive { name: &'static str, value: f64 },
    #[error("coefficient must be strictly positive; minimum {min} at x = {x}")]
    NonPositiveCoefficient { min: f64, x: f64 },
    #[error("coefficient grids do not match (period {0} vs {1}, size {2} vs {3})")]
    GridMismatch(f64, f64, usize, usize),
    #[error("arithmetic mean of r must be positive, got {0}")]
    NonPositiveGrowthMean(f64),
    #[error("eigen iteration did not converge after {iterations} iterations (change {change:e})")]
    EigenNoConvergence { iterations: usize, change: f64 },
    #[error("principal eigenvector has mixed signs (min/max = {ratio:e}); grid too coarse")]
    MixedSignEigenvector { ratio: f64 },
    #[error("singular pivot in periodic tridiagonal solve")]
    SingularSystem,
    #[error("variational descent failed to decrease from the start point (I = {value})")]
    NoDescent { value: f64 },
    #[error("minimum of -k/lambda not bracketed within [{lo:e}, {hi:e}]")]
    BracketExhausted { lo: f64, hi: f64 },
    #[error("Newton iteration for the stationary state diverged after {steps} steps (residual {residual:e})")]
    NewtonDivergence { steps: usize, residual: f64 },
    #[error("stationary state lost positivity (min {min:e})")]
    LostPositivity { min: f64 },
    #[error("invalid simulation setup: {0}")]
    InvalidSimulation(String),
    #[error("solution went negative ({value:e}) at t = {t}")]
    NegativeSolution { value: f64, t: f64 },
    #[error("front reached the boundary layer during the fit window")]
    BoundaryContamination,
    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// `true` for errors caused by invalid inputs rather than numerical breakdown.
    pub fn is_precondition(&self) -> bool {
        match self {
            Error::Parse(_)
            | Error::Eval(_)
            | Error::NonFinite { .. }
            | Error::InvalidGridSize(_)
            | Error::InvalidPeriod(_)
            | Error::NotPositive { .. }
            | Error::NonPositiveCoefficient { .. }
            | Error::GridMismatch(..)
            | Error::NonPositiveGrowthMean(_)
            | Error::InvalidSimulation(_) => true,
            Error::Context { source, .. } => source.is_precondition(),
            _ => false,
        }
    }
}
