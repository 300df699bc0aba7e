use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid {field}: {value} (must be strictly positive and finite)")]
    InvalidConfig { field: &'static str, value: f64 },

    #[error("invalid parameter {field}: {value}")]
    InvalidParameter { field: &'static str, value: f64 },

    #[error("configuration is in the trivial regime; the encoder feasible set is empty")]
    InfeasibleRegime,

    #[error("cubic does not change sign on [{lo}, {hi}] (f(lo) = {f_lo:e}, f(hi) = {f_hi:e})")]
    BracketFailure { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    #[error("bisection did not converge within {iterations} iterations")]
    IterationLimit { iterations: usize },

    #[error("watermark gain radicand {value:e} is negative beyond tolerance")]
    NegativeRadicand { value: f64 },

    #[error("observation is identically zero while kappa = {kappa} is nonzero")]
    DegenerateObservation { kappa: f64 },

    #[error("{what}")]
    InsufficientSamples { what: String },

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),
}

impl Error {
    /// Input-validation failures, as opposed to numerical failures inside the solver.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidConfig { .. }
                | Error::InvalidParameter { .. }
                | Error::InvalidSweep(_)
                | Error::InsufficientSamples { .. }
        )
    }
}
