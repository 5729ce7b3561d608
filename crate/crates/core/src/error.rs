use thiserror::Error;

use crate::state::Site;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AfError {
    #[error("non-positive density {rho:e} at {location}")]
    NonPositiveDensity { rho: f64, location: String },

    #[error("non-positive pressure {p:e} at {location}")]
    NonPositivePressure { p: f64, location: String },

    #[error("point ({x}, {y}) lies outside the grid and ghost layers")]
    OutOfDomain { x: f64, y: f64 },

    #[error("arc decomposition produced no arcs")]
    QuadratureDegenerate,

    #[error("periodic boundaries must be paired on opposite sides")]
    InconsistentPeriodicity,

    #[error("inflow state is not admissible")]
    InadmissibleInflow,

    #[error("point value at {site:?} is inadmissible after the Lax-Friedrichs fallback (step {step})")]
    FatalInadmissible { site: Site, step: usize },

    #[error("cell average ({i}, {j}) is inadmissible after the update (step {step}): {detail}")]
    InadmissibleAverage {
        i: isize,
        j: isize,
        step: usize,
        detail: String,
    },

    #[error("unknown problem '{0}'")]
    UnknownProblem(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for AfError {
    fn from(e: std::io::Error) -> Self {
        AfError::Io(e.to_string())
    }
}

impl AfError {
    /// Solver failures (as opposed to configuration or i/o problems).
    pub fn is_solver_fatal(&self) -> bool {
        !matches!(self, AfError::UnknownProblem(_) | AfError::Config(_) | AfError::Io(_))
    }
}

pub type Result<T> = std::result::Result<T, AfError>;
