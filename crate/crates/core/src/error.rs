use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge on [{a}, {b}]: estimate {value} with error {error_estimate}")]
    Quadrature {
        a: f64,
        b: f64,
        value: f64,
        error_estimate: f64,
    },

    #[error("newton iteration diverged after {iterations} iterations (residual {residual:.3e}); try continuation from a nearby parameter")]
    NewtonDivergence {
        iterations: usize,
        residual: f64,
        history: Vec<f64>,
        /// Unknowns of the final iterate, node by node.
        last_iterate: Vec<f64>,
    },

    #[error("mesh refinement exceeded {max_intervals} intervals (residual {residual:.3e})")]
    MeshLimit { max_intervals: usize, residual: f64 },

    #[error("singular collocation matrix")]
    Singular,

    #[error("continuation failed at parameter {parameter}: {source}")]
    Continuation {
        parameter: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("converged to the wrong mode: lambda = {found}, expected {expected} (tolerance {allowed})")]
    ModeJump {
        found: f64,
        expected: f64,
        allowed: f64,
    },

    #[error("converged to a mode with {zeros} interior zeros, expected {expected}")]
    ModeNodes { zeros: usize, expected: usize },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
