use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or iteration failed to reach the requested tolerance.
    #[error("no convergence after {terms} terms, last term {last_term:e}")]
    Convergence { terms: usize, last_term: f64 },

    /// A gamma factor was requested at a non-positive integer.
    #[error("gamma pole at {0}")]
    Pole(f64),

    /// A named parameter constraint does not hold.
    #[error("constraint violated: {0}")]
    Constraint(String),

    /// Requested band exceeds what the sample grid can resolve.
    #[error("band {band} cannot be recovered from {samples} samples")]
    Aliasing { band: usize, samples: usize },

    /// The weight (1-r)^{-u} is not integrable on the requested interval.
    #[error("non-integrable weight exponent u = {0}")]
    NonIntegrable(f64),

    /// Floating-point precision ran out before the requested depth.
    #[error("capacity exhausted at depth {achieved} of {requested}")]
    Capacity { achieved: usize, requested: usize },

    /// A construction postcondition could not be met.
    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
