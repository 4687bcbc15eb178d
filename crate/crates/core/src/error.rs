use thiserror::Error;

/// Construction-time violations of the sequence invariants.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpaceError {
    #[error("invariant violated ({rule}): {detail}")]
    Invariant { rule: &'static str, detail: String },
}

/// Failures of the certified infinite-sum evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModularError {
    #[error("tolerance must be a positive finite number, got {0}")]
    BadTolerance(f64),
    #[error("exponent must satisfy p > 1, got {0}")]
    BadExponent(f64),
    #[error("modular sum overflowed to a non-finite value")]
    NonFinite,
    #[error("could not certify the tail within {tol:e} (best bracket half-width {achieved:e})")]
    Uncertifiable { tol: f64, achieved: f64 },
}

/// Failures of the Luxemburg and Amemiya solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NormError {
    #[error(transparent)]
    Modular(#[from] ModularError),
    #[error("could not bracket the {what} after {steps} expansions")]
    Bracket { what: &'static str, steps: usize },
    #[error("no convergence to {tol:e} after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        tol: f64,
        iterations: usize,
        residual: f64,
    },
}
