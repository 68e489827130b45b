use thiserror::Error;

/// Errors produced by the bound, gap, concentration and mutual-information routines.
///
/// Every variant names the violated precondition or the numerical failure so
/// that callers (in particular the CLI) can report it verbatim.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument was outside the documented domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Bisection was asked to solve on an interval without a sign change.
    #[error("no bracket: f({lo}) = {f_lo} and f({hi}) = {f_hi} have the same sign")]
    NoBracket { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },

    /// An iterative solve did not reach its tolerance within the iteration budget.
    #[error("solver did not converge within {iterations} iterations")]
    NonConvergence { iterations: u32 },

    /// Adaptive quadrature could not meet the requested error bound within its
    /// work budget.
    #[error("quadrature did not reach the requested accuracy (error estimate {error_estimate:.3e} > target {target:.3e})")]
    QuadratureNonConvergence { error_estimate: f64, target: f64 },

    /// Subtraction of two infinite bound values was requested. Gaps at infinite
    /// SNR must go through the dedicated limit formulas instead.
    #[error("indeterminate extended-real arithmetic: {0}")]
    IndeterminateLimit(String),

    /// A Monte Carlo check found its base-probability hypothesis violated, so
    /// the inequality under test makes no claim for the supplied set.
    #[error("base probability hypothesis violated: estimated {estimated:.6e} is below required {required:.6e} by more than 3 standard errors ({stderr:.3e})")]
    BaseProbabilityTooSmall { estimated: f64, required: f64, stderr: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
