//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input rejected because it sits on (or too close to) a critical point.
    #[error("x = {x} is within {limit:.0e} of a critical point (|f'(x)| = {deriv_abs:.3e})")]
    CriticalPoint { x: f64, deriv_abs: f64, limit: f64 },

    /// `ln(k/b - 1)` undefined: the map has no fixed point at these parameters.
    #[error("no fixed point: k/b - 1 = {ratio} is not positive (b = {b}, k = {k})")]
    NoFixedPoint { b: f64, k: f64, ratio: f64 },

    /// An argument lies outside the operation's domain of definition.
    #[error("domain error: {0}")]
    Domain(String),

    /// Parameters lie outside the region an operation requires.
    #[error("parameters outside required region: {0}")]
    NotInRegion(String),

    /// No sign change of f²(x) - x was found while bracketing the 2-cycle.
    #[error("no sign change of f^2(x) - x on [-{x_big:e}, x*) at b = {b}, k = {k}")]
    Bracket { b: f64, k: f64, x_big: f64 },

    /// Orbit classification could not commit to a verdict.
    #[error(
        "unresolved attractor: no period <= {p_max} found and Lyapunov estimate \
         {lyapunov:.3e} lies in the dead band"
    )]
    UnresolvedAttractor { lyapunov: f64, p_max: usize },

    /// Newton iteration failed to reach the residual tolerance.
    #[error("Newton did not converge after {iters} iterations (residuals {r1:.3e}, {r2:.3e})")]
    NoConvergence { iters: usize, r1: f64, r2: f64 },

    /// Newton system became numerically singular.
    #[error("singular Jacobian (|det| = {det_abs:.3e})")]
    SingularJacobian { det_abs: f64 },

    /// Adaptive ODE step shrank below the hard floor.
    #[error("step size underflow at t = {t} (h = {h:.3e})")]
    StepUnderflow { t: f64, h: f64 },

    /// Trajectory never crosses the section level downward.
    #[error("no downward crossings of s = {s_level}")]
    NoCrossings { s_level: f64 },

    /// Configuration file rejected, with the offending line and field.
    #[error("config line {line}, field `{field}`: {message}")]
    Config { line: usize, field: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
