use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(&'static str),
    /// A constructor received an inconsistent parameter set.
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    /// The truncated basis would exceed the configured size cap.
    #[error("basis dimension {dimension} exceeds the cap of {cap} states")]
    DimensionOverflow {
        /// Requested dimension.
        dimension: usize,
        /// Configured cap.
        cap: usize,
    },
    /// Adaptive quadrature ran out of subintervals.
    #[error("quadrature did not reach tolerance within {intervals} subintervals")]
    Quadrature {
        /// Subintervals used.
        intervals: usize,
    },
    /// The propagator could not meet its error tolerance.
    #[error("propagator failed to converge at t = {time:e}")]
    Convergence {
        /// Elapsed time at which step control gave up.
        time: f64,
    },
}

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
