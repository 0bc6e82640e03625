//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A quantity fell outside the range covered by tabulated data.
    #[error("{quantity} = {value} outside supported domain [{min}, {max}]")]
    OutOfDomain {
        quantity: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    /// A field in an input document or argument violated an invariant.
    #[error("invalid value for `{field}`: {reason}")]
    Invalid { field: String, reason: String },

    /// No solution exists inside the searched interval. Carries the
    /// constraint margin (generated minus required) at both endpoints.
    #[error("infeasible over [{lo} m, {hi} m]: margin {margin_lo:e} at lower end, {margin_hi:e} at upper end")]
    Infeasible {
        lo: f64,
        hi: f64,
        margin_lo: f64,
        margin_hi: f64,
    },

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
