// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by state construction, dynamics and measures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("time grid is not uniform (step {step} at index {index}, expected {expected})")]
    NonUniformGrid {
        index: usize,
        step: f64,
        expected: f64,
    },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error(
        "Volterra integration unstable at t = {t}: |q| = {magnitude}; retry with step <= {suggested_step}"
    )]
    Unstable {
        t: f64,
        magnitude: f64,
        suggested_step: f64,
    },

    #[error("no asymptotic plateau: relative drift {drift:.3e} over the last decade of the grid (limit {limit:.1e})")]
    PlateauNotReached { drift: f64, limit: f64 },

    #[error("ODE step rejected at t = {t}: step size {step:.3e} fell below the minimum")]
    StepRejected { t: f64, step: f64 },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for failures of the numerical machinery, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Unstable { .. }
                | Error::PlateauNotReached { .. }
                | Error::StepRejected { .. }
                | Error::Internal(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
