// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Exact two-qubit dynamics in non-Markovian and classical noise channels,
//! with the correlation measures used to study them: concurrence,
//! relative-entropy entanglement, discord and classical correlations,
//! the CHSH maximum, and a trace-distance non-Markovianity witness.

pub mod channels;
pub mod error;
pub mod kernels;
pub mod linalg;
pub mod measures;
pub mod ode;
pub mod scenarios;
pub mod states;

pub use error::{Error, Result};
pub use channels::{AmplitudeDampingPair, CommonReservoirParams, RandomFieldParams};
pub use kernels::{CoherenceSeries, KernelSpec, TimeGrid};
pub use measures::CorrelationReport;
pub use states::{BellDiagonalState, BellKind, DensityMatrix, EwlParams, QubitState, XState};
