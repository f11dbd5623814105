// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Two-qubit dynamical maps.

pub mod amplitude;
pub mod dephasing;
pub mod random_field;
pub mod reservoir;

pub use amplitude::{amplitude_damp_single, independent_envs_evolve, AmplitudeDampingPair};
pub use dephasing::{
    flip_channel_dense, flip_channel_evolve, pauli_flip_dense, telegraph_dephase_dense, telegraph_dephase_evolve,
    Axis,
};
pub use random_field::{field_unitary, random_field_evolve, RandomFieldParams};
pub use reservoir::{common_reservoir_evolve, CommonReservoirParams, ReservoirSeries, BAD_CAVITY_R, GOOD_CAVITY_R};
