// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Correlation quantifiers.

use serde::{Deserialize, Serialize};

use crate::states::{bloch_correlations, DensityMatrix};

pub mod bell_diagonal;
pub mod chsh;
pub mod concurrence;
pub mod witness;

pub use bell_diagonal::{
    bell_diagonal_entropies, closest_classical, discord_and_classical, dominant_axis, mutual_information,
    rel_entropy_entanglement_bd,
};
pub use chsh::chsh_max;
pub use concurrence::{concurrence, concurrence_ewl, concurrence_ewl_evolved, concurrence_wootters, concurrence_x};
pub use witness::{amplitude_damping_witness, nonmarkov_witness, trace_distance, trace_distance_qubit};

/// Tolerance for treating a state as Bell-diagonal.
pub const BELL_DIAGONAL_TOL: f64 = 1e-10;

/// All measures of one state. The entropic quantities are only defined here
/// for Bell-diagonal states and are `None` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub concurrence: f64,
    pub discord: Option<f64>,
    pub classical: Option<f64>,
    pub rel_entropy_entanglement: Option<f64>,
    pub chsh_max: f64,
}

impl CorrelationReport {
    pub fn of(rho: &DensityMatrix) -> Self {
        let bd = bloch_correlations(rho).to_bell_diagonal(BELL_DIAGONAL_TOL);
        let dc = bd.map(|c| discord_and_classical(&c));
        CorrelationReport {
            concurrence: concurrence(rho),
            discord: dc.map(|x| x.0),
            classical: dc.map(|x| x.1),
            rel_entropy_entanglement: bd.map(|c| rel_entropy_entanglement_bd(&c)),
            chsh_max: chsh_max(rho),
        }
    }

    pub const CSV_HEADER: &'static str = "concurrence,discord,classical,rel_entropy_entanglement,chsh_max";

    /// One CSV line; undefined entries are left empty.
    pub fn csv_row(&self) -> String {
        let opt = |x: Option<f64>| x.map(|v| format!("{v:e}")).unwrap_or_default();
        format!(
            "{:e},{},{},{},{:e}",
            self.concurrence,
            opt(self.discord),
            opt(self.classical),
            opt(self.rel_entropy_entanglement),
            self.chsh_max
        )
    }
}
