// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Trace distance and the information back-flow witness of non-Markovianity.

use num_complex::Complex64;

use crate::channels::amplitude_damp_single;
use crate::error::{Error, Result};
use crate::kernels::CoherenceSeries;
use crate::linalg::{eigvalsh2, eigvalsh4};
use crate::states::{DensityMatrix, QubitState};

/// `1/2 ||rho1 - rho2||_1`.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    0.5 * eigvalsh4(&(a.matrix() - b.matrix())).iter().map(|x| x.abs()).sum::<f64>()
}

pub fn trace_distance_qubit(a: &QubitState, b: &QubitState) -> f64 {
    0.5 * eigvalsh2(&(a.matrix() - b.matrix())).iter().map(|x| x.abs()).sum::<f64>()
}

/// Sum of the increases of `D(rho1(t), rho2(t))` between successive grid
/// points. `channel(t, rho)` evolves a single-qubit state to time `t`.
pub fn nonmarkov_witness<F>(channel: F, times: &[f64], pair: (&QubitState, &QubitState)) -> Result<f64>
where
    F: Fn(f64, &QubitState) -> Result<QubitState>,
{
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::GridMismatch("witness grid must be strictly increasing".into()));
    }
    let mut total = 0.0;
    let mut prev: Option<f64> = None;
    for &t in times {
        let d = trace_distance_qubit(&channel(t, pair.0)?, &channel(t, pair.1)?);
        if let Some(p) = prev {
            total += (d - p).max(0.0);
        }
        prev = Some(d);
    }
    Ok(total)
}

/// Witness for the amplitude-damping family described by `series`.
pub fn amplitude_damping_witness(series: &CoherenceSeries, pair: (&QubitState, &QubitState)) -> Result<f64> {
    let lookup: Vec<(f64, Complex64)> = series.iter().collect();
    let times: Vec<f64> = lookup.iter().map(|p| p.0).collect();
    let q_at = |t: f64| -> Result<Complex64> {
        let k = times
            .binary_search_by(|x| x.total_cmp(&t))
            .map_err(|_| Error::GridMismatch(format!("time {t} not on the coherence grid")))?;
        Ok(lookup[k].1)
    };
    nonmarkov_witness(|t, rho| amplitude_damp_single(rho, q_at(t)?), &times, pair)
}
