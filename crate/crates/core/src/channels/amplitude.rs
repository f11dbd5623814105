// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Independent amplitude damping of two qubits.
//!
//! A single qubit coupled to a zero-temperature reservoir evolves as
//!
//! ```text
//! | rho11 |q|^2              rho10 q |
//! | rho01 q*      rho00 + rho11 (1 - |q|^2) |
//! ```
//!
//! in the basis `{|1>, |0>}`. Two qubits in separate reservoirs evolve under
//! the tensor product of the two single-qubit maps.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{Matrix2c, Matrix4c};
use crate::states::{DensityMatrix, QubitState};

/// Values of `|q|` up to this far above 1 are treated as rounding and rescaled.
pub const Q_ROUNDING_TOL: f64 = 1e-9;

/// Coherence amplitudes of the two local reservoirs at one instant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmplitudeDampingPair {
    pub qa: Complex64,
    pub qb: Complex64,
}

impl AmplitudeDampingPair {
    pub fn new(qa: Complex64, qb: Complex64) -> Result<Self> {
        Ok(AmplitudeDampingPair {
            qa: checked_q("qa", qa)?,
            qb: checked_q("qb", qb)?,
        })
    }

    /// Both qubits in identical reservoirs.
    pub fn identical(q: Complex64) -> Result<Self> {
        Self::new(q, q)
    }
}

fn checked_q(name: &'static str, q: Complex64) -> Result<Complex64> {
    let m = q.norm();
    if !m.is_finite() || m > 1.0 + Q_ROUNDING_TOL {
        return Err(Error::param(name, format!("|q| = {m} exceeds 1")));
    }
    Ok(if m > 1.0 { q / m } else { q })
}

type Entry = (usize, usize);

/// Nonzero entries `((i, j), (k, l), w)` of the single-qubit transfer map:
/// `out[i][j] += w * in[k][l]`.
fn transfer(q: Complex64) -> [(Entry, Entry, Complex64); 5] {
    let q2 = q.norm_sqr();
    [
        ((0, 0), (0, 0), Complex64::new(q2, 0.0)),
        ((0, 1), (0, 1), q),
        ((1, 0), (1, 0), q.conj()),
        ((1, 1), (1, 1), Complex64::new(1.0, 0.0)),
        ((1, 1), (0, 0), Complex64::new(1.0 - q2, 0.0)),
    ]
}

pub fn amplitude_damp_single(rho: &QubitState, q: Complex64) -> Result<QubitState> {
    let q = checked_q("q", q)?;
    let m = rho.matrix();
    let mut out = Matrix2c::zeros();
    for ((i, j), (k, l), w) in transfer(q) {
        out[(i, j)] += w * m[(k, l)];
    }
    Ok(QubitState::from_matrix_unchecked(out))
}

/// Apply the product map `A (x) B` to a two-qubit state.
pub fn independent_envs_evolve(rho: &DensityMatrix, pair: &AmplitudeDampingPair) -> Result<DensityMatrix> {
    let m = damp_matrix(rho.matrix(), pair);
    DensityMatrix::new(m).map_err(|e| Error::Internal(format!("amplitude damping broke the state: {e}")))
}

pub(crate) fn damp_matrix(m: &Matrix4c, pair: &AmplitudeDampingPair) -> Matrix4c {
    let ta = transfer(pair.qa);
    let tb = transfer(pair.qb);
    let mut out = Matrix4c::zeros();
    for &((ia, ja), (ka, la), wa) in &ta {
        for &((ib, jb), (kb, lb), wb) in &tb {
            out[(2 * ia + ib, 2 * ja + jb)] += wa * wb * m[(2 * ka + kb, 2 * la + lb)];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{make_ewl, make_x_state, BellKind, EwlParams, XState};

    fn cq(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_qubit_examples() {
        let ex = QubitState::excited();
        let same = amplitude_damp_single(&ex, cq(1.0, 0.0)).unwrap();
        assert_eq!(same, ex);
        let decayed = amplitude_damp_single(&ex, cq(0.0, 0.0)).unwrap();
        assert_eq!(decayed, QubitState::ground());
        let q = Complex64::from_polar(0.3f64.sqrt(), 0.4);
        let partial = amplitude_damp_single(&ex, q).unwrap();
        assert!((partial.excited_population() - 0.3).abs() < 1e-15);
        assert!(amplitude_damp_single(&ex, cq(1.1, 0.0)).is_err());
    }

    #[test]
    fn identity_at_unit_q() {
        let rho = make_ewl(&EwlParams::bell_like(0.6, BellKind::Psi)).unwrap();
        let out = independent_envs_evolve(&rho, &AmplitudeDampingPair::identical(cq(1.0, 0.0)).unwrap()).unwrap();
        assert!(out.max_abs_diff(&rho) < 1e-15);
    }

    #[test]
    fn identical_reservoirs_match_closed_form_entries() {
        let x = XState {
            rho11: 0.3,
            rho22: 0.2,
            rho33: 0.1,
            rho44: 0.4,
            rho14: cq(0.2, 0.1),
            rho23: cq(0.05, -0.1),
        };
        let rho = make_x_state(&x).unwrap();
        let q = Complex64::from_polar(0.7, 0.3);
        let out = independent_envs_evolve(&rho, &AmplitudeDampingPair::identical(q).unwrap()).unwrap();
        let p = q.norm_sqr();
        let e = |i: usize, j: usize| out.entry(i, j);
        assert!((e(0, 0).re - x.rho11 * p * p).abs() < 1e-15);
        assert!((e(1, 1).re - (x.rho22 * p + x.rho11 * p * (1.0 - p))).abs() < 1e-15);
        assert!((e(2, 2).re - (x.rho33 * p + x.rho11 * p * (1.0 - p))).abs() < 1e-15);
        let r44 = 1.0 - p * (2.0 - p) * x.rho11 - p * (x.rho22 + x.rho33);
        assert!((e(3, 3).re - r44).abs() < 1e-15);
        assert!((e(0, 3) - x.rho14 * q * q).norm() < 1e-15);
        assert!((e(1, 2) - x.rho23 * p).norm() < 1e-15);
        for (i, j) in [(0, 1), (0, 2), (1, 3), (2, 3), (1, 0), (3, 2)] {
            assert!(e(i, j).norm() < 1e-14);
        }
    }
}
