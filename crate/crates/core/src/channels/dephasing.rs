// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Local Pauli flip channels, driven by white or random telegraph noise.
//!
//! Each qubit undergoes `rho -> p rho + (1 - p) sigma_j rho sigma_j`. Bloch
//! components orthogonal to axis `j` shrink by `f = 2p - 1`; with identical
//! channels on both qubits a Bell-diagonal state keeps its form and
//! `c_k -> f^2 c_k` for `k != j`.

use crate::error::{Error, Result};
use crate::kernels::telegraph_q;
use crate::linalg::{c, kron, pauli, Matrix4c};
use crate::states::{BellDiagonalState, DensityMatrix};

/// Pauli axis of a flip channel: 1 bit flip, 2 bit-phase flip, 3 phase flip.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Axis(u8);

impl Axis {
    pub const BIT: Axis = Axis(1);
    pub const BIT_PHASE: Axis = Axis(2);
    pub const PHASE: Axis = Axis(3);

    pub fn new(j: u8) -> Result<Self> {
        if (1..=3).contains(&j) {
            Ok(Axis(j))
        } else {
            Err(Error::param("axis", format!("{j} not in {{1, 2, 3}}")))
        }
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl TryFrom<u8> for Axis {
    type Error = Error;
    fn try_from(j: u8) -> Result<Self> {
        Axis::new(j)
    }
}

impl From<Axis> for u8 {
    fn from(a: Axis) -> u8 {
        a.0
    }
}

/// Shrink the components orthogonal to `axis` by `factor^2`.
fn scale_transverse(c0: &BellDiagonalState, axis: Axis, factor: f64) -> BellDiagonalState {
    let mut cs = c0.c();
    let f2 = factor * factor;
    for (k, ck) in cs.iter_mut().enumerate() {
        if k + 1 != axis.index() {
            *ck *= f2;
        }
    }
    BellDiagonalState::from_channel(cs)
}

/// White-noise flip channel: dissipator `gamma (sigma_j rho sigma_j - rho) / 2` on each qubit.
pub fn flip_channel_evolve(c0: &BellDiagonalState, axis: Axis, gamma: f64, t: f64) -> Result<BellDiagonalState> {
    check_rate("gamma", gamma)?;
    check_rate("t", t)?;
    Ok(scale_transverse(c0, axis, (-gamma * t).exp()))
}

/// Telegraph-noise dephasing along axis 3 on both qubits.
pub fn telegraph_dephase_evolve(c0: &BellDiagonalState, a: f64, nu: f64, t: f64) -> Result<BellDiagonalState> {
    check_rate("a", a)?;
    check_rate("nu", nu)?;
    check_rate("t", t)?;
    Ok(scale_transverse(c0, Axis::PHASE, telegraph_q(a, nu, t)))
}

/// Identical local flip channels with transverse shrink factor `factor` in `[-1, 1]`.
pub fn pauli_flip_dense(rho: &DensityMatrix, axis: Axis, factor: f64) -> Result<DensityMatrix> {
    if !(factor.is_finite() && factor.abs() <= 1.0) {
        return Err(Error::param("factor", format!("{factor} not in [-1, 1]")));
    }
    let p = 0.5 * (1.0 + factor);
    let id = pauli(0);
    let s = pauli(axis.index());
    let terms = [
        (kron(&id, &id), p * p),
        (kron(&s, &id), (1.0 - p) * p),
        (kron(&id, &s), p * (1.0 - p)),
        (kron(&s, &s), (1.0 - p) * (1.0 - p)),
    ];
    let m = rho.matrix();
    let mut out = Matrix4c::zeros();
    for (k, w) in terms {
        if w != 0.0 {
            out += k * m * k.adjoint() * c(w);
        }
    }
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

/// [`flip_channel_evolve`] on an arbitrary state.
pub fn flip_channel_dense(rho: &DensityMatrix, axis: Axis, gamma: f64, t: f64) -> Result<DensityMatrix> {
    check_rate("gamma", gamma)?;
    check_rate("t", t)?;
    pauli_flip_dense(rho, axis, (-gamma * t).exp())
}

/// [`telegraph_dephase_evolve`] on an arbitrary state.
pub fn telegraph_dephase_dense(rho: &DensityMatrix, a: f64, nu: f64, t: f64) -> Result<DensityMatrix> {
    check_rate("a", a)?;
    check_rate("nu", nu)?;
    check_rate("t", t)?;
    pauli_flip_dense(rho, Axis::PHASE, telegraph_q(a, nu, t))
}

fn check_rate(name: &'static str, x: f64) -> Result<()> {
    if x.is_finite() && x >= 0.0 {
        Ok(())
    } else {
        Err(Error::param(name, format!("{x} must be finite and >= 0")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{bloch_correlations, make_bell_diagonal};

    #[test]
    fn phase_flip_example() {
        let c0 = BellDiagonalState::new(1.0, -0.6, 0.6).unwrap();
        let g = 0.7;
        for t in [0.0, 0.2, 1.5] {
            let ct = flip_channel_evolve(&c0, Axis::PHASE, g, t).unwrap().c();
            let e = (-2.0 * g * t).exp();
            assert!((ct[0] - e).abs() < 1e-15);
            assert!((ct[1] + 0.6 * e).abs() < 1e-15);
            assert_eq!(ct[2], 0.6);
        }
        assert!(flip_channel_evolve(&c0, Axis::PHASE, -1.0, 1.0).is_err());
    }

    #[test]
    fn dense_matches_triple_on_bell_diagonal() {
        let c0 = BellDiagonalState::new(0.3, -0.5, 0.4).unwrap();
        let rho = make_bell_diagonal(&c0);
        for j in 1..=3 {
            let ax = Axis::new(j).unwrap();
            let dense = flip_channel_dense(&rho, ax, 0.4, 1.3).unwrap();
            let triple = flip_channel_evolve(&c0, ax, 0.4, 1.3).unwrap();
            let got = bloch_correlations(&dense).to_bell_diagonal(1e-12).unwrap();
            for (x, y) in got.c().iter().zip(triple.c()) {
                assert!((x - y).abs() < 1e-14);
            }
        }
        let dense = telegraph_dephase_dense(&rho, 1.0, 0.3, 2.0).unwrap();
        let triple = telegraph_dephase_evolve(&c0, 1.0, 0.3, 2.0).unwrap();
        let got = bloch_correlations(&dense).diagonal();
        for (x, y) in got.iter().zip(triple.c()) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn axis_bounds() {
        assert!(Axis::new(0).is_err());
        assert!(Axis::new(4).is_err());
        assert_eq!(serde_json::from_str::<Axis>("2").unwrap(), Axis::BIT_PHASE);
        assert!(serde_json::from_str::<Axis>("7").is_err());
    }
}
