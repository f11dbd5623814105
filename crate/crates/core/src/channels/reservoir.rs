// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Two qubits sharing one Lorentzian (lossy-cavity) reservoir, single excitation.
//!
//! The reservoir is replaced by its pseudomode, a single damped mode `b`:
//!
//! ```text
//! c1' = -i R r1 b
//! c2' = -i R r2 b
//! b'  = -b/2 - i R (r1 c1 + r2 c2)
//! ```
//!
//! with time in units of `1/lambda_c` (the cavity width) and `R = Omega_T / lambda_c`.
//! The combination `r2 c1 - r1 c2` is decoupled from the cavity and never decays.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, Matrix4c};
use crate::ode::{dopri5, Tolerances};
use crate::states::DensityMatrix;

/// Bad-cavity (weak coupling) preset of `R`.
pub const BAD_CAVITY_R: f64 = 0.1;
/// Good-cavity (strong coupling) preset of `R`.
pub const GOOD_CAVITY_R: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommonReservoirParams {
    /// Relative coupling of qubit 1; `r2 = sqrt(1 - r1^2)`.
    pub r1: f64,
    /// `R = Omega_T / lambda_c`.
    #[serde(alias = "R")]
    pub coupling_ratio: f64,
    #[serde(default)]
    pub c01: Complex64,
    #[serde(default)]
    pub c02: Complex64,
}

impl CommonReservoirParams {
    pub fn r2(&self) -> f64 {
        (1.0 - self.r1 * self.r1).max(0.0).sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.r1) {
            return Err(Error::param("r1", format!("{} not in [0, 1]", self.r1)));
        }
        if !(self.coupling_ratio.is_finite() && self.coupling_ratio > 0.0) {
            return Err(Error::param("coupling_ratio", format!("{} must be > 0", self.coupling_ratio)));
        }
        let n = self.c01.norm_sqr() + self.c02.norm_sqr();
        if !n.is_finite() || n > 1.0 + 1e-12 {
            return Err(Error::param("c01, c02", format!("|c01|^2 + |c02|^2 = {n} exceeds 1")));
        }
        Ok(())
    }

    /// Amplitude of the decoupled state `r2 |10> - r1 |01>`.
    pub fn subradiant_overlap(&self) -> Complex64 {
        self.c01 * self.r2() - self.c02 * self.r1
    }

    /// `t -> inf` concurrence: only the decoupled component survives.
    pub fn stationary_concurrence(&self) -> f64 {
        2.0 * self.r1 * self.r2() * self.subradiant_overlap().norm_sqr()
    }
}

/// Amplitudes `c1(t), c2(t)` and pseudomode amplitude `b(t)` on a time grid.
#[derive(Clone, Debug, PartialEq)]
pub struct ReservoirSeries {
    pub times: Vec<f64>,
    pub c1: Vec<Complex64>,
    pub c2: Vec<Complex64>,
    pub b: Vec<Complex64>,
    /// Ground-state population not accounted for by the initial amplitudes.
    initial_ground: f64,
}

impl ReservoirSeries {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `C = 2 |c1 c2*|` at sample `k`.
    pub fn concurrence(&self, k: usize) -> f64 {
        2.0 * (self.c1[k] * self.c2[k].conj()).norm()
    }

    /// Reduced two-qubit state at sample `k`.
    pub fn state(&self, k: usize) -> Result<DensityMatrix> {
        let (c1, c2) = (self.c1[k], self.c2[k]);
        let mut m = Matrix4c::zeros();
        m[(1, 1)] = c(c1.norm_sqr());
        m[(2, 2)] = c(c2.norm_sqr());
        m[(1, 2)] = c1 * c2.conj();
        m[(2, 1)] = c1.conj() * c2;
        m[(3, 3)] = c(1.0 - c1.norm_sqr() - c2.norm_sqr());
        DensityMatrix::new(m).map_err(|e| Error::Internal(format!("common reservoir state: {e}")))
    }

    /// `|c1|^2 + |c2|^2 + |b|^2 + ground`: the excitation still inside qubits and cavity.
    pub fn retained_excitation(&self, k: usize) -> f64 {
        self.c1[k].norm_sqr() + self.c2[k].norm_sqr() + self.b[k].norm_sqr() + self.initial_ground
    }
}

pub fn common_reservoir_evolve(p: &CommonReservoirParams, times: &[f64]) -> Result<ReservoirSeries> {
    p.validate()?;
    evolve_with_loss(p, 1.0, times)
}

/// Same system with an arbitrary cavity loss rate (1 in the public units).
pub(crate) fn evolve_with_loss(p: &CommonReservoirParams, loss: f64, times: &[f64]) -> Result<ReservoirSeries> {
    if times.first().is_some_and(|&t| t != 0.0) {
        return Err(Error::GridMismatch("common reservoir grid must start at t = 0".into()));
    }
    let (r1, r2, omega) = (p.r1, p.r2(), p.coupling_ratio);
    let mi = Complex64::new(0.0, -1.0);
    let rhs = |_: f64, y: &[Complex64; 3]| {
        [
            mi * omega * r1 * y[2],
            mi * omega * r2 * y[2],
            -0.5 * loss * y[2] + mi * omega * (r1 * y[0] + r2 * y[1]),
        ]
    };
    let y0 = [p.c01, p.c02, Complex64::new(0.0, 0.0)];
    let ys = dopri5(rhs, y0, times, Tolerances::default())?;
    Ok(ReservoirSeries {
        times: times.to_vec(),
        c1: ys.iter().map(|y| y[0]).collect(),
        c2: ys.iter().map(|y| y[1]).collect(),
        b: ys.iter().map(|y| y[2]).collect(),
        initial_ground: 1.0 - p.c01.norm_sqr() - p.c02.norm_sqr(),
    })
}
