// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Qubits driven by a classical field of random phase `phi in {0, pi}`.
//!
//! Each qubit sees `H = i g (sigma_+ e^{-i phi} - sigma_- e^{i phi})` with the
//! phase drawn once, independently per qubit, with equal probabilities. The
//! averaged state is a mixture of four local unitary evolutions.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, kron, Matrix2c, Matrix4c};
use crate::states::DensityMatrix;

const PHASES: [f64; 2] = [0.0, std::f64::consts::PI];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomFieldParams {
    pub g: f64,
}

impl RandomFieldParams {
    pub fn validate(&self) -> Result<()> {
        if self.g.is_finite() && self.g > 0.0 {
            Ok(())
        } else {
            Err(Error::param("g", format!("{} must be > 0", self.g)))
        }
    }
}

/// `U_phi(t)` in the basis `{|1>, |0>}`.
pub fn field_unitary(g: f64, phi: f64, t: f64) -> Matrix2c {
    let (s, co) = (g * t).sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    Matrix2c::new(c(co), e.conj() * s, -e * s, c(co))
}

pub fn random_field_evolve(rho: &DensityMatrix, p: &RandomFieldParams, t: f64) -> Result<DensityMatrix> {
    p.validate()?;
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::param("t", format!("{t} must be finite and >= 0")));
    }
    let us = PHASES.map(|phi| field_unitary(p.g, phi, t));
    let m = rho.matrix();
    let mut out = Matrix4c::zeros();
    for ua in &us {
        for ub in &us {
            let u = kron(ua, ub);
            out += u * m * u.adjoint();
        }
    }
    let out = out * c(0.25);
    // averaging many unitaries leaves rounding-level anti-Hermitian residue
    Ok(DensityMatrix::from_matrix_unchecked(crate::linalg::hermitian_part4(&out)))
}
