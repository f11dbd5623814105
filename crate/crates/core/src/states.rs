// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Two-qubit state families.
//!
//! All matrices use the ordered basis `{|11>, |10>, |01>, |00>}` (indices
//! 0..=3). Qubit A is the left factor. The Pauli convention is
//! `sigma_3 |1> = +|1>`, so the excited state is the +1 eigenstate.
//!
//! Bell-state names follow the one-excitation/zero-two-excitation split:
//!
//! * `Phi± = (|01> ± |10>)/√2` (one excitation, correlation triple `(±1, ±1, -1)`)
//! * `Psi± = (|00> ± |11>)/√2` (zero or two excitations, `(±1, ∓1, +1)`)
//!
//! This is swapped with respect to the most common textbook naming.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, c, kron, pauli, Matrix2c, Matrix4c, ONE, ZERO};

/// Basis label written into serialized states.
pub const BASIS_LABEL: &str = "11,10,01,00";

pub const HERMITICITY_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;

/// A validated two-qubit density matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix(Matrix4c);

impl DensityMatrix {
    /// Validate `m` against hermiticity, unit trace and positivity.
    pub fn new(m: Matrix4c) -> Result<Self> {
        let rho = DensityMatrix(m);
        rho.validate()?;
        Ok(rho)
    }

    /// Wrap without validation. Callers guarantee the invariants by construction.
    pub(crate) fn from_matrix_unchecked(m: Matrix4c) -> Self {
        DensityMatrix(m)
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix(Matrix4c::identity() * c(0.25))
    }

    /// Projector on a (normalized) pure state given by its four amplitudes.
    pub fn from_pure(amplitudes: [Complex64; 4]) -> Result<Self> {
        let v = nalgebra::Vector4::from(amplitudes);
        let norm = v.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidState(format!(
                "pure state amplitudes have norm {norm}, expected 1"
            )));
        }
        Ok(DensityMatrix(v * v.adjoint()))
    }

    /// Computational basis state `|ab>` with `a, b` in `{0, 1}`.
    pub fn basis_state(a: u8, b: u8) -> Self {
        let idx = 2 * (1 - a as usize) + (1 - b as usize);
        let mut m = Matrix4c::zeros();
        m[(idx, idx)] = ONE;
        DensityMatrix(m)
    }

    pub fn matrix(&self) -> &Matrix4c {
        &self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn populations(&self) -> [f64; 4] {
        [0, 1, 2, 3].map(|i| self.0[(i, i)].re)
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        linalg::eigvalsh4(&self.0)
    }

    pub fn validate(&self) -> Result<()> {
        let m = &self.0;
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("non-finite entry".into()));
        }
        let herm = linalg::max_abs_entry4(&(m - m.adjoint()));
        if herm > HERMITICITY_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian: max |rho - rho^dagger| = {herm:.3e}"
            )));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
        }
        let min_eig = linalg::eigvalsh4(&linalg::hermitian_part4(m))[0];
        if min_eig < -PSD_TOL {
            return Err(Error::InvalidState(format!(
                "not positive semidefinite: minimum eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(())
    }

    /// True when every entry off the diagonal and anti-diagonal is below `tol`.
    pub fn is_x_structured(&self, tol: f64) -> bool {
        (0..4).all(|i| (0..4).all(|j| i == j || i + j == 3 || self.0[(i, j)].norm() <= tol))
    }

    /// The X-state parameters of this matrix, if it is X-structured within `tol`.
    pub fn to_x_state(&self, tol: f64) -> Option<XState> {
        if !self.is_x_structured(tol) {
            return None;
        }
        let [rho11, rho22, rho33, rho44] = self.populations();
        Some(XState {
            rho11,
            rho22,
            rho33,
            rho44,
            rho14: self.0[(0, 3)],
            rho23: self.0[(1, 2)],
        })
    }

    pub fn expectation(&self, op: &Matrix4c) -> Complex64 {
        (self.0 * op).trace()
    }

    /// Reduced state of qubit A (left factor).
    pub fn reduced_a(&self) -> QubitState {
        let m = &self.0;
        QubitState(Matrix2c::from_fn(|i, j| {
            m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)]
        }))
    }

    /// Reduced state of qubit B (right factor).
    pub fn reduced_b(&self) -> QubitState {
        let m = &self.0;
        QubitState(Matrix2c::from_fn(|i, j| m[(i, j)] + m[(i + 2, j + 2)]))
    }

    /// Largest entrywise modulus of the difference.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        linalg::max_abs_entry4(&(self.0 - other.0))
    }

    pub fn to_json(&self) -> StateJson {
        StateJson {
            basis: BASIS_LABEL.to_string(),
            re: std::array::from_fn(|i| std::array::from_fn(|j| self.0[(i, j)].re)),
            im: std::array::from_fn(|i| std::array::from_fn(|j| self.0[(i, j)].im)),
        }
    }
}

/// A validated single-qubit state in the basis `{|1>, |0>}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QubitState(Matrix2c);

impl QubitState {
    pub fn new(m: Matrix2c) -> Result<Self> {
        if (m - m.adjoint()).iter().any(|z| z.norm() > HERMITICITY_TOL) {
            return Err(Error::InvalidState("qubit state not Hermitian".into()));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("qubit trace is {tr}")));
        }
        if linalg::eigvalsh2(&m)[0] < -PSD_TOL {
            return Err(Error::InvalidState("qubit state not PSD".into()));
        }
        Ok(QubitState(m))
    }

    pub(crate) fn from_matrix_unchecked(m: Matrix2c) -> Self {
        QubitState(m)
    }

    pub fn excited() -> Self {
        QubitState(Matrix2c::new(ONE, ZERO, ZERO, ZERO))
    }

    pub fn ground() -> Self {
        QubitState(Matrix2c::new(ZERO, ZERO, ZERO, ONE))
    }

    pub fn matrix(&self) -> &Matrix2c {
        &self.0
    }

    /// Excited-state population `rho_11`.
    pub fn excited_population(&self) -> f64 {
        self.0[(0, 0)].re
    }

    /// Coherence `rho_10 = <1|rho|0>`.
    pub fn coherence(&self) -> Complex64 {
        self.0[(0, 1)]
    }
}

/// Parameters of an X-structured state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct XState {
    pub rho11: f64,
    pub rho22: f64,
    pub rho33: f64,
    pub rho44: f64,
    #[serde(default)]
    pub rho14: Complex64,
    #[serde(default)]
    pub rho23: Complex64,
}

impl XState {
    pub fn validate(&self) -> Result<()> {
        let d = [self.rho11, self.rho22, self.rho33, self.rho44];
        if d.iter().any(|x| !x.is_finite()) || !self.rho14.norm().is_finite() || !self.rho23.norm().is_finite() {
            return Err(Error::InvalidState("X state has non-finite entries".into()));
        }
        if let Some((k, p)) = d.iter().enumerate().find(|(_, &p)| p < -PSD_TOL) {
            return Err(Error::InvalidState(format!(
                "X state population rho{0}{0} = {p} is negative",
                k + 1
            )));
        }
        let sum: f64 = d.iter().sum();
        if (sum - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!(
                "X state populations sum to {sum}, expected 1"
            )));
        }
        if self.rho14.norm_sqr() > self.rho11 * self.rho44 + PSD_TOL {
            return Err(Error::InvalidState(
                "X state violates |rho14|^2 <= rho11 rho44".into(),
            ));
        }
        if self.rho23.norm_sqr() > self.rho22 * self.rho33 + PSD_TOL {
            return Err(Error::InvalidState(
                "X state violates |rho23|^2 <= rho22 rho33".into(),
            ));
        }
        Ok(())
    }
}

pub fn make_x_state(p: &XState) -> Result<DensityMatrix> {
    p.validate()?;
    let mut m = Matrix4c::zeros();
    m[(0, 0)] = c(p.rho11);
    m[(1, 1)] = c(p.rho22);
    m[(2, 2)] = c(p.rho33);
    m[(3, 3)] = c(p.rho44);
    m[(0, 3)] = p.rho14;
    m[(3, 0)] = p.rho14.conj();
    m[(1, 2)] = p.rho23;
    m[(2, 1)] = p.rho23.conj();
    DensityMatrix::new(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BellKind {
    /// `a|01> + b|10>`
    Phi,
    /// `a|00> + b|11>`
    Psi,
}

/// Extended Werner-like state `r |pure><pure| + (1 - r) I/4`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EwlParams {
    /// Purity weight in `[0, 1]`.
    pub r: f64,
    /// Real amplitude in `[0, 1]`; `|b| = sqrt(1 - a^2)`.
    pub a: f64,
    /// Phase of `b`.
    #[serde(default)]
    pub phase_gamma: f64,
    pub kind: BellKind,
}

impl EwlParams {
    pub fn bell_like(a: f64, kind: BellKind) -> Self {
        EwlParams {
            r: 1.0,
            a,
            phase_gamma: 0.0,
            kind,
        }
    }

    pub fn b_abs(&self) -> f64 {
        (1.0 - self.a * self.a).max(0.0).sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.r) {
            return Err(Error::param("r", format!("{} not in [0, 1]", self.r)));
        }
        if !(0.0..=1.0).contains(&self.a) {
            return Err(Error::param("a", format!("{} not in [0, 1]", self.a)));
        }
        if !self.phase_gamma.is_finite() {
            return Err(Error::param("phase_gamma", "not finite"));
        }
        Ok(())
    }

    /// Amplitudes of the Bell-like pure part.
    pub fn pure_amplitudes(&self) -> [Complex64; 4] {
        let a = c(self.a);
        let b = Complex64::from_polar(self.b_abs(), self.phase_gamma);
        match self.kind {
            BellKind::Phi => [ZERO, b, a, ZERO],
            BellKind::Psi => [b, ZERO, ZERO, a],
        }
    }
}

pub fn make_ewl(p: &EwlParams) -> Result<DensityMatrix> {
    p.validate()?;
    let v = nalgebra::Vector4::from(p.pure_amplitudes());
    let m = v * v.adjoint() * c(p.r) + Matrix4c::identity() * c((1.0 - p.r) / 4.0);
    DensityMatrix::new(m)
}

/// Bell-diagonal state `(I + sum_i c_i sigma_i (x) sigma_i) / 4`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct BellDiagonalState {
    c: [f64; 3],
}

impl BellDiagonalState {
    pub const TETRAHEDRON_TOL: f64 = 1e-12;

    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let s = BellDiagonalState { c: [c1, c2, c3] };
        if s.c.iter().any(|x| !x.is_finite() || x.abs() > 1.0 + Self::TETRAHEDRON_TOL) {
            return Err(Error::InvalidState(format!(
                "correlation triple {:?} outside [-1, 1]^3",
                s.c
            )));
        }
        let w = s.bell_weights();
        if let Some(min) = w.iter().copied().reduce(f64::min) {
            if min < -Self::TETRAHEDRON_TOL {
                return Err(Error::InvalidState(format!(
                    "correlation triple {:?} is outside the Bell tetrahedron (weight {min:.3e})",
                    s.c
                )));
            }
        }
        Ok(s)
    }

    /// Clamp tiny rounding excursions produced by channel composition.
    pub(crate) fn from_channel(c: [f64; 3]) -> Self {
        BellDiagonalState {
            c: c.map(|x| x.clamp(-1.0, 1.0)),
        }
    }

    pub fn c(&self) -> [f64; 3] {
        self.c
    }

    /// Mixture weights on `(Phi+, Phi-, Psi+, Psi-)`.
    pub fn bell_weights(&self) -> [f64; 4] {
        let [c1, c2, c3] = self.c;
        [
            0.25 * (1.0 + c1 + c2 - c3),
            0.25 * (1.0 - c1 - c2 - c3),
            0.25 * (1.0 + c1 - c2 + c3),
            0.25 * (1.0 - c1 + c2 + c3),
        ]
    }
}

impl TryFrom<[f64; 3]> for BellDiagonalState {
    type Error = Error;

    fn try_from(c: [f64; 3]) -> Result<Self> {
        BellDiagonalState::new(c[0], c[1], c[2])
    }
}

impl From<BellDiagonalState> for [f64; 3] {
    fn from(s: BellDiagonalState) -> Self {
        s.c
    }
}

pub fn make_bell_diagonal(s: &BellDiagonalState) -> DensityMatrix {
    let mut m = Matrix4c::identity();
    for (k, ck) in s.c.iter().enumerate() {
        let p = pauli(k + 1);
        m += kron(&p, &p) * c(*ck);
    }
    DensityMatrix::from_matrix_unchecked(m * c(0.25))
}

/// Correlation tensor and local Bloch vectors of a two-qubit state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochCorrelations {
    /// `t[(i, j)] = Tr(rho sigma_i (x) sigma_j)`.
    pub t: Matrix3<f64>,
    pub bloch_a: Vector3<f64>,
    pub bloch_b: Vector3<f64>,
}

impl BlochCorrelations {
    pub fn diagonal(&self) -> [f64; 3] {
        [self.t[(0, 0)], self.t[(1, 1)], self.t[(2, 2)]]
    }

    /// True when the state has the Bell-diagonal form within `tol`.
    pub fn is_bell_diagonal(&self, tol: f64) -> bool {
        let off = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .all(|(i, j)| self.t[(i, j)].abs() <= tol);
        off && self.bloch_a.amax() <= tol && self.bloch_b.amax() <= tol
    }

    pub fn to_bell_diagonal(&self, tol: f64) -> Option<BellDiagonalState> {
        if !self.is_bell_diagonal(tol) {
            return None;
        }
        let [c1, c2, c3] = self.diagonal();
        BellDiagonalState::new(c1, c2, c3)
            .ok()
            .or_else(|| Some(BellDiagonalState::from_channel([c1, c2, c3])))
    }
}

pub fn bloch_correlations(rho: &DensityMatrix) -> BlochCorrelations {
    let id = pauli(0);
    let t = Matrix3::from_fn(|i, j| rho.expectation(&kron(&pauli(i + 1), &pauli(j + 1))).re);
    let bloch_a = Vector3::from_fn(|i, _| rho.expectation(&kron(&pauli(i + 1), &id)).re);
    let bloch_b = Vector3::from_fn(|i, _| rho.expectation(&kron(&id, &pauli(i + 1))).re);
    BlochCorrelations { t, bloch_a, bloch_b }
}

/// Serialized form of a density matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub basis: String,
    pub re: [[f64; 4]; 4],
    #[serde(default)]
    pub im: [[f64; 4]; 4],
}

impl StateJson {
    pub fn to_density(&self) -> Result<DensityMatrix> {
        let basis: String = self.basis.chars().filter(|ch| !ch.is_whitespace()).collect();
        if basis != BASIS_LABEL {
            return Err(Error::InvalidState(format!(
                "unsupported basis `{}`, expected `{BASIS_LABEL}`",
                self.basis
            )));
        }
        DensityMatrix::new(Matrix4c::from_fn(|i, j| {
            Complex64::new(self.re[i][j], self.im[i][j])
        }))
    }
}

/// Any of the accepted ways to describe an initial state in a config.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateSpec {
    Matrix(Box<StateJson>),
    Ewl { ewl: EwlParams },
    BellDiagonal { bell_diagonal: BellDiagonalState },
    X { x_state: XState },
}

impl StateSpec {
    pub fn build(&self) -> Result<DensityMatrix> {
        match self {
            StateSpec::Matrix(m) => m.to_density(),
            StateSpec::Ewl { ewl } => make_ewl(ewl),
            StateSpec::BellDiagonal { bell_diagonal } => Ok(make_bell_diagonal(bell_diagonal)),
            StateSpec::X { x_state } => make_x_state(x_state),
        }
    }

    pub fn as_bell_diagonal(&self) -> Option<BellDiagonalState> {
        match self {
            StateSpec::BellDiagonal { bell_diagonal } => Some(*bell_diagonal),
            _ => self
                .build()
                .ok()
                .and_then(|rho| bloch_correlations(&rho).to_bell_diagonal(1e-12)),
        }
    }
}

/// Random sampling of states and local unitaries, for sweeps and tests.
pub mod sample {
    use super::*;
    use rand::Rng;

    /// Box-Muller normal deviate.
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
        let u1: f64 = 1.0 - rng.random::<f64>();
        let u2: f64 = rng.random::<f64>();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    fn gaussian_c<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
        Complex64::new(standard_normal(rng), standard_normal(rng))
    }

    /// Full-rank random state from a Ginibre matrix, `G G^dagger / Tr`.
    pub fn density_matrix<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
        let g = Matrix4c::from_fn(|_, _| gaussian_c(rng));
        let m = g * g.adjoint();
        let tr = m.trace();
        DensityMatrix::from_matrix_unchecked(linalg::hermitian_part4(&(m / tr)))
    }

    /// Random pure state, Haar distributed.
    pub fn pure_state<R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix {
        let v = nalgebra::Vector4::from_fn(|_, _| gaussian_c(rng));
        let v = v / c(v.norm());
        DensityMatrix::from_matrix_unchecked(v * v.adjoint())
    }

    /// Random X state with uniformly drawn populations and admissible coherences.
    pub fn x_state<R: Rng + ?Sized>(rng: &mut R) -> XState {
        let mut w = [0.0; 4].map(|_: f64| -rng.random::<f64>().max(1e-300).ln());
        let s: f64 = w.iter().sum();
        w.iter_mut().for_each(|x| *x /= s);
        let coh = |rng: &mut R, bound: f64| {
            Complex64::from_polar(bound.sqrt() * rng.random::<f64>(), std::f64::consts::TAU * rng.random::<f64>())
        };
        XState {
            rho11: w[0],
            rho22: w[1],
            rho33: w[2],
            rho44: w[3],
            rho14: coh(rng, w[0] * w[3]),
            rho23: coh(rng, w[1] * w[2]),
        }
    }

    /// Uniform sample from the Bell tetrahedron (rejection from the cube).
    pub fn bell_diagonal<R: Rng + ?Sized>(rng: &mut R) -> BellDiagonalState {
        loop {
            let c: [f64; 3] = std::array::from_fn(|_| 2.0 * rng.random::<f64>() - 1.0);
            if let Ok(s) = BellDiagonalState::new(c[0], c[1], c[2]) {
                return s;
            }
        }
    }

    /// Haar-random single-qubit unitary.
    pub fn qubit_unitary<R: Rng + ?Sized>(rng: &mut R) -> Matrix2c {
        let a = gaussian_c(rng);
        let b = gaussian_c(rng);
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (a, b) = (a / n, b / n);
        let phase = Complex64::from_polar(1.0, std::f64::consts::TAU * rng.random::<f64>());
        Matrix2c::new(a, -b.conj() * phase, b, a.conj() * phase)
    }

    /// Apply `U_A (x) U_B` to a state.
    pub fn apply_local(rho: &DensityMatrix, ua: &Matrix2c, ub: &Matrix2c) -> DensityMatrix {
        let u = kron(ua, ub);
        DensityMatrix::from_matrix_unchecked(linalg::hermitian_part4(&(u * rho.matrix() * u.adjoint())))
    }
}
