// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Small dense helpers shared by the state, channel and measure modules.
//!
//! Everything works on fixed-size `nalgebra` matrices. Single-qubit
//! operators are written in the basis `{|1>, |0>}` so that two-qubit
//! Kronecker products land directly in the basis `{|11>, |10>, |01>, |00>}`.

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;

pub type Matrix2c = Matrix2<Complex64>;
pub type Matrix4c = Matrix4<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Pauli matrix `sigma_k` (k = 0 is the identity), with `sigma_3 |1> = +|1>`.
pub fn pauli(k: usize) -> Matrix2c {
    match k {
        0 => Matrix2c::new(ONE, ZERO, ZERO, ONE),
        1 => Matrix2c::new(ZERO, ONE, ONE, ZERO),
        2 => Matrix2c::new(ZERO, -I, I, ZERO),
        3 => Matrix2c::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("pauli index {k} out of range"),
    }
}

pub fn kron(a: &Matrix2c, b: &Matrix2c) -> Matrix4c {
    Matrix4c::from_fn(|r, col| a[(r / 2, col / 2)] * b[(r % 2, col % 2)])
}

/// Eigen-decomposition of a Hermitian 4x4 matrix; eigenvalues ascending.
pub fn eigh4(m: &Matrix4c) -> (Vector4<f64>, Matrix4c) {
    let eig = m.symmetric_eigen();
    let mut order = [0usize, 1, 2, 3];
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = Vector4::from_fn(|i, _| eig.eigenvalues[order[i]]);
    let vectors = Matrix4c::from_fn(|r, col| eig.eigenvectors[(r, order[col])]);
    (values, vectors)
}

pub fn eigvalsh4(m: &Matrix4c) -> [f64; 4] {
    let mut v: [f64; 4] = m.symmetric_eigenvalues().into();
    v.sort_by(f64::total_cmp);
    v
}

pub fn eigvalsh2(m: &Matrix2c) -> [f64; 2] {
    let mut v: [f64; 2] = m.symmetric_eigenvalues().into();
    v.sort_by(f64::total_cmp);
    v
}

/// Square root of a positive semidefinite Hermitian matrix. Small negative
/// eigenvalues from rounding are clipped to zero.
pub fn sqrt_psd4(m: &Matrix4c) -> Matrix4c {
    let (vals, vecs) = eigh4(m);
    let d = Matrix4c::from_diagonal(&vals.map(|x| c(x.max(0.0).sqrt())));
    vecs * d * vecs.adjoint()
}

/// Shannon entropy in bits; `0 log 0 = 0` and rounding negatives count as 0.
pub fn entropy_bits<I: IntoIterator<Item = f64>>(probs: I) -> f64 {
    probs
        .into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum::<f64>()
        .max(0.0)
}

pub fn binary_entropy(p: f64) -> f64 {
    entropy_bits([p, 1.0 - p])
}

pub fn hermitian_part4(m: &Matrix4c) -> Matrix4c {
    (m + m.adjoint()) * c(0.5)
}

pub fn max_abs_entry4(m: &Matrix4c) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}
