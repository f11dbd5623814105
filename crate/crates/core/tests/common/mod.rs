// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Independent reference implementations used only by the tests.

#![allow(dead_code)]

use nalgebra::{Matrix3, Vector2, Vector3, Vector4};
use nmcorr::linalg::{eigvalsh4, entropy_bits, kron, pauli, Matrix2c, Matrix4c};
use nmcorr::states::DensityMatrix;
use num_complex::Complex64;
use std::f64::consts::PI;

pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Orthonormal qubit basis whose first vector has Bloch direction `(theta, phi)`.
fn basis(theta: f64, phi: f64) -> [Vector2<Complex64>; 2] {
    let (s, c) = (0.5 * theta).sin_cos();
    let e = Complex64::from_polar(1.0, phi);
    [
        Vector2::new(cx(c, 0.0), e * s),
        Vector2::new(-e.conj() * s, cx(c, 0.0)),
    ]
}

/// `S(Pi(rho)) - S(rho)` for the two-sided dephasing in the given local bases.
fn dephased_gap(rho: &Matrix4c, s_rho: f64, a: [f64; 2], b: [f64; 2]) -> f64 {
    let ua = basis(a[0], a[1]);
    let ub = basis(b[0], b[1]);
    let mut probs = [0.0; 4];
    for i in 0..2 {
        for j in 0..2 {
            let v = Vector4::from_fn(|r, _| ua[i][r / 2] * ub[j][r % 2]);
            probs[2 * i + j] = (v.adjoint() * rho * v)[(0, 0)].re;
        }
    }
    entropy_bits(probs) - s_rho
}

/// Minimize `f` over a box of angles by grid search followed by pattern search.
fn minimize<const N: usize>(f: impl Fn(&[f64; N]) -> f64, ranges: [f64; N], grid: usize) -> f64 {
    let mut best = [0.0; N];
    let mut best_val = f64::INFINITY;
    let total = grid.pow(N as u32);
    for idx in 0..total {
        let mut x = [0.0; N];
        let mut rem = idx;
        for k in 0..N {
            x[k] = ranges[k] * (rem % grid) as f64 / grid as f64;
            rem /= grid;
        }
        let v = f(&x);
        if v < best_val {
            best_val = v;
            best = x;
        }
    }
    let mut step = ranges.map(|r| r / grid as f64);
    while step.iter().any(|&s| s > 1e-7) {
        let mut improved = false;
        for k in 0..N {
            for sign in [-1.0, 1.0] {
                let mut x = best;
                x[k] += sign * step[k];
                let v = f(&x);
                if v < best_val {
                    best_val = v;
                    best = x;
                    improved = true;
                }
            }
        }
        if !improved {
            step = step.map(|s| 0.5 * s);
        }
    }
    best_val
}

/// Relative-entropy discord by direct minimization over both local measurement bases.
pub fn brute_force_discord(rho: &DensityMatrix) -> f64 {
    let s_rho = entropy_bits(eigvalsh4(rho.matrix()));
    let m = *rho.matrix();
    minimize(
        |x: &[f64; 4]| dephased_gap(&m, s_rho, [x[0], x[1]], [x[2], x[3]]),
        [PI, 2.0 * PI, PI, 2.0 * PI],
        10,
    )
}

fn direction(theta: f64, phi: f64) -> Vector3<f64> {
    Vector3::new(theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos())
}

/// CHSH maximum by scanning Bob's two settings; Alice's optimum is analytic
/// for fixed `b, b'`: `|T(b + b')| + |T(b - b')|`.
pub fn brute_force_chsh(rho: &DensityMatrix) -> f64 {
    let t = Matrix3::from_fn(|i, j| rho.expectation(&kron(&pauli(i + 1), &pauli(j + 1))).re);
    let value = |x: &[f64; 4]| {
        let b = direction(x[0], x[1]);
        let bp = direction(x[2], x[3]);
        -((t * (b + bp)).norm() + (t * (b - bp)).norm())
    };
    -minimize(value, [PI, 2.0 * PI, PI, 2.0 * PI], 12)
}

/// Amplitude damping via its Kraus operators in the basis `{|1>, |0>}`.
pub fn kraus_damping(rho: &Matrix4c, qa: Complex64, qb: Complex64) -> Matrix4c {
    let ops = |q: Complex64| {
        let k0 = Matrix2c::new(q, cx(0.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0));
        let k1 = Matrix2c::new(
            cx(0.0, 0.0),
            cx(0.0, 0.0),
            cx((1.0 - q.norm_sqr()).max(0.0).sqrt(), 0.0),
            cx(0.0, 0.0),
        );
        [k0, k1]
    };
    let mut out = Matrix4c::zeros();
    for ka in ops(qa) {
        for kb in ops(qb) {
            let k = kron(&ka, &kb);
            out += k * rho * k.adjoint();
        }
    }
    out
}

/// RK4 integration of `d rho/dt = sum_{A,B} gamma/2 (s rho s - rho)` with `s = sigma_axis`.
pub fn rk4_flip(rho: &Matrix4c, axis: usize, gamma: f64, t: f64, dt: f64) -> Matrix4c {
    let id = pauli(0);
    let sa = kron(&pauli(axis), &id);
    let sb = kron(&id, &pauli(axis));
    let rhs = |r: &Matrix4c| (sa * r * sa + sb * r * sb - r * cx(2.0, 0.0)) * cx(0.5 * gamma, 0.0);
    let steps = (t / dt).round() as usize;
    let h = cx(t / steps.max(1) as f64, 0.0);
    let mut r = *rho;
    for _ in 0..steps {
        let k1 = rhs(&r);
        let half = h * 0.5;
        let k2 = rhs(&(r + k1 * half));
        let k3 = rhs(&(r + k2 * half));
        let k4 = rhs(&(r + k3 * h));
        r += (k1 + (k2 + k3) * cx(2.0, 0.0) + k4) * (h / 6.0);
    }
    r
}

/// Exact solution of the pseudomode system through the matrix exponential.
pub fn reservoir_exact(r1: f64, ratio: f64, c0: [Complex64; 2], t: f64) -> [Complex64; 3] {
    let r2 = (1.0 - r1 * r1).sqrt();
    let mi = cx(0.0, -ratio);
    let a = Matrix3::new(
        cx(0.0, 0.0),
        cx(0.0, 0.0),
        mi * r1,
        cx(0.0, 0.0),
        cx(0.0, 0.0),
        mi * r2,
        mi * r1,
        mi * r2,
        cx(-0.5, 0.0),
    );
    let y = (a * cx(t, 0.0)).exp() * Vector3::new(c0[0], c0[1], cx(0.0, 0.0));
    [y[0], y[1], y[2]]
}

pub fn max_abs(m: &Matrix4c) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Pure single-qubit states whose signed sum is `sigma_k` (k = 0 gives the identity).
fn pauli_as_states(k: usize) -> [(f64, Matrix2c); 2] {
    let proj = |v: Vector2<Complex64>| v * v.adjoint();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match k {
        0 => [(1.0, proj(Vector2::new(cx(1.0, 0.0), cx(0.0, 0.0)))), (1.0, proj(Vector2::new(cx(0.0, 0.0), cx(1.0, 0.0))))],
        1 => [(1.0, proj(Vector2::new(cx(h, 0.0), cx(h, 0.0)))), (-1.0, proj(Vector2::new(cx(h, 0.0), cx(-h, 0.0))))],
        2 => [(1.0, proj(Vector2::new(cx(h, 0.0), cx(0.0, h)))), (-1.0, proj(Vector2::new(cx(h, 0.0), cx(0.0, -h))))],
        _ => [(1.0, proj(Vector2::new(cx(1.0, 0.0), cx(0.0, 0.0)))), (-1.0, proj(Vector2::new(cx(0.0, 0.0), cx(1.0, 0.0))))],
    }
}

/// Choi matrix `sum_ij |i><j| (x) channel(|i><j|)` of a two-qubit map, built
/// by linearity from its action on product states only.
pub fn choi_matrix(channel: impl Fn(&DensityMatrix) -> DensityMatrix) -> nalgebra::DMatrix<Complex64> {
    let mut j = nalgebra::DMatrix::<Complex64>::zeros(16, 16);
    for a in 0..4 {
        for b in 0..4 {
            let p = kron(&pauli(a), &pauli(b));
            let mut image = Matrix4c::zeros();
            for (sa, ra) in pauli_as_states(a) {
                for (sb, rb) in pauli_as_states(b) {
                    let rho = DensityMatrix::new(kron(&ra, &rb)).expect("product state");
                    image += channel(&rho).matrix() * cx(sa * sb, 0.0);
                }
            }
            // sum_ij E_ij (x) E_ij = (1/4) sum_P conj(P) (x) P for two qubits
            for r in 0..16 {
                for col in 0..16 {
                    j[(r, col)] += p[(r / 4, col / 4)].conj() * image[(r % 4, col % 4)] * 0.25;
                }
            }
        }
    }
    j
}

/// Smallest eigenvalue of the Choi matrix and the trace-preservation defect
/// `max |Tr_out J - I|`.
pub fn choi_report(j: &nalgebra::DMatrix<Complex64>) -> (f64, f64) {
    let min_eig = j.clone().symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min);
    let mut defect: f64 = 0.0;
    for r in 0..4 {
        for col in 0..4 {
            let tr: Complex64 = (0..4).map(|k| j[(4 * r + k, 4 * col + k)]).sum();
            let id = if r == col { 1.0 } else { 0.0 };
            defect = defect.max((tr - id).norm());
        }
    }
    (min_eig, defect)
}
