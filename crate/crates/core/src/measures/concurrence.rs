// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Concurrence: Wootters' spin-flip construction, the X-state closed form,
//! and the closed forms for amplitude-damped EWL states.

use num_complex::Complex64;

use crate::linalg::{eigvalsh4, kron, pauli, sqrt_psd4};
use crate::states::{BellKind, DensityMatrix, EwlParams, XState};

/// Eigenvalues of `sqrt(rho) rho~ sqrt(rho)` below this are rounding noise.
/// Their square roots would otherwise leak ~1e-8 into the result.
const SPIN_FLIP_FLOOR: f64 = 1e-14;

/// Concurrence of any two-qubit state. Exactly X-shaped input takes the
/// closed form, which stays accurate when the state is nearly rank
/// deficient and the spin-flip spectrum loses digits under the square root.
pub fn concurrence(rho: &DensityMatrix) -> f64 {
    match rho.to_x_state(0.0) {
        Some(x) => concurrence_x(&x),
        None => concurrence_wootters(rho),
    }
}

/// Wootters' construction: `max(0, l1 - l2 - l3 - l4)` with `l_i` the
/// square roots of the spectrum of `sqrt(rho) rho~ sqrt(rho)`.
pub fn concurrence_wootters(rho: &DensityMatrix) -> f64 {
    let yy = kron(&pauli(2), &pauli(2));
    let m = rho.matrix();
    let flipped = yy * m.conjugate() * yy;
    let s = sqrt_psd4(m);
    let h = s * flipped * s;
    let h = (h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let mut l = eigvalsh4(&h).map(|mu| if mu > SPIN_FLIP_FLOOR { mu.sqrt() } else { 0.0 });
    l.sort_by(|a, b| b.total_cmp(a));
    (l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0)
}

pub fn concurrence_x(p: &XState) -> f64 {
    // product of roots, not root of product: the latter underflows at late times
    let root = |x: f64| x.max(0.0).sqrt();
    let k1 = p.rho23.norm() - root(p.rho11) * root(p.rho44);
    let k2 = p.rho14.norm() - root(p.rho22) * root(p.rho33);
    (2.0 * k1.max(k2)).clamp(0.0, 1.0)
}

/// Concurrence of an EWL state after identical amplitude damping with
/// coherence `q` on both qubits.
pub fn concurrence_ewl_evolved(p: &EwlParams, q: Complex64) -> f64 {
    let (r, a, b) = (p.r, p.a, p.b_abs());
    let q2 = q.norm_sqr();
    let k = match p.kind {
        BellKind::Phi => {
            q2 * (r * a * b - 0.5 * ((1.0 - r) * (1.0 - q2 + q2 * q2 * (1.0 - r) / 4.0)).max(0.0).sqrt())
        }
        BellKind::Psi => {
            q2 * (r * a * b + 0.25 * (q2 * (1.0 + 3.0 * r - 4.0 * r * a * a) + 4.0 * r * a * a - 2.0 * (1.0 + r)))
        }
    };
    (2.0 * k).clamp(0.0, 1.0)
}

/// `2 max{0, (a|b| + 1/4) r - 1/4}`.
pub fn concurrence_ewl(p: &EwlParams) -> f64 {
    (2.0 * ((p.a * p.b_abs() + 0.25) * p.r - 0.25)).clamp(0.0, 1.0)
}
