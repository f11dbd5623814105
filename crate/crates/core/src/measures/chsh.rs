// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Maximal CHSH value over all measurement settings.

use nalgebra::SymmetricEigen;

use crate::states::{bloch_correlations, DensityMatrix};

/// Largest Bell operator expectation `2 sqrt(u1 + u2)`, with `u1 >= u2` the
/// two largest eigenvalues of `T^T T`.
pub fn chsh_max(rho: &DensityMatrix) -> f64 {
    let t = bloch_correlations(rho).t;
    let mut u: Vec<f64> = SymmetricEigen::new(t.transpose() * t).eigenvalues.iter().copied().collect();
    u.sort_by(|a, b| b.total_cmp(a));
    (2.0 * (u[0] + u[1]).max(0.0).sqrt()).min(2.0 * std::f64::consts::SQRT_2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{make_bell_diagonal, BellDiagonalState};
    use std::f64::consts::SQRT_2;

    #[test]
    fn reference_values() {
        let bell = make_bell_diagonal(&BellDiagonalState::new(1.0, 1.0, -1.0).unwrap());
        assert!((chsh_max(&bell) - 2.0 * SQRT_2).abs() < 1e-12);
        assert!((chsh_max(&DensityMatrix::basis_state(0, 0)) - 2.0).abs() < 1e-12);
        assert_eq!(chsh_max(&DensityMatrix::maximally_mixed()), 0.0);
    }

    #[test]
    fn bell_diagonal_uses_two_largest_correlations() {
        let c = BellDiagonalState::new(0.3, -0.7, 0.5).unwrap();
        let expect = 2.0 * (0.49f64 + 0.25).sqrt();
        assert!((chsh_max(&make_bell_diagonal(&c)) - expect).abs() < 1e-12);
    }
}
