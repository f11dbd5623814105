// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Entropic measures of Bell-diagonal states (logarithms base 2).
//!
//! The eigenvalues of a Bell-diagonal state are its four Bell weights. The
//! closest classical state keeps the correlation of largest modulus and
//! drops the other two; ties go to the lowest index.

use crate::linalg::{binary_entropy, entropy_bits};
use crate::states::BellDiagonalState;

/// Von Neumann entropy and the (descending) eigenvalues.
pub fn bell_diagonal_entropies(c: &BellDiagonalState) -> (f64, [f64; 4]) {
    let mut w = c.bell_weights().map(|x| x.max(0.0));
    w.sort_by(|a, b| b.total_cmp(a));
    (entropy_bits(w), w)
}

/// Index of the dominant correlation `argmax |c_i|`, ties to the lowest index.
pub fn dominant_axis(c: &BellDiagonalState) -> usize {
    let cs = c.c();
    let mut best = 0;
    for k in 1..3 {
        if cs[k].abs() > cs[best].abs() {
            best = k;
        }
    }
    best
}

/// Closest classical state: only the dominant correlation survives.
pub fn closest_classical(c: &BellDiagonalState) -> BellDiagonalState {
    let k = dominant_axis(c);
    let mut kept = [0.0; 3];
    kept[k] = c.c()[k];
    BellDiagonalState::from_channel(kept)
}

/// Discord `S(chi) - S(rho)` and classical correlations `2 - S(chi)`.
pub fn discord_and_classical(c: &BellDiagonalState) -> (f64, f64) {
    let (s_rho, _) = bell_diagonal_entropies(c);
    let (s_chi, _) = bell_diagonal_entropies(&closest_classical(c));
    ((s_chi - s_rho).max(0.0), (2.0 - s_chi).max(0.0))
}

/// Quantum mutual information `2 - S(rho)`.
pub fn mutual_information(c: &BellDiagonalState) -> f64 {
    2.0 - bell_diagonal_entropies(c).0
}

/// Relative entropy of entanglement: `1 - h(lambda_max)` when the largest
/// Bell weight exceeds one half, 0 otherwise.
pub fn rel_entropy_entanglement_bd(c: &BellDiagonalState) -> f64 {
    let (_, w) = bell_diagonal_entropies(c);
    if w[0] > 0.5 {
        (1.0 - binary_entropy(w[0])).max(0.0)
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigvalsh4;
    use crate::states::{make_bell_diagonal, sample};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bd(c1: f64, c2: f64, c3: f64) -> BellDiagonalState {
        BellDiagonalState::new(c1, c2, c3).unwrap()
    }

    fn h2(p: f64) -> f64 {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }

    #[test]
    fn entropies() {
        assert!((bell_diagonal_entropies(&bd(0.0, 0.0, 0.0)).0 - 2.0).abs() < 1e-15);
        assert!(bell_diagonal_entropies(&bd(1.0, 1.0, -1.0)).0.abs() < 1e-15);
        let (s, w) = bell_diagonal_entropies(&bd(0.8, 0.8, -1.0));
        assert!((s - h2(0.9)).abs() < 1e-12);
        assert!((s - 0.4690).abs() < 1e-4);
        assert!((w[0] - 0.9).abs() < 1e-15);
    }

    #[test]
    fn weights_are_the_matrix_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let c = sample::bell_diagonal(&mut rng);
            let (_, mut w) = bell_diagonal_entropies(&c);
            w.reverse();
            let e = eigvalsh4(make_bell_diagonal(&c).matrix());
            for (x, y) in w.iter().zip(e) {
                assert!((x - y).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn discord_examples() {
        assert_eq!(discord_and_classical(&bd(0.0, 0.0, 0.0)), (0.0, 0.0));
        let (d, cc) = discord_and_classical(&bd(1.0, 1.0, -1.0));
        assert!((d - 1.0).abs() < 1e-15 && (cc - 1.0).abs() < 1e-15);
        let (d, cc) = discord_and_classical(&bd(0.8, 0.8, -1.0));
        assert!((d - (1.0 - h2(0.9))).abs() < 1e-12);
        assert!((cc - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ree_examples() {
        assert_eq!(rel_entropy_entanglement_bd(&bd(0.0, 0.0, 0.0)), 0.0);
        assert!((rel_entropy_entanglement_bd(&bd(1.0, 1.0, -1.0)) - 1.0).abs() < 1e-15);
        assert!((rel_entropy_entanglement_bd(&bd(0.8, 0.8, -1.0)) - 0.5310).abs() < 1e-4);
    }

    #[test]
    fn tie_breaking_does_not_change_values() {
        let a = bd(0.5, -0.5, 0.2);
        assert_eq!(dominant_axis(&a), 0);
        let b = bd(-0.5, 0.5, 0.2);
        assert_eq!(discord_and_classical(&a), discord_and_classical(&b));
    }
}
