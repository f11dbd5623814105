// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Atom at the edge of an isotropic photonic band gap.
//!
//! Near the edge the dispersion is `w_k = w_c + D (k - k0)^2`, which gives the
//! memory kernel
//!
//! ```text
//! f(tau) = beta^{3/2} exp(i (delta tau - pi/4)) / sqrt(pi tau),   delta = w0 - wc
//! ```
//!
//! in the frame rotating at the atomic frequency. `delta < 0` puts the
//! transition inside the gap. The coherence then settles to a constant
//! modulus (population trapping), which is what [`bandedge_plateau`] extracts.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, PI};

use super::volterra::{volterra_q_in_frame, MemoryKernel};
use super::{CoherenceSeries, TimeGrid};
use crate::error::{Error, Result};

/// Maximum relative drift of `|q|^2` across the last decade of the grid.
pub const PLATEAU_DRIFT_LIMIT: f64 = 1e-3;

/// Plateaus below this are compared in absolute terms. Far outside the gap
/// the trapped fraction is tiny and the decaying branch-cut tail dominates
/// the relative drift long after `|q|^2` has stopped changing visibly.
pub const PLATEAU_FLOOR: f64 = 1e-3;

/// Default horizon (in units of `1/beta`) and step for plateau extraction.
pub const PLATEAU_T_MAX: f64 = 400.0;
pub const PLATEAU_STEP: f64 = 0.01;

pub fn band_edge_kernel(delta: f64, beta: f64) -> MemoryKernel<'static> {
    let scale = beta.powf(1.5) / PI.sqrt();
    MemoryKernel::inverse_sqrt(move |tau| Complex64::from_polar(scale, delta * tau - FRAC_PI_4))
}

/// `q(t)` for the band-edge reservoir, sampled on `grid`.
pub fn bandedge_q(delta: f64, beta: f64, grid: &TimeGrid) -> Result<CoherenceSeries> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::param("beta", format!("{beta} must be > 0")));
    }
    if !delta.is_finite() {
        return Err(Error::param("delta", "not finite"));
    }
    // Outside the gap the bound state sits just above the edge, so rotate
    // with it; inside the gap the lab frame is already slow.
    let frame = delta.max(0.0);
    volterra_q_in_frame(&band_edge_kernel(delta, beta), grid, frame)
}

/// Long-time value of `|q|^2` and the drift that certifies it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BandEdgePlateau {
    pub abs_q2: f64,
    pub drift: f64,
}

/// Average `|q|^2` over the last tenth of `series`; the drift compares the
/// two halves of that window, relative to `max(|q|^2, PLATEAU_FLOOR)`.
pub fn plateau_of(series: &CoherenceSeries) -> Result<BandEdgePlateau> {
    let p = plateau_estimate(series);
    if p.drift > PLATEAU_DRIFT_LIMIT {
        return Err(Error::PlateauNotReached {
            drift: p.drift,
            limit: PLATEAU_DRIFT_LIMIT,
        });
    }
    Ok(p)
}

/// [`plateau_of`] without the drift check.
pub fn plateau_estimate(series: &CoherenceSeries) -> BandEdgePlateau {
    let n = series.len();
    let start = n - (n / 10).max(2);
    let tail: Vec<f64> = series.abs_q2().skip(start).collect();
    let half = tail.len() / 2;
    let mean = |xs: &[f64]| xs.iter().sum::<f64>() / xs.len() as f64;
    let (first, second) = (mean(&tail[..half]), mean(&tail[half..]));
    let abs_q2 = mean(&tail);
    let drift = (second - first).abs() / abs_q2.max(PLATEAU_FLOOR);
    BandEdgePlateau { abs_q2, drift }
}

pub fn bandedge_plateau(delta: f64, beta: f64, grid: &TimeGrid) -> Result<BandEdgePlateau> {
    plateau_of(&bandedge_q(delta, beta, grid)?)
}

/// Plateau on the default grid, `beta t` in `[0, PLATEAU_T_MAX]`.
pub fn bandedge_plateau_default(delta: f64, beta: f64) -> Result<BandEdgePlateau> {
    let grid = TimeGrid::with_max_step(PLATEAU_T_MAX / beta, PLATEAU_STEP / beta)?;
    bandedge_plateau(delta, beta, &grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Bound-state residue: w^2 (w - d) = 1 in units of beta, |q(inf)|^2 = (2 / (2 + w^3))^2.
    fn residue(d: f64) -> f64 {
        let (mut lo, mut hi) = (d.max(0.0), d.max(0.0) + 2.0);
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if m * m * (m - d) < 1.0 {
                lo = m
            } else {
                hi = m
            }
        }
        let z = 2.0 / (2.0 + lo.powi(3));
        z * z
    }

    #[test]
    fn residue_reference_points() {
        assert!((residue(-2.0) - 0.8).abs() < 1e-12);
        assert!((residue(0.0) - 4.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn plateau_inside_gap_matches_residue() {
        let grid = TimeGrid::with_max_step(150.0, 0.01).unwrap();
        for d in [-5.0, 0.0] {
            let p = bandedge_plateau(d, 1.0, &grid).unwrap();
            assert!((p.abs_q2 - residue(d)).abs() < 2e-3, "{d}: {p:?}");
        }
    }

    #[test]
    fn plateau_ordering_and_bounds() {
        let grid = TimeGrid::with_max_step(150.0, 0.02).unwrap();
        let deep = bandedge_q(-10.0, 1.0, &grid).unwrap();
        let far = bandedge_q(10.0, 1.0, &grid).unwrap();
        let inside = deep.abs_q2().last().unwrap();
        let outside = far.abs_q2().last().unwrap();
        assert!(inside > 0.9 && inside < 1.0);
        assert!(outside < 0.2);
    }

    #[test]
    fn beta_scales_time() {
        let g1 = TimeGrid::new(20.0, 2000).unwrap();
        let g2 = TimeGrid::new(10.0, 2000).unwrap();
        let a = bandedge_q(-1.0, 1.0, &g1).unwrap();
        let b = bandedge_q(-2.0, 2.0, &g2).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x - y).norm() < 1e-9);
        }
    }

    #[test]
    fn short_grid_reports_missing_plateau() {
        let grid = TimeGrid::new(5.0, 500).unwrap();
        match bandedge_plateau(2.0, 1.0, &grid) {
            Err(Error::PlateauNotReached { drift, limit }) => assert!(drift > limit),
            other => panic!("{other:?}"),
        }
    }
}
