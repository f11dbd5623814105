// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Single-qubit coherence amplitudes `q(t)` for each environment.
//!
//! Closed forms are used where they exist (Lorentzian reservoir, flat
//! Markovian spectrum, random telegraph dephasing). The photonic band edge
//! goes through the Volterra solver in [`volterra`].

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod band_edge;
pub mod volterra;

pub use band_edge::{
    band_edge_kernel, bandedge_plateau, bandedge_plateau_default, bandedge_q, plateau_estimate, plateau_of,
    BandEdgePlateau,
};
pub use volterra::{volterra_q, volterra_q_in_frame, MemoryKernel, Singularity};

/// Below this `|d|` (or `|mu|`) the critically damped limit is used.
const CRITICAL_EPS: f64 = 1e-9;

fn one() -> f64 {
    1.0
}

/// Environment description. Rates share the unit of the scenario time axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kernel", rename_all = "snake_case", deny_unknown_fields)]
pub enum KernelSpec {
    /// Lorentzian spectral density of width `lambda` and Markovian rate `gamma`.
    Lorentzian {
        #[serde(alias = "lambda_over_gamma")]
        lambda: f64,
        #[serde(default = "one")]
        gamma: f64,
    },
    /// Flat spectrum: `q(t) = exp(-gamma t / 2)`.
    MarkovFlat {
        #[serde(default = "one")]
        gamma: f64,
    },
    /// Isotropic photonic band edge with detuning `delta = w0 - wc` and coupling `beta`.
    BandEdge {
        #[serde(alias = "delta_over_beta")]
        delta: f64,
        #[serde(default = "one")]
        beta: f64,
    },
    /// Random telegraph dephasing of amplitude `a` and flip rate `nu`.
    Telegraph { a: f64, nu: f64 },
}

impl KernelSpec {
    pub fn validate(&self) -> Result<()> {
        let nonneg = |name, x: f64| {
            if x.is_finite() && x >= 0.0 {
                Ok(())
            } else {
                Err(Error::param(name, format!("{x} must be finite and >= 0")))
            }
        };
        let pos = |name, x: f64| {
            if x.is_finite() && x > 0.0 {
                Ok(())
            } else {
                Err(Error::param(name, format!("{x} must be finite and > 0")))
            }
        };
        match *self {
            KernelSpec::Lorentzian { lambda, gamma } => {
                pos("lambda", lambda)?;
                pos("gamma", gamma)
            }
            KernelSpec::MarkovFlat { gamma } => nonneg("gamma", gamma),
            KernelSpec::BandEdge { delta, beta } => {
                if !delta.is_finite() {
                    return Err(Error::param("delta", "not finite"));
                }
                pos("beta", beta)
            }
            KernelSpec::Telegraph { a, nu } => {
                nonneg("a", a)?;
                nonneg("nu", nu)
            }
        }
    }

    /// Name of the dimensionless time axis for this environment.
    pub fn time_unit(&self) -> &'static str {
        match self {
            KernelSpec::Lorentzian { .. } | KernelSpec::MarkovFlat { .. } => "Gamma*t",
            KernelSpec::BandEdge { .. } => "beta*t",
            KernelSpec::Telegraph { .. } => "t",
        }
    }

    /// Closed-form `q(t)`, when one exists.
    pub fn closed_form(&self, t: f64) -> Option<Complex64> {
        match *self {
            KernelSpec::Lorentzian { lambda, gamma } => Some(lorentzian_q(lambda, gamma, t)),
            KernelSpec::MarkovFlat { gamma } => Some(Complex64::new((-0.5 * gamma * t).exp(), 0.0)),
            KernelSpec::Telegraph { a, nu } => Some(Complex64::new(telegraph_q(a, nu, t), 0.0)),
            KernelSpec::BandEdge { .. } => None,
        }
    }

    /// `q` sampled on a uniform grid.
    pub fn series(&self, grid: &TimeGrid) -> Result<CoherenceSeries> {
        self.validate()?;
        match *self {
            KernelSpec::BandEdge { delta, beta } => bandedge_q(delta, beta, grid),
            _ => {
                let times = grid.times();
                let values = times
                    .iter()
                    .map(|&t| self.closed_form(t).expect("closed form"))
                    .collect();
                CoherenceSeries::new(times, values)
            }
        }
    }
}

/// Uniform time grid `t_k = k * t_max / steps`, `k = 0..=steps`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub t_max: f64,
    pub steps: usize,
}

impl TimeGrid {
    pub fn new(t_max: f64, steps: usize) -> Result<Self> {
        let g = TimeGrid { t_max, steps };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::param("steps", format!("{} < 2", self.steps)));
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(Error::param("t_max", format!("{} must be > 0", self.t_max)));
        }
        Ok(())
    }

    /// Grid with step at most `h`.
    pub fn with_max_step(t_max: f64, h: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::param("h", format!("{h} must be > 0")));
        }
        TimeGrid::new(t_max, ((t_max / h).ceil() as usize).max(2))
    }

    pub fn step(&self) -> f64 {
        self.t_max / self.steps as f64
    }

    pub fn len(&self) -> usize {
        self.steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn time(&self, k: usize) -> f64 {
        self.t_max * k as f64 / self.steps as f64
    }

    pub fn times(&self) -> Vec<f64> {
        (0..=self.steps).map(|k| self.time(k)).collect()
    }
}

/// Samples of `q(t)` on a time grid.
#[derive(Clone, Debug, PartialEq)]
pub struct CoherenceSeries {
    times: Vec<f64>,
    values: Vec<Complex64>,
}

impl CoherenceSeries {
    pub const Q0_TOL: f64 = 1e-12;
    pub const CONTRACTION_TOL: f64 = 1e-9;

    pub fn new(times: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::GridMismatch(format!(
                "{} times but {} values",
                times.len(),
                values.len()
            )));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::GridMismatch("times must increase strictly".into()));
        }
        if let (Some(&t0), Some(q0)) = (times.first(), values.first()) {
            if t0 == 0.0 && (q0 - 1.0).norm() > Self::Q0_TOL {
                return Err(Error::Internal(format!("q(0) = {q0}, expected 1")));
            }
        }
        if let Some((k, q)) = values
            .iter()
            .enumerate()
            .find(|(_, q)| q.norm().is_nan() || q.norm() > 1.0 + Self::CONTRACTION_TOL)
        {
            return Err(Error::Internal(format!(
                "|q| = {} exceeds 1 at t = {}",
                q.norm(),
                times[k]
            )));
        }
        Ok(CoherenceSeries { times, values })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn abs_q2(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().map(|q| q.norm_sqr())
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.times.iter().copied().zip(self.values.iter().copied())
    }
}

/// Exact coherence for a Lorentzian spectral density,
/// `q(t) = e^{-lambda t/2} [cos(d t/2) + (lambda/d) sin(d t/2)]` with
/// `d = sqrt(2 gamma lambda - lambda^2)`.
///
/// For `lambda > 2 gamma` the frequency is imaginary and the hyperbolic
/// continuation is used; at `lambda = 2 gamma` the critical limit
/// `e^{-lambda t/2} (1 + lambda t/2)` applies. The result is real.
pub fn lorentzian_q(lambda: f64, gamma: f64, t: f64) -> Complex64 {
    Complex64::new(damped_cosine(lambda / 2.0, 2.0 * gamma * lambda - lambda * lambda, t), 0.0)
}

/// Random-telegraph dephasing factor
/// `q(t) = e^{-nu t} [cos(mu t) + (nu/mu) sin(mu t)]`, `mu = sqrt(4 a^2 - nu^2)`.
///
/// It is the ensemble average of `exp(-2 i a ∫ eta dt)` for a symmetric
/// telegraph process `eta = ±1` that flips at rate `nu`, and solves
/// `q'' + 2 nu q' + 4 a^2 q = 0` with `q(0) = 1`, `q'(0) = 0`.
pub fn telegraph_q(a: f64, nu: f64, t: f64) -> f64 {
    damped_cosine(nu, 4.0 * (4.0 * a * a - nu * nu), t)
}

/// `e^{-k t} [cos(w t) + (k/w) sin(w t)]` with `w = sqrt(w2) / 2`, continued
/// analytically to `w2 <= 0`.
fn damped_cosine(k: f64, w2: f64, t: f64) -> f64 {
    let env = (-k * t).exp();
    let w = w2.abs().sqrt() / 2.0;
    if w < CRITICAL_EPS {
        env * (1.0 + k * t)
    } else if w2 > 0.0 {
        env * ((w * t).cos() + (k / w) * (w * t).sin())
    } else {
        // e^{-k t} cosh(w t) overflows for long times; fold the exponentials.
        let fast = (-(k - w) * t).exp();
        let slow = (-(k + w) * t).exp();
        0.5 * (fast + slow) + (k / w) * 0.5 * (fast - slow)
    }
}

/// Monte-Carlo estimate of the telegraph dephasing factor at time `t`.
///
/// Returns the sample mean of `cos(2 a ∫_0^t eta)` over `trajectories`
/// realizations and its standard error.
pub fn telegraph_monte_carlo<R: Rng + ?Sized>(
    a: f64,
    nu: f64,
    t: f64,
    trajectories: usize,
    rng: &mut R,
) -> (f64, f64) {
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..trajectories {
        let mut eta = if rng.random::<bool>() { 1.0 } else { -1.0 };
        let mut clock = 0.0;
        let mut area = 0.0;
        loop {
            let wait = if nu > 0.0 {
                -(1.0 - rng.random::<f64>()).ln() / nu
            } else {
                f64::INFINITY
            };
            if clock + wait >= t {
                area += eta * (t - clock);
                break;
            }
            area += eta * wait;
            clock += wait;
            eta = -eta;
        }
        let x = (2.0 * a * area).cos();
        sum += x;
        sum_sq += x * x;
    }
    let n = trajectories as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0) * n / (n - 1.0).max(1.0);
    (mean, (var / n).sqrt())
}
