// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Solver for the memory-kernel equation
//!
//! ```text
//! q'(t) = -∫_0^t f(t - s) q(s) ds,   q(0) = 1
//! ```
//!
//! on a uniform grid. The convolution is discretized by product
//! integration: `q` is interpolated linearly between grid points and each
//! hat function is integrated exactly against the kernel with Gauss-Legendre
//! quadrature. Kernels with an integrable `1/sqrt(tau)` singularity are
//! handled by the substitution `tau = v^2`. Time stepping is the implicit
//! trapezoidal rule, so the scheme is second order for smooth kernels.
//!
//! Optionally the equation is solved in a frame rotating at `omega`
//! (`q = e^{i omega t} p`), which keeps `p` slowly varying when the
//! kernel carries a fast carrier.

use num_complex::Complex64;

use super::{CoherenceSeries, TimeGrid};
use crate::error::{Error, Result};

/// Samples above `1 + UNSTABLE_TOL` for `UNSTABLE_RUN` consecutive points
/// abort the integration.
const UNSTABLE_TOL: f64 = 1e-6;
const UNSTABLE_RUN: usize = 3;

/// 8-point Gauss-Legendre nodes and weights on [-1, 1].
const GL_NODES: [f64; 8] = [
    -0.960_289_856_497_536_3,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL_WEIGHTS: [f64; 8] = [
    0.101_228_536_290_376_26,
    0.222_381_034_453_374_47,
    0.313_706_645_877_887_27,
    0.362_683_783_378_361_96,
    0.362_683_783_378_361_96,
    0.313_706_645_877_887_27,
    0.222_381_034_453_374_47,
    0.101_228_536_290_376_26,
];

/// Known singular factor of a kernel at `tau = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Singularity {
    Regular,
    /// `f(tau) = g(tau) / sqrt(tau)` with `g` smooth.
    InverseSqrt,
}

/// A memory kernel `f(tau) = g(tau) w(tau)` with smooth part `g`.
pub struct MemoryKernel<'a> {
    smooth: Box<dyn Fn(f64) -> Complex64 + Send + Sync + 'a>,
    singularity: Singularity,
}

impl<'a> MemoryKernel<'a> {
    pub fn new(f: impl Fn(f64) -> Complex64 + Send + Sync + 'a) -> Self {
        MemoryKernel {
            smooth: Box::new(f),
            singularity: Singularity::Regular,
        }
    }

    /// Kernel `g(tau) / sqrt(tau)`.
    pub fn inverse_sqrt(g: impl Fn(f64) -> Complex64 + Send + Sync + 'a) -> Self {
        MemoryKernel {
            smooth: Box::new(g),
            singularity: Singularity::InverseSqrt,
        }
    }

    /// Lorentzian reservoir correlation `(gamma lambda / 2) e^{-lambda tau}`.
    pub fn lorentzian(lambda: f64, gamma: f64) -> MemoryKernel<'static> {
        MemoryKernel::new(move |tau| Complex64::new(0.5 * gamma * lambda * (-lambda * tau).exp(), 0.0))
    }

    pub fn zero() -> MemoryKernel<'static> {
        MemoryKernel::new(|_| Complex64::new(0.0, 0.0))
    }

    pub fn singularity(&self) -> Singularity {
        self.singularity
    }

    /// Kernel value; infinite at 0 for singular kernels.
    pub fn eval(&self, tau: f64) -> Complex64 {
        match self.singularity {
            Singularity::Regular => (self.smooth)(tau),
            Singularity::InverseSqrt => (self.smooth)(tau) / tau.sqrt(),
        }
    }

    /// `(∫ f(u) (1-x) du, ∫ f(u) x du)` over `u in [lo, lo + h]`, `x = (u - lo)/h`,
    /// with the kernel demodulated by `e^{-i omega u}`.
    fn hat_integrals(&self, lo: f64, h: f64, omega: f64) -> (Complex64, Complex64) {
        let mut left = Complex64::new(0.0, 0.0);
        let mut right = Complex64::new(0.0, 0.0);
        let demod = |u: f64| Complex64::from_polar(1.0, -omega * u);
        match self.singularity {
            Singularity::Regular => {
                let half = 0.5 * h;
                for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
                    let u = lo + half * (1.0 + x);
                    let fx = (self.smooth)(u) * demod(u) * (w * half);
                    let s = (u - lo) / h;
                    left += fx * (1.0 - s);
                    right += fx * s;
                }
            }
            Singularity::InverseSqrt => {
                // u = v^2, du / sqrt(u) = 2 dv
                let (va, vb) = (lo.sqrt(), (lo + h).sqrt());
                let half = 0.5 * (vb - va);
                for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
                    let v = va + half * (1.0 + x);
                    let u = v * v;
                    let fx = (self.smooth)(u) * demod(u) * (2.0 * w * half);
                    let s = (u - lo) / h;
                    left += fx * (1.0 - s);
                    right += fx * s;
                }
            }
        }
        (left, right)
    }
}

/// Solve on `grid` in the lab frame.
pub fn volterra_q(kernel: &MemoryKernel<'_>, grid: &TimeGrid) -> Result<CoherenceSeries> {
    volterra_q_in_frame(kernel, grid, 0.0)
}

/// Solve on an explicit list of times, which must be uniformly spaced from 0.
pub fn volterra_q_on(kernel: &MemoryKernel<'_>, times: &[f64]) -> Result<CoherenceSeries> {
    let grid = uniform_grid_of(times)?;
    volterra_q(kernel, &grid)
}

fn uniform_grid_of(times: &[f64]) -> Result<TimeGrid> {
    if times.len() < 3 || times[0] != 0.0 {
        return Err(Error::GridMismatch(
            "grid must start at 0 and hold at least 3 points".into(),
        ));
    }
    let steps = times.len() - 1;
    let h = times[steps] / steps as f64;
    for (k, w) in times.windows(2).enumerate() {
        let step = w[1] - w[0];
        if (step - h).abs() > 1e-9 * h.max(1.0) {
            return Err(Error::NonUniformGrid {
                index: k,
                step,
                expected: h,
            });
        }
    }
    TimeGrid::new(times[steps], steps)
}

/// Solve in a frame rotating at `omega`; the returned series is in the lab frame.
pub fn volterra_q_in_frame(
    kernel: &MemoryKernel<'_>,
    grid: &TimeGrid,
    omega: f64,
) -> Result<CoherenceSeries> {
    grid.validate()?;
    let n = grid.steps;
    let h = grid.step();

    // left[m], right[m]: hat integrals over interval m (distances mh..(m+1)h)
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    for m in 0..n {
        let (l, r) = kernel.hat_integrals(m as f64 * h, h, omega);
        left.push(l);
        right.push(r);
    }
    // Interior node weights mid[j] = left[j] + right[j-1], stored reversed
    // (rev[n - j]) and split into re/im so the history sum runs over two
    // forward slices.
    let mut rev_re = vec![0.0; n + 1];
    let mut rev_im = vec![0.0; n + 1];
    for j in 1..n {
        let w = left[j] + right[j - 1];
        rev_re[n - j] = w.re;
        rev_im[n - j] = w.im;
    }

    let i_omega = Complex64::new(0.0, omega);
    let diag = 1.0 + 0.5 * h * (i_omega + left[0]);
    let mut p_re = Vec::with_capacity(n + 1);
    let mut p_im = Vec::with_capacity(n + 1);
    p_re.push(1.0);
    p_im.push(0.0);
    // F_n = -i omega p_n - I_n, with I_0 = 0
    let mut force = -i_omega;
    let mut above = 0usize;
    for step in 0..n {
        // S_{step+1} = right[step] p_0 + sum_{k=1}^{step} mid[step+1-k] p_k
        let off = n - step - 1;
        let conv = complex_dot(
            &rev_re[off + 1..=off + step],
            &rev_im[off + 1..=off + step],
            &p_re[1..=step],
            &p_im[1..=step],
        );
        let history = conv + right[step];
        let current = Complex64::new(p_re[step], p_im[step]);
        let next = (current + 0.5 * h * (force - history)) / diag;
        force = -i_omega * next - (left[0] * next + history);
        p_re.push(next.re);
        p_im.push(next.im);

        let mag = next.norm();
        if !mag.is_finite() {
            return Err(Error::Unstable {
                t: grid.time(step + 1),
                magnitude: mag,
                suggested_step: 0.25 * h,
            });
        }
        if mag > 1.0 + UNSTABLE_TOL {
            above += 1;
            if above >= UNSTABLE_RUN {
                return Err(Error::Unstable {
                    t: grid.time(step + 1),
                    magnitude: mag,
                    suggested_step: 0.25 * h,
                });
            }
        } else {
            above = 0;
        }
    }
    let p = p_re.into_iter().zip(p_im).map(|(re, im)| Complex64::new(re, im));

    let times = grid.times();
    // isolated rounding excursions below the instability threshold are clipped
    let values = p
        .zip(&times)
        .map(|(pk, &t)| {
            let q = if omega == 0.0 {
                pk
            } else {
                pk * Complex64::from_polar(1.0, omega * t)
            };
            let m = q.norm();
            if m > 1.0 {
                q / m
            } else {
                q
            }
        })
        .collect();
    CoherenceSeries::new(times, values)
}

/// `sum_k (a_k * b_k)` for complex sequences given as split re/im slices.
/// Four independent accumulators let the loop vectorize.
fn complex_dot(a_re: &[f64], a_im: &[f64], b_re: &[f64], b_im: &[f64]) -> Complex64 {
    const LANES: usize = 4;
    let mut acc_re = [0.0; LANES];
    let mut acc_im = [0.0; LANES];
    let chunks = a_re.len() / LANES;
    for c in 0..chunks {
        let base = c * LANES;
        for l in 0..LANES {
            let (ar, ai) = (a_re[base + l], a_im[base + l]);
            let (br, bi) = (b_re[base + l], b_im[base + l]);
            acc_re[l] += ar * br - ai * bi;
            acc_im[l] += ar * bi + ai * br;
        }
    }
    let mut re: f64 = acc_re.iter().sum();
    let mut im: f64 = acc_im.iter().sum();
    for k in chunks * LANES..a_re.len() {
        re += a_re[k] * b_re[k] - a_im[k] * b_im[k];
        im += a_re[k] * b_im[k] + a_im[k] * b_re[k];
    }
    Complex64::new(re, im)
}
