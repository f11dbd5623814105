// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Adaptive Dormand-Prince 5(4) integrator for small complex linear systems.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type State<const N: usize> = [Complex64; N];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { abs: 1e-10, rel: 1e-10 }
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// fifth-order weights are the last row of A; these are 5th minus 4th order
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const MAX_STEPS: usize = 10_000_000;

/// Integrate `y' = f(t, y)` from `times[0]` and return `y` at every entry of
/// `times` (which must be non-decreasing).
pub fn dopri5<const N: usize, F>(f: F, y0: State<N>, times: &[f64], tol: Tolerances) -> Result<Vec<State<N>>>
where
    F: Fn(f64, &State<N>) -> State<N>,
{
    if times.is_empty() {
        return Ok(Vec::new());
    }
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::GridMismatch("output times must be non-decreasing".into()));
    }
    let mut out = Vec::with_capacity(times.len());
    out.push(y0);
    let mut t = times[0];
    let mut y = y0;
    let mut h = initial_step(&f, t, &y, tol);
    let mut k1 = f(t, &y);
    let mut steps = 0usize;

    for &target in &times[1..] {
        while t < target {
            steps += 1;
            if steps > MAX_STEPS {
                return Err(Error::StepRejected { t, step: h });
            }
            let last = h >= target - t;
            let hs = if last { target - t } else { h };
            let (y_new, k7, err) = stage(&f, t, &y, &k1, hs, tol);
            if !err.is_finite() {
                return Err(Error::StepRejected { t, step: hs });
            }
            if err <= 1.0 {
                t = if last { target } else { t + hs };
                y = y_new;
                k1 = k7;
            }
            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            h = if err > 1.0 {
                hs * factor
            } else if last {
                // a clipped final step says nothing about the usable size
                h.max(hs * factor)
            } else {
                hs * factor.max(1.0)
            };
            if h < 1e-14 * t.abs().max(1.0) {
                return Err(Error::StepRejected { t, step: h });
            }
        }
        out.push(y);
    }
    Ok(out)
}

fn stage<const N: usize, F>(
    f: &F,
    t: f64,
    y: &State<N>,
    k1: &State<N>,
    h: f64,
    tol: Tolerances,
) -> (State<N>, State<N>, f64)
where
    F: Fn(f64, &State<N>) -> State<N>,
{
    let mut k = [[Complex64::new(0.0, 0.0); N]; 7];
    k[0] = *k1;
    for s in 1..7 {
        let mut ys = *y;
        for (j, kj) in k.iter().enumerate().take(s) {
            if A[s][j] != 0.0 {
                for i in 0..N {
                    ys[i] += h * A[s][j] * kj[i];
                }
            }
        }
        k[s] = f(t + C[s] * h, &ys);
    }
    // the sixth-stage input is the fifth-order solution
    let mut y_new = *y;
    for (j, kj) in k.iter().enumerate().take(6) {
        for i in 0..N {
            y_new[i] += h * A[6][j] * kj[i];
        }
    }
    let mut sum = 0.0;
    for i in 0..N {
        let mut e = Complex64::new(0.0, 0.0);
        for (s, ks) in k.iter().enumerate() {
            e += h * E[s] * ks[i];
        }
        let scale = tol.abs + tol.rel * y[i].norm().max(y_new[i].norm());
        sum += (e.norm() / scale).powi(2);
    }
    (y_new, k[6], (sum / N as f64).sqrt())
}

fn initial_step<const N: usize, F>(f: &F, t: f64, y: &State<N>, tol: Tolerances) -> f64
where
    F: Fn(f64, &State<N>) -> State<N>,
{
    let dy = f(t, y);
    let norm = |v: &State<N>| {
        (v.iter()
            .zip(y)
            .map(|(a, b)| (a.norm() / (tol.abs + tol.rel * b.norm())).powi(2))
            .sum::<f64>()
            / N as f64)
            .sqrt()
    };
    let (d0, d1) = (norm(y), norm(&dy));
    let h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    h.clamp(1e-8, 1.0)
}
