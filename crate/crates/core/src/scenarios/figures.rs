// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Named pipelines reproducing each figure and headline number.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use super::table::Table;
use crate::channels::{
    common_reservoir_evolve, flip_channel_evolve, independent_envs_evolve, random_field_evolve,
    telegraph_dephase_evolve, AmplitudeDampingPair, Axis, CommonReservoirParams, RandomFieldParams, BAD_CAVITY_R,
};
use crate::error::{Error, Result};
use crate::kernels::band_edge::{plateau_estimate, PLATEAU_DRIFT_LIMIT, PLATEAU_STEP, PLATEAU_T_MAX};
use crate::kernels::{bandedge_q, KernelSpec, TimeGrid};
use crate::measures::{
    bell_diagonal::dominant_axis, concurrence, discord_and_classical, rel_entropy_entanglement_bd,
};
use crate::states::{bloch_correlations, make_bell_diagonal, make_ewl, BellDiagonalState, BellKind, EwlParams};

fn grid(t_max: f64, steps: usize) -> TimeGrid {
    TimeGrid { t_max, steps }
}

/// Bell-like |Phi> and |Psi> concurrence under independent Lorentzian reservoirs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig2Config {
    /// Values of `lambda / Gamma`.
    pub lambdas: Vec<f64>,
    pub a2: f64,
    pub r: f64,
    /// Also emit the exponential (flat-spectrum) limit.
    pub markov_limit: bool,
    pub grid: TimeGrid,
}

impl Default for Fig2Config {
    fn default() -> Self {
        Fig2Config {
            lambdas: vec![0.01, 3.0],
            a2: 1.0 / 3.0,
            r: 1.0,
            markov_limit: true,
            grid: grid(600.0, 6000),
        }
    }
}

/// Time from which `values` stay exactly zero to the end of the series.
pub fn death_time(times: &[f64], values: &[f64]) -> Option<f64> {
    match values.iter().rposition(|&v| v > 0.0) {
        None => times.first().copied(),
        Some(k) if k + 1 < values.len() => Some(times[k + 1]),
        Some(_) => None,
    }
}

/// Maximal runs of exact zeros that span a positive time, as `(start, end)`.
pub fn zero_intervals(times: &[f64], values: &[f64]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (k, &v) in values.iter().enumerate() {
        match (v <= 0.0, start) {
            (true, None) => start = Some(k),
            (false, Some(s)) => {
                if k - 1 > s {
                    out.push((times[s], times[k - 1]));
                }
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        if values.len() - 1 > s {
            out.push((times[s], times[values.len() - 1]));
        }
    }
    out
}

/// Zero intervals followed later by a value above `threshold`.
pub fn revivals(times: &[f64], values: &[f64], threshold: f64) -> Vec<(f64, f64)> {
    zero_intervals(times, values)
        .into_iter()
        .filter(|&(_, end)| times.iter().zip(values).any(|(&t, &v)| t > end && v > threshold))
        .collect()
}

pub fn run_fig2(cfg: &Fig2Config) -> Result<Table> {
    cfg.grid.validate()?;
    if !(0.0..=1.0).contains(&cfg.a2) {
        return Err(Error::param("a2", format!("{} not in [0, 1]", cfg.a2)));
    }
    let a = cfg.a2.sqrt();
    let phi = make_ewl(&EwlParams { r: cfg.r, a, phase_gamma: 0.0, kind: BellKind::Phi })?;
    let psi = make_ewl(&EwlParams { r: cfg.r, a, phase_gamma: 0.0, kind: BellKind::Psi })?;

    let mut curves: Vec<(String, KernelSpec)> = cfg
        .lambdas
        .iter()
        .map(|&lambda| (format!("l{lambda}"), KernelSpec::Lorentzian { lambda, gamma: 1.0 }))
        .collect();
    if cfg.markov_limit {
        curves.push(("markov".into(), KernelSpec::MarkovFlat { gamma: 1.0 }));
    }

    let times = cfg.grid.times();
    let columns: Vec<Vec<f64>> = curves
        .par_iter()
        .map(|(_, kernel)| -> Result<Vec<Vec<f64>>> {
            let q = kernel.series(&cfg.grid)?;
            let mut c_phi = Vec::with_capacity(q.len());
            let mut c_psi = Vec::with_capacity(q.len());
            for &qk in q.values() {
                let pair = AmplitudeDampingPair::identical(qk)?;
                c_phi.push(concurrence(&independent_envs_evolve(&phi, &pair)?));
                c_psi.push(concurrence(&independent_envs_evolve(&psi, &pair)?));
            }
            Ok(vec![c_phi, c_psi])
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let mut names = vec!["t".to_string()];
    for (label, _) in &curves {
        names.push(format!("C_phi_{label}"));
        names.push(format!("C_psi_{label}"));
    }
    let mut table = Table::new(names.clone());
    table.set_meta("time_unit", "Gamma*t");
    for (name, col) in names[1..].iter().zip(&columns) {
        let d = death_time(&times, col).map_or("none".to_string(), |t| format!("{t}"));
        table.set_meta(format!("death_time {name}"), d);
    }
    for (k, &t) in times.iter().enumerate() {
        let mut row = vec![t];
        row.extend(columns.iter().map(|c| c[k]));
        table.push(row)?;
    }
    Ok(table)
}

/// Band-edge trapping: asymptotic concurrences against `delta / beta`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig3Config {
    pub deltas: Vec<f64>,
    pub beta: f64,
    /// Horizon in units of `1/beta`.
    pub t_max: f64,
    pub step: f64,
}

impl Default for Fig3Config {
    fn default() -> Self {
        Fig3Config {
            deltas: (-10..=10).map(f64::from).collect(),
            beta: 1.0,
            t_max: PLATEAU_T_MAX,
            step: PLATEAU_STEP,
        }
    }
}

/// Rows `delta, abs_q2, C_phi, C_psi, drift, plateau_ok`. Points whose drift
/// exceeds the limit are kept with `plateau_ok = 0`.
pub fn run_fig3(cfg: &Fig3Config) -> Result<Table> {
    let g = TimeGrid::with_max_step(cfg.t_max, cfg.step)?;
    let rows: Vec<Vec<f64>> = cfg
        .deltas
        .par_iter()
        .map(|&delta| -> Result<Vec<f64>> {
            let p = plateau_estimate(&bandedge_q(delta, cfg.beta, &g)?);
            let c_phi = p.abs_q2;
            let ok = if p.drift <= PLATEAU_DRIFT_LIMIT { 1.0 } else { 0.0 };
            Ok(vec![delta, p.abs_q2, c_phi, c_phi * c_phi, p.drift, ok])
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new(["delta", "abs_q2", "C_phi", "C_psi", "drift", "plateau_ok"]);
    table.set_meta("time_unit", "beta*t");
    table.set_meta("horizon", format!("{}", g.t_max));
    for row in rows {
        table.push(row)?;
    }
    Ok(table)
}

/// Number of points in a fig3 table whose plateau was not certified.
pub fn failed_plateaus(table: &Table) -> usize {
    table.column("plateau_ok").map_or(0, |c| c.iter().filter(|&&x| x != 1.0).count())
}

/// Random external field acting on a Bell-diagonal state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig4Config {
    pub g: f64,
    pub initial: BellDiagonalState,
    pub grid: TimeGrid,
}

impl Default for Fig4Config {
    fn default() -> Self {
        Fig4Config {
            g: 1.0,
            initial: BellDiagonalState::new(0.8, 0.8, -1.0).expect("valid default"),
            grid: grid(TAU, 2000),
        }
    }
}

/// Rows `t, E, D` with `E` the relative entropy of entanglement.
pub fn run_fig4(cfg: &Fig4Config) -> Result<Table> {
    cfg.grid.validate()?;
    let p = RandomFieldParams { g: cfg.g };
    p.validate()?;
    let rho0 = make_bell_diagonal(&cfg.initial);
    let mut table = Table::new(["t", "E", "D"]);
    table.set_meta("time_unit", "g*t");
    // the grid is in units of g t
    for gt in cfg.grid.times() {
        let rho = random_field_evolve(&rho0, &p, gt / cfg.g)?;
        let c = bloch_correlations(&rho)
            .to_bell_diagonal(1e-10)
            .ok_or_else(|| Error::Internal("random field left the Bell-diagonal family".into()))?;
        table.push(vec![gt, rel_entropy_entanglement_bd(&c), discord_and_classical(&c).0])?;
    }
    Ok(table)
}

/// Dephasing noise acting identically on both qubits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Noise {
    White { axis: Axis, gamma: f64 },
    Colored { a: f64, nu: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FrozenConfig {
    pub noise: Noise,
    pub c0: BellDiagonalState,
    pub grid: Option<TimeGrid>,
}

impl Default for FrozenConfig {
    fn default() -> Self {
        FrozenConfig {
            noise: Noise::White { axis: Axis::PHASE, gamma: 1.0 },
            c0: BellDiagonalState::new(1.0, -0.6, 0.6).expect("valid default"),
            grid: None,
        }
    }
}

impl FrozenConfig {
    pub fn colored() -> Self {
        FrozenConfig {
            noise: Noise::Colored { a: 1.0, nu: 0.1 },
            ..Default::default()
        }
    }

    pub fn effective_grid(&self) -> TimeGrid {
        self.grid.unwrap_or(match self.noise {
            Noise::White { .. } => grid(2.0, 2000),
            Noise::Colored { .. } => grid(10.0, 10_000),
        })
    }

    /// Whether the damped correlations satisfy `c_l = -c_j c_k`, the
    /// condition for discord to freeze under a flip channel along `j`.
    pub fn freezing_condition(&self) -> bool {
        let j = match self.noise {
            Noise::White { axis, .. } => axis.index() - 1,
            Noise::Colored { .. } => 2,
        };
        let c = self.c0.c();
        let others: Vec<usize> = (0..3).filter(|&k| k != j).collect();
        let (k, l) = (others[0], others[1]);
        (c[l] + c[j] * c[k]).abs() < 1e-12 || (c[k] + c[j] * c[l]).abs() < 1e-12
    }
}

/// Grid times at which the dominant correlation changes.
pub fn transition_times(times: &[f64], dominant: &[f64]) -> Vec<f64> {
    dominant
        .windows(2)
        .zip(&times[1..])
        .filter(|(w, _)| w[0] != w[1])
        .map(|(_, &t)| t)
        .collect()
}

/// Rows `t, c1, c2, c3, D, CC, dominant` (dominant axis 1..=3).
pub fn run_frozen_discord(cfg: &FrozenConfig) -> Result<Table> {
    let g = cfg.effective_grid();
    g.validate()?;
    let mut table = Table::new(["t", "c1", "c2", "c3", "D", "CC", "dominant"]);
    let unit = match cfg.noise {
        Noise::White { axis, gamma } => {
            table.set_meta("noise", format!("white flip, axis {}, gamma {gamma}", axis.index()));
            "gamma*t"
        }
        Noise::Colored { a, nu } => {
            table.set_meta("noise", format!("telegraph, a {a}, nu {nu}"));
            "t"
        }
    };
    table.set_meta("time_unit", unit);
    table.set_meta("freezing_condition", format!("{}", cfg.freezing_condition()));
    for t in g.times() {
        let c = match cfg.noise {
            Noise::White { axis, gamma } => flip_channel_evolve(&cfg.c0, axis, gamma, t)?,
            Noise::Colored { a, nu } => telegraph_dephase_evolve(&cfg.c0, a, nu, t)?,
        };
        let (d, cc) = discord_and_classical(&c);
        let [c1, c2, c3] = c.c();
        table.push(vec![t, c1, c2, c3, d, cc, (dominant_axis(&c) + 1) as f64])?;
    }
    let times = table.column("t").unwrap_or_default();
    let dom = table.column("dominant").unwrap_or_default();
    let tr: Vec<String> = transition_times(&times, &dom).iter().map(|t| format!("{t}")).collect();
    table.set_meta("transitions", if tr.is_empty() { "none".into() } else { tr.join(";") });
    Ok(table)
}

/// Two qubits in one lossy cavity, plus the stationary-concurrence sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CommonConfig {
    #[serde(alias = "R")]
    pub coupling_ratio: f64,
    pub r1: f64,
    pub c01: Complex64,
    pub c02: Complex64,
    /// Time in units of the inverse cavity width.
    pub grid: TimeGrid,
    pub stationary: StationaryConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StationaryConfig {
    /// `r1` sampled at `k / r1_steps` for `k = 0..=r1_steps`.
    pub r1_steps: usize,
    /// Integration horizon taken as `t -> inf`.
    pub t_stationary: f64,
}

impl Default for StationaryConfig {
    fn default() -> Self {
        StationaryConfig {
            r1_steps: 100,
            t_stationary: 3000.0,
        }
    }
}

impl Default for CommonConfig {
    fn default() -> Self {
        CommonConfig {
            coupling_ratio: BAD_CAVITY_R,
            r1: 0.5,
            c01: Complex64::new(1.0, 0.0),
            c02: Complex64::new(0.0, 0.0),
            grid: grid(300.0, 6000),
            stationary: StationaryConfig::default(),
        }
    }
}

impl CommonConfig {
    pub fn params(&self) -> CommonReservoirParams {
        self.params_at(self.r1)
    }

    fn params_at(&self, r1: f64) -> CommonReservoirParams {
        CommonReservoirParams {
            r1,
            coupling_ratio: self.coupling_ratio,
            c01: self.c01,
            c02: self.c02,
        }
    }
}

/// Rows `t, C, abs_c1_2, abs_c2_2, abs_b_2`.
pub fn run_common_reservoir(cfg: &CommonConfig) -> Result<Table> {
    cfg.grid.validate()?;
    let s = common_reservoir_evolve(&cfg.params(), &cfg.grid.times())?;
    let mut table = Table::new(["t", "C", "abs_c1_2", "abs_c2_2", "abs_b_2"]);
    table.set_meta("time_unit", "lambda_c*t");
    table.set_meta("stationary_concurrence", format!("{}", cfg.params().stationary_concurrence()));
    for k in 0..s.len() {
        table.push(vec![
            s.times[k],
            s.concurrence(k),
            s.c1[k].norm_sqr(),
            s.c2[k].norm_sqr(),
            s.b[k].norm_sqr(),
        ])?;
    }
    Ok(table)
}

/// Rows `r1, C_s, C_s_analytic`: concurrence at the end of a long
/// integration against the projection onto the decoupled state.
pub fn stationary_sweep(cfg: &CommonConfig) -> Result<Table> {
    let st = &cfg.stationary;
    if st.r1_steps == 0 {
        return Err(Error::param("r1_steps", "must be >= 1"));
    }
    if !(st.t_stationary.is_finite() && st.t_stationary > 0.0) {
        return Err(Error::param("t_stationary", "must be > 0"));
    }
    let rows: Vec<Vec<f64>> = (0..=st.r1_steps)
        .into_par_iter()
        .map(|k| -> Result<Vec<f64>> {
            let r1 = k as f64 / st.r1_steps as f64;
            let p = cfg.params_at(r1);
            let s = common_reservoir_evolve(&p, &[0.0, st.t_stationary])?;
            Ok(vec![r1, s.concurrence(1), p.stationary_concurrence()])
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new(["r1", "C_s", "C_s_analytic"]);
    let best = rows.iter().max_by(|a, b| a[1].total_cmp(&b[1])).cloned().unwrap_or_default();
    table.set_meta("horizon", format!("{}", st.t_stationary));
    if let [r1, c, _] = best[..] {
        table.set_meta("max_C_s", format!("{c}"));
        table.set_meta("argmax_r1", format!("{r1}"));
    }
    for row in rows {
        table.push(row)?;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_helpers() {
        let t: Vec<f64> = (0..8).map(f64::from).collect();
        let v = [1.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0];
        assert_eq!(zero_intervals(&t, &v), vec![(1.0, 2.0), (4.0, 7.0)]);
        assert_eq!(revivals(&t, &v, 1e-4), vec![(1.0, 2.0)]);
        assert_eq!(death_time(&t, &v), Some(4.0));
        assert_eq!(death_time(&t, &[1.0; 8]), None);
        assert_eq!(transition_times(&t, &[1.0, 1.0, 3.0, 3.0, 1.0, 1.0, 1.0, 1.0]), vec![2.0, 4.0]);
    }

    #[test]
    fn fig4_columns_and_zero_discord() {
        let t = run_fig4(&Fig4Config::default()).unwrap();
        assert_eq!(t.columns(), ["t", "E", "D"]);
        let d = t.column("D").unwrap();
        assert!(d[250] < 1e-9);
        assert!(d[0] > 0.5);
    }

    #[test]
    fn frozen_white_defaults() {
        let cfg = FrozenConfig::default();
        assert!(cfg.freezing_condition());
        let t = run_frozen_discord(&cfg).unwrap();
        let tr: f64 = t.meta("transitions").unwrap().parse().unwrap();
        assert!((tr - (1.0f64 / 0.6).ln() / 2.0).abs() <= 1e-3);
    }

    #[test]
    fn config_defaults_fill_missing_fields() {
        let cfg: Fig2Config = serde_json::from_str(r#"{"lambdas":[0.1]}"#).unwrap();
        assert_eq!(cfg.a2, 1.0 / 3.0);
        assert!(serde_json::from_str::<Fig2Config>(r#"{"lambda":[0.1]}"#).is_err());
        let f: FrozenConfig = serde_json::from_str(r#"{"noise":{"kind":"colored","a":1,"nu":0.3}}"#).unwrap();
        assert_eq!(f.noise, Noise::Colored { a: 1.0, nu: 0.3 });
        let c: CommonConfig = serde_json::from_str(r#"{"R":10,"c01":[0.6,0],"c02":[0.8,0]}"#).unwrap();
        assert_eq!(c.coupling_ratio, 10.0);
        assert_eq!(c.c02.re, 0.8);
    }
}
