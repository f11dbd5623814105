// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Generic pipelines: evolve any state through any channel, dump `q(t)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::table::Table;
use crate::channels::{
    flip_channel_dense, independent_envs_evolve, random_field_evolve, telegraph_dephase_dense, AmplitudeDampingPair,
    Axis, RandomFieldParams,
};
use crate::error::{Error, Result};
use crate::kernels::{CoherenceSeries, KernelSpec, TimeGrid};
use crate::measures::CorrelationReport;
use crate::states::{DensityMatrix, StateSpec};

/// Channel selection in an `evolve` configuration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ChannelSpec {
    /// Independent zero-temperature reservoirs; `kernel_b` defaults to `kernel`.
    AmplitudeDamping {
        kernel: KernelSpec,
        #[serde(default)]
        kernel_b: Option<KernelSpec>,
    },
    /// White-noise Pauli flip on both qubits.
    Flip { axis: Axis, gamma: f64 },
    /// Random telegraph dephasing on both qubits.
    Telegraph { a: f64, nu: f64 },
    /// Classical field with random phase on both qubits.
    RandomField { g: f64 },
}

impl ChannelSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            ChannelSpec::AmplitudeDamping { kernel, kernel_b } => {
                for k in std::iter::once(kernel).chain(kernel_b) {
                    if matches!(k, KernelSpec::Telegraph { .. }) {
                        return Err(Error::Config(
                            "the telegraph kernel is a dephasing factor; use the `telegraph` channel".into(),
                        ));
                    }
                    k.validate()?;
                }
                if let Some(b) = kernel_b {
                    if b.time_unit() != kernel.time_unit() {
                        return Err(Error::Config("both reservoirs must share one time unit".into()));
                    }
                }
                Ok(())
            }
            ChannelSpec::Flip { gamma, .. } if !(gamma.is_finite() && *gamma >= 0.0) => {
                Err(Error::param("gamma", format!("{gamma} must be finite and >= 0")))
            }
            ChannelSpec::Telegraph { a, nu } => KernelSpec::Telegraph { a: *a, nu: *nu }.validate(),
            ChannelSpec::RandomField { g } => RandomFieldParams { g: *g }.validate(),
            ChannelSpec::Flip { .. } => Ok(()),
        }
    }

    pub fn time_unit(&self) -> &'static str {
        match self {
            ChannelSpec::AmplitudeDamping { kernel, .. } => kernel.time_unit(),
            ChannelSpec::Flip { .. } => "gamma*t",
            ChannelSpec::Telegraph { .. } => "t",
            ChannelSpec::RandomField { .. } => "g*t",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveConfig {
    pub state: StateSpec,
    pub channel: ChannelSpec,
    pub grid: TimeGrid,
}

pub const RECORD_COLUMNS: [&str; 11] = [
    "t",
    "concurrence",
    "discord",
    "classical",
    "rel_entropy_entanglement",
    "chsh_max",
    "abs_q2",
    "rho11",
    "rho22",
    "rho33",
    "rho44",
];

/// Evolve the configured state and record every measure at each grid point.
pub fn evolve(cfg: &EvolveConfig) -> Result<Table> {
    cfg.channel.validate()?;
    cfg.grid.validate()?;
    let rho0 = cfg.state.build()?;
    let times = cfg.grid.times();
    let mut table = Table::new(RECORD_COLUMNS);
    table.set_meta("time_unit", cfg.channel.time_unit());

    let coherences = match cfg.channel {
        ChannelSpec::AmplitudeDamping { kernel, kernel_b } => {
            let qa = kernel.series(&cfg.grid)?;
            let qb = match kernel_b {
                Some(k) => k.series(&cfg.grid)?,
                None => qa.clone(),
            };
            Some((qa, qb))
        }
        _ => None,
    };

    for (k, &t) in times.iter().enumerate() {
        let (rho, abs_q2) = match (&cfg.channel, &coherences) {
            (ChannelSpec::AmplitudeDamping { .. }, Some((qa, qb))) => {
                let pair = AmplitudeDampingPair::new(qa.values()[k], qb.values()[k])?;
                (independent_envs_evolve(&rho0, &pair)?, pair.qa.norm_sqr())
            }
            (ChannelSpec::Flip { axis, gamma }, _) => (flip_channel_dense(&rho0, *axis, *gamma, t)?, f64::NAN),
            (ChannelSpec::Telegraph { a, nu }, _) => (telegraph_dephase_dense(&rho0, *a, *nu, t)?, f64::NAN),
            (ChannelSpec::RandomField { g }, _) => (random_field_evolve(&rho0, &RandomFieldParams { g: *g }, t)?, f64::NAN),
            _ => unreachable!("coherences exist exactly for amplitude damping"),
        };
        table.push(record_row(t, &rho, abs_q2))?;
    }
    Ok(table)
}

fn record_row(t: f64, rho: &DensityMatrix, abs_q2: f64) -> Vec<f64> {
    let r = CorrelationReport::of(rho);
    let opt = |x: Option<f64>| x.unwrap_or(f64::NAN);
    let p = rho.populations();
    vec![
        t,
        r.concurrence,
        opt(r.discord),
        opt(r.classical),
        opt(r.rel_entropy_entanglement),
        r.chsh_max,
        abs_q2,
        p[0],
        p[1],
        p[2],
        p[3],
    ]
}

/// Kernel fields sit at the top level next to an optional `grid`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "serde_json::Map<String, serde_json::Value>")]
pub struct KernelConfig {
    #[serde(flatten)]
    pub kernel: KernelSpec,
    #[serde(default)]
    pub grid: Option<TimeGrid>,
}

// `flatten` would silently accept unknown keys, so split the map by hand.
impl TryFrom<serde_json::Map<String, serde_json::Value>> for KernelConfig {
    type Error = Error;

    fn try_from(mut map: serde_json::Map<String, serde_json::Value>) -> Result<Self> {
        let grid = match map.remove("grid") {
            Some(g) => Some(serde_json::from_value(g).map_err(|e| Error::Config(format!("grid: {e}")))?),
            None => None,
        };
        let kernel = serde_json::from_value(serde_json::Value::Object(map)).map_err(|e| Error::Config(e.to_string()))?;
        Ok(KernelConfig { kernel, grid })
    }
}

/// Default grid for `kernel` dumps: the band edge needs a long horizon to settle.
pub fn default_kernel_grid(kernel: &KernelSpec) -> TimeGrid {
    match kernel {
        KernelSpec::BandEdge { beta, .. } => TimeGrid {
            t_max: crate::kernels::band_edge::PLATEAU_T_MAX / beta,
            steps: (crate::kernels::band_edge::PLATEAU_T_MAX / crate::kernels::band_edge::PLATEAU_STEP) as usize,
        },
        _ => TimeGrid { t_max: 50.0, steps: 5000 },
    }
}

/// `t, re_q, im_q, abs_q2` for one environment.
pub fn kernel_table(cfg: &KernelConfig) -> Result<Table> {
    let grid = cfg.grid.unwrap_or_else(|| default_kernel_grid(&cfg.kernel));
    let series: CoherenceSeries = cfg.kernel.series(&grid)?;
    let mut table = Table::new(["t", "re_q", "im_q", "abs_q2"]);
    table.set_meta("time_unit", cfg.kernel.time_unit());
    for (t, q) in series.iter() {
        let q: Complex64 = q;
        table.push(vec![t, q.re, q.im, q.norm_sqr()])?;
    }
    Ok(table)
}
