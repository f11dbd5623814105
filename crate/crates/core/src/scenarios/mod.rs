// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! Configuration-driven pipelines and their CSV/SVG output.
//!
//! Every configuration file is a JSON object carrying `"schema": 1`. An
//! optional `"output"` object names the CSV/SVG destinations; everything
//! else is parsed into the pipeline's own configuration type, with unknown
//! keys rejected.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::PathBuf;

use crate::error::{Error, Result};

pub mod evolve;
pub mod figures;
pub mod svg;
pub mod table;

pub use evolve::{evolve, kernel_table, ChannelSpec, EvolveConfig, KernelConfig};
pub use figures::{
    run_common_reservoir, run_fig2, run_fig3, run_fig4, run_frozen_discord, stationary_sweep, CommonConfig,
    Fig2Config, Fig3Config, Fig4Config, FrozenConfig, Noise,
};
pub use table::Table;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputOptions {
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    /// Columns to keep (CSV) and to plot (SVG, the first is the x axis).
    pub columns: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Parsed<T> {
    pub body: T,
    pub output: OutputOptions,
}

/// Parse a versioned configuration document.
pub fn parse_config<T: DeserializeOwned>(text: &str) -> Result<Parsed<T>> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Config(format!("not valid JSON: {e}")))?;
    let serde_json::Value::Object(mut map) = value else {
        return Err(Error::Config("configuration must be a JSON object".into()));
    };
    match map.remove("schema") {
        Some(serde_json::Value::Number(n)) if n.as_u64() == Some(SCHEMA_VERSION) => {}
        Some(other) => return Err(Error::Config(format!("unsupported schema {other}, expected {SCHEMA_VERSION}"))),
        None => return Err(Error::Config(format!("missing \"schema\": {SCHEMA_VERSION}"))),
    }
    let output = match map.remove("output") {
        Some(v) => serde_json::from_value(v).map_err(|e| Error::Config(format!("output: {e}")))?,
        None => OutputOptions::default(),
    };
    let body = serde_json::from_value(serde_json::Value::Object(map)).map_err(|e| Error::Config(e.to_string()))?;
    Ok(Parsed { body, output })
}

/// Hex SHA-256 of the resolved configuration (defaults filled in).
pub fn config_hash<T: Serialize>(cfg: &T) -> Result<String> {
    let canonical = serde_json::to_vec(cfg)?;
    Ok(hex::encode(Sha256::digest(&canonical)))
}

/// Write the provenance header lines onto `table`.
pub fn stamp<T: Serialize>(table: &mut Table, scenario: &str, cfg: &T, version: &str) -> Result<()> {
    let time_unit = table.meta("time_unit").map(str::to_owned);
    let mut head = Table::new(table.columns().to_vec());
    head.set_meta("scenario", scenario);
    head.set_meta("config_sha256", config_hash(cfg)?);
    head.set_meta("version", version);
    if let Some(u) = time_unit {
        head.set_meta("time_unit", u);
    }
    table.prepend_meta(&head);
    Ok(())
}

/// Parameter sweeps run point-parallel.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "sweep", rename_all = "snake_case")]
pub enum SweepConfig {
    /// Band-edge plateau against `delta / beta`.
    BandEdge(Fig3Config),
    /// Stationary concurrence against `r1` in a common cavity.
    Stationary(CommonConfig),
}

pub fn sweep(cfg: &SweepConfig) -> Result<Table> {
    match cfg {
        SweepConfig::BandEdge(c) => run_fig3(c),
        SweepConfig::Stationary(c) => stationary_sweep(c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_is_required_and_checked() {
        assert!(matches!(parse_config::<Fig4Config>("{}"), Err(Error::Config(_))));
        assert!(matches!(parse_config::<Fig4Config>(r#"{"schema":2}"#), Err(Error::Config(_))));
        assert!(matches!(parse_config::<Fig4Config>("[1]"), Err(Error::Config(_))));
        let p: Parsed<Fig4Config> =
            parse_config(r#"{"schema":1,"g":2,"output":{"csv":"x.csv","columns":["t","D"]}}"#).unwrap();
        assert_eq!(p.body.g, 2.0);
        assert_eq!(p.output.columns.unwrap(), vec!["t", "D"]);
        assert!(matches!(parse_config::<Fig4Config>(r#"{"schema":1,"h":2}"#), Err(Error::Config(_))));
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = config_hash(&Fig4Config::default()).unwrap();
        assert_eq!(a, config_hash(&Fig4Config::default()).unwrap());
        let other = Fig4Config { g: 2.0, ..Default::default() };
        assert_ne!(a, config_hash(&other).unwrap());
        assert_eq!(a.len(), 64);
    }

    #[test]
    fn stamp_puts_provenance_first() {
        let mut t = Table::new(["t"]);
        t.set_meta("time_unit", "g*t");
        t.set_meta("transitions", "none");
        stamp(&mut t, "fig4", &Fig4Config::default(), "v0").unwrap();
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# scenario: fig4"));
        assert!(lines[1].starts_with("# config_sha256: "));
        assert_eq!(lines[2], "# version: v0");
        assert_eq!(lines[3], "# time_unit: g*t");
        assert_eq!(lines[4], "# transitions: none");
    }

    #[test]
    fn sweep_config_tags() {
        let p: Parsed<SweepConfig> =
            parse_config(r#"{"schema":1,"sweep":"stationary","coupling_ratio":1,"stationary":{"r1_steps":4}}"#).unwrap();
        let t = sweep(&p.body).unwrap();
        assert_eq!(t.len(), 5);
    }
}
