// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn nmcorr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nmcorr")).args(args).output().expect("binary runs")
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn config(name: &str) -> String {
    configs().join(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// Data lines of a CSV emitted by the tool: header first, metadata dropped.
fn data_lines(csv: &str) -> Vec<&str> {
    csv.lines().filter(|l| !l.starts_with('#')).collect()
}

fn write_config(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn fig4_header_and_metadata_order() {
    let out = nmcorr(&["figure", "fig4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let meta: Vec<&str> = text.lines().take_while(|l| l.starts_with('#')).collect();
    assert!(meta[0].starts_with("# scenario: fig4"));
    assert!(meta[1].starts_with("# config_sha256: "));
    assert!(meta[2].starts_with("# version: "));
    assert!(meta[3].starts_with("# time_unit: "));
    let lines = data_lines(&text);
    assert_eq!(lines[0], "t,E,D");
    assert_eq!(lines.len(), 2002);
}

#[test]
fn measure_reports_maximal_entanglement_for_bell_state() {
    let out = nmcorr(&["measure", "--config", &config("measure_bell.json")]);
    assert!(out.status.success());
    let text = stdout(&out);
    let json_end = text.find("\n}").unwrap() + 2;
    let report: serde_json::Value = serde_json::from_str(&text[..json_end]).unwrap();
    assert!((report["concurrence"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((report["chsh_max"].as_f64().unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn kernel_table_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        &dir,
        "k.json",
        r#"{"schema": 1, "kernel": "lorentzian", "lambda": 0.1, "grid": {"t_max": 20.0, "steps": 200}}"#,
    );
    let csv = dir.path().join("k.csv");
    let out = nmcorr(&["kernel", "--config", &cfg, "--out", csv.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines = data_lines(&text);
    assert_eq!(lines[0], "t,re_q,im_q,abs_q2");
    for line in &lines[1..] {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        let q = nmcorr::kernels::lorentzian_q(0.1, 1.0, v[0]);
        assert!((v[3] - q.norm_sqr()).abs() < 1e-12);
    }
}

#[test]
fn monte_carlo_is_reproducible_for_a_seed() {
    let run = |seed: &str| stdout(&nmcorr(&["kernel", "--config", &config("kernel_telegraph.json"), "--monte-carlo", "500", "--seed", seed]));
    assert_eq!(run("4"), run("4"));
    assert_ne!(run("4"), run("5"));
}

#[test]
fn output_is_deterministic() {
    let a = nmcorr(&["evolve", "--config", &config("evolve_frozen_flip.json")]);
    let b = nmcorr(&["evolve", "--config", &config("evolve_frozen_flip.json")]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(data_lines(&stdout(&a))[0], "t,discord,classical");
}

#[test]
fn shipped_configs_run() {
    let cases = [
        ("evolve", "evolve_ewl_lorentzian.json"),
        ("evolve", "evolve_frozen_flip.json"),
        ("measure", "measure_bell.json"),
        ("kernel", "kernel_band_edge.json"),
        ("kernel", "kernel_telegraph.json"),
        ("sweep", "sweep_stationary.json"),
    ];
    for (cmd, file) in cases {
        let out = nmcorr(&[cmd, "--config", &config(file)]);
        assert!(out.status.success(), "{file}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = nmcorr(&["figure", "frozen", "--config", &config("figure_frozen_colored.json")]);
    assert!(out.status.success());
}

#[test]
fn common_figure_writes_stationary_sibling() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("common.csv");
    let out = nmcorr(&["figure", "common", "--out", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let sibling = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.to_string_lossy().contains("stationary"))
        .expect("stationary csv");
    let text = std::fs::read_to_string(sibling).unwrap();
    let best: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("# max_C_s: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((best - 3.0 * 3f64.sqrt() / 8.0).abs() < 1e-6);
}

#[test]
fn svg_is_written_on_request() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("fig4.svg");
    let out = nmcorr(&["figure", "fig4", "--svg", svg.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(std::fs::read_to_string(svg).unwrap().contains("<svg"));
}

#[test]
fn usage_and_config_errors_exit_with_2() {
    assert_eq!(nmcorr(&["frobnicate"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("no_schema.json", r#"{"kernel": "markov_flat"}"#),
        ("bad_schema.json", r#"{"schema": 7, "kernel": "markov_flat"}"#),
        ("unknown.json", r#"{"schema": 1, "kernel": "markov_flat", "colour": 1}"#),
        ("bad_value.json", r#"{"schema": 1, "kernel": "lorentzian", "lambda": -1.0}"#),
        ("not_json.json", "schema = 1"),
    ];
    for (name, body) in cases {
        let cfg = write_config(&dir, name, body);
        let out = nmcorr(&["kernel", "--config", &cfg]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(nmcorr(&["evolve"]).status.code(), Some(2));
}

#[test]
fn unreached_plateau_exits_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, "short.json", r#"{"schema": 1, "deltas": [2.0], "t_max": 5.0, "step": 0.01}"#);
    let out = nmcorr(&["figure", "fig3", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(3));
    // the table is still written so the drift can be inspected
    assert!(stdout(&out).contains("plateau_ok"));
}

#[test]
fn version_names_the_package() {
    let out = nmcorr(&["--version"]);
    assert!(stdout(&out).contains(env!("CARGO_PKG_VERSION")));
}
