// Copyright 2026 nmcorr Contributors
// SPDX-License-Identifier: Apache-2.0

//! `nmcorr` command-line interface.
//!
//! Exit status: 0 on success, 2 for usage or configuration errors, 3 when a
//! numerical method fails.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nmcorr::kernels::telegraph_monte_carlo;
use nmcorr::scenarios::{self, figures, OutputOptions, Parsed, Table};
use nmcorr::states::StateSpec;
use nmcorr::{CorrelationReport, Error, KernelSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;

mod output;

use output::{emit, Destination};

const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (", env!("NMCORR_GIT_DESCRIBE"), ")");

#[derive(Parser)]
#[command(name = "nmcorr", version = VERSION, about = "Two-qubit correlation dynamics in noisy channels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Io {
    /// JSON configuration (`"schema": 1`).
    #[arg(long)]
    config: Option<PathBuf>,
    /// CSV destination; defaults to the config's `output.csv`, then stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Optional SVG line plot of the selected columns.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Seed for Monte-Carlo utilities.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a state through a channel and record every measure.
    Evolve(Io),
    /// Report all correlation measures of a state.
    Measure(Io),
    /// Dump q(t) of one environment.
    Kernel {
        #[command(flatten)]
        io: Io,
        /// Add a Monte-Carlo estimate with this many trajectories (telegraph only).
        #[arg(long)]
        monte_carlo: Option<usize>,
    },
    /// Run a parameter sweep.
    Sweep(Io),
    /// Reproduce one figure or headline result.
    Figure {
        which: Figure,
        #[command(flatten)]
        io: Io,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Figure {
    Fig2,
    Fig3,
    Fig4,
    Frozen,
    Common,
}

impl Figure {
    fn name(self) -> &'static str {
        match self {
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
            Figure::Frozen => "frozen",
            Figure::Common => "common",
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { 3 } else { 2 })
        }
    }
}

fn load<T: DeserializeOwned>(io: &Io) -> Result<Parsed<T>, Error> {
    let path = io
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("this command needs --config <json>".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    scenarios::parse_config(&text)
}

fn load_or_default<T: DeserializeOwned + Default>(io: &Io) -> Result<Parsed<T>, Error> {
    if io.config.is_some() {
        load(io)
    } else {
        Ok(Parsed {
            body: T::default(),
            output: OutputOptions::default(),
        })
    }
}

fn destination(io: &Io, output: &OutputOptions) -> Destination {
    Destination {
        csv: io.out.clone().or_else(|| output.csv.clone()),
        svg: io.svg.clone().or_else(|| output.svg.clone()),
        columns: output.columns.clone(),
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Evolve(io) => {
            let p: Parsed<scenarios::EvolveConfig> = load(&io)?;
            let mut t = scenarios::evolve(&p.body)?;
            scenarios::stamp(&mut t, "evolve", &p.body, VERSION)?;
            emit(&t, &destination(&io, &p.output), &[])
        }
        Command::Measure(io) => {
            #[derive(serde::Deserialize)]
            #[serde(deny_unknown_fields)]
            struct MeasureConfig {
                state: StateSpec,
            }
            let p: Parsed<MeasureConfig> = load(&io)?;
            let rho = p.body.state.build()?;
            let report = CorrelationReport::of(&rho);
            println!("{}", serde_json::to_string_pretty(&report)?);
            println!("{}", CorrelationReport::CSV_HEADER);
            println!("{}", report.csv_row());
            if let Some(path) = io.out.or(p.output.csv) {
                let body = format!("{}\n{}\n", CorrelationReport::CSV_HEADER, report.csv_row());
                std::fs::write(&path, body).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            }
            Ok(())
        }
        Command::Kernel { io, monte_carlo } => {
            let p: Parsed<scenarios::KernelConfig> = load(&io)?;
            let mut t = scenarios::kernel_table(&p.body)?;
            if let Some(n) = monte_carlo {
                t = with_monte_carlo(&t, &p.body.kernel, n, io.seed)?;
                t.set_meta("seed", io.seed.to_string());
            }
            scenarios::stamp(&mut t, "kernel", &p.body, VERSION)?;
            emit(&t, &destination(&io, &p.output), &[])
        }
        Command::Sweep(io) => {
            let p: Parsed<scenarios::SweepConfig> = load(&io)?;
            let mut t = scenarios::sweep(&p.body)?;
            scenarios::stamp(&mut t, "sweep", &p.body, VERSION)?;
            emit(&t, &destination(&io, &p.output), &[])?;
            check_plateaus(&t)
        }
        Command::Figure { which, io } => figure(which, &io),
    }
}

fn figure(which: Figure, io: &Io) -> Result<(), Error> {
    let name = which.name();
    match which {
        Figure::Fig2 => {
            let p: Parsed<figures::Fig2Config> = load_or_default(io)?;
            let mut t = scenarios::run_fig2(&p.body)?;
            scenarios::stamp(&mut t, name, &p.body, VERSION)?;
            emit(&t, &destination(io, &p.output), &[])
        }
        Figure::Fig3 => {
            let p: Parsed<figures::Fig3Config> = load_or_default(io)?;
            let mut t = scenarios::run_fig3(&p.body)?;
            scenarios::stamp(&mut t, name, &p.body, VERSION)?;
            emit(&t, &destination(io, &p.output), &[])?;
            check_plateaus(&t)
        }
        Figure::Fig4 => {
            let p: Parsed<figures::Fig4Config> = load_or_default(io)?;
            let mut t = scenarios::run_fig4(&p.body)?;
            scenarios::stamp(&mut t, name, &p.body, VERSION)?;
            emit(&t, &destination(io, &p.output), &[])
        }
        Figure::Frozen => {
            let p: Parsed<figures::FrozenConfig> = load_or_default(io)?;
            if !p.body.freezing_condition() {
                eprintln!("warning: initial correlations do not satisfy the freezing condition; expect plain decay");
            }
            let mut t = scenarios::run_frozen_discord(&p.body)?;
            scenarios::stamp(&mut t, name, &p.body, VERSION)?;
            emit(&t, &destination(io, &p.output), &[])
        }
        Figure::Common => {
            let p: Parsed<figures::CommonConfig> = load_or_default(io)?;
            let mut t = scenarios::run_common_reservoir(&p.body)?;
            scenarios::stamp(&mut t, name, &p.body, VERSION)?;
            let mut s = scenarios::stationary_sweep(&p.body)?;
            scenarios::stamp(&mut s, "common_stationary", &p.body, VERSION)?;
            emit(&t, &destination(io, &p.output), &[("stationary", &s)])
        }
    }
}

fn check_plateaus(t: &Table) -> Result<(), Error> {
    match figures::failed_plateaus(t) {
        0 => Ok(()),
        n => Err(Error::Internal(format!(
            "{n} band-edge point(s) did not reach a plateau (see plateau_ok); lengthen t_max"
        ))),
    }
}

fn with_monte_carlo(t: &Table, kernel: &KernelSpec, trajectories: usize, seed: u64) -> Result<Table, Error> {
    let KernelSpec::Telegraph { a, nu } = *kernel else {
        return Err(Error::Config("--monte-carlo applies to the telegraph kernel only".into()));
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols: Vec<String> = t.columns().to_vec();
    cols.extend(["mc_mean".to_string(), "mc_stderr".to_string()]);
    let mut out = Table::new(cols);
    out.prepend_meta(t);
    for row in t.rows() {
        let (mean, err) = telegraph_monte_carlo(a, nu, row[0], trajectories, &mut rng);
        let mut r = row.clone();
        r.extend([mean, err]);
        out.push(r)?;
    }
    Ok(out)
}
