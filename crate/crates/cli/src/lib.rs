//! Command-line front end: configuration handling, dataset writers and the
//! `cutset` binary's subcommands.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod error;
pub mod output;
pub mod parallel;
pub mod settings;

use std::path::PathBuf;

use cutset_core::montecarlo::MonteCarloPlan;
use cutset_core::percolation::CrossingExperiment;
use serde_json::Value;

use crate::args::{Cli, Command, PercolationCommand};
use crate::commands::{bound, figure2, montecarlo, percolation, sweep};
use crate::error::{CliError, CliResult};
use crate::parallel::Rayon;
use crate::settings::{Overrides, Settings};

pub const DEFAULT_MONTECARLO_TRIALS: u64 = 20;
pub const DEFAULT_THRESHOLD_TRIALS: u64 = 400;
pub const DEFAULT_THRESHOLD_TOL: f64 = 0.01;
pub const DEFAULT_VACANT_TRIALS: u64 = 200;
pub const DEFAULT_DECAY_TRIALS: u64 = 20_000;

/// Result of a command: the JSON printed to stdout and the files written.
#[derive(Debug)]
pub struct Outcome {
    pub summary: Value,
    pub files: Vec<PathBuf>,
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let file = cli.config.as_deref().map(Overrides::from_file).transpose()?;
    let settings = Settings::resolve(cli.overrides(), file)?;
    let out = settings.out();
    let (summary, files) = match &cli.command {
        Command::Bound { csv } => {
            let cfg = settings.network()?;
            let v = bound::run(&cfg, settings.tol(), csv.as_deref())?;
            (v, csv.iter().cloned().collect())
        }
        Command::Sweep(a) => {
            let grid = sweep::make_grid(a.from, a.to, a.points, !a.linear)?;
            let spec = sweep::SweepSpec::new(settings.network()?, a.param, grid, a.outputs.clone())?;
            sweep::run(&spec, settings.tol(), &out)?
        }
        Command::Figure2(a) => {
            let cfg = settings.network()?;
            let (lo, hi) = figure2::default_range(cfg.alpha);
            let grid = figure2::log_grid(
                a.grid_min.unwrap_or(lo),
                a.grid_max.unwrap_or(hi),
                a.points_per_decade,
            )?;
            figure2::run(&cfg, &grid, &out)?
        }
        Command::Montecarlo(a) => {
            let cfg = settings.network()?;
            let truncation = settings
                .values
                .truncation
                .unwrap_or_else(|| montecarlo::minimal_truncation(&cfg, a.tail_cap));
            let plan = MonteCarloPlan {
                tail_cap: a.tail_cap,
                fading: a.fading,
                ..MonteCarloPlan::new(
                    settings.trials_or(DEFAULT_MONTECARLO_TRIALS),
                    settings.draws(),
                    truncation,
                )
            };
            montecarlo::run(&cfg, &plan, settings.seed(), &out, &Rayon)?
        }
        Command::Percolation { experiment } => run_percolation(&settings, experiment, &out)?,
    };
    Ok(Outcome { summary, files })
}

fn default_k(settings: &Settings) -> f64 {
    0.9 * settings.d()
}

fn connection_distance(k: f64, nu: f64) -> CliResult<f64> {
    if !(nu.is_finite() && nu >= 0.0) {
        return Err(CliError::validation("invalid parameter `nu`: must be finite and >= 0"));
    }
    // With no nodes the distance is irrelevant; keep k as a length.
    Ok(if nu > 0.0 { k / nu.sqrt() } else { k })
}

fn run_percolation(
    settings: &Settings,
    experiment: &PercolationCommand,
    out: &std::path::Path,
) -> CliResult<(Value, Vec<PathBuf>)> {
    let nu = settings.nu();
    let seed = settings.seed();
    match experiment {
        PercolationCommand::Threshold { box_side } => percolation::threshold(
            nu,
            *box_side,
            settings.trials_or(DEFAULT_THRESHOLD_TRIALS),
            settings.tol().unwrap_or(DEFAULT_THRESHOLD_TOL),
            seed,
            out,
            &Rayon,
        ),
        PercolationCommand::VacantLoop {
            k,
            inner_radius,
            width,
            delta,
        } => {
            let x = connection_distance(k.unwrap_or_else(|| default_k(settings)), nu)?;
            let scale = if nu > 0.0 { nu.sqrt() } else { 1.0 };
            let inner = inner_radius.unwrap_or(200.0 / scale);
            let width = width.unwrap_or_else(|| delta * (inner * scale).ln() / scale);
            let exp = CrossingExperiment::new(
                nu,
                inner,
                width,
                x,
                settings.trials_or(DEFAULT_VACANT_TRIALS),
            )?;
            percolation::vacant_loop(&exp, seed, out, &Rayon)
        }
        PercolationCommand::Decay { k, m_values } => {
            let x = connection_distance(k.unwrap_or_else(|| default_k(settings)), nu)?;
            percolation::decay(
                nu,
                x,
                m_values,
                settings.trials_or(DEFAULT_DECAY_TRIALS),
                seed,
                out,
                &Rayon,
            )
        }
    }
}
