use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands::sweep::{OutputKind, SweptParameter};
use crate::settings::Overrides;

/// Cut-set capacity bounds for Poisson wireless networks.
#[derive(Debug, Parser)]
#[command(name = "cutset", version, about)]
pub struct Cli {
    /// Configuration file with `key = value` lines (flags take precedence).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub config: Option<PathBuf>,
    /// Path-loss exponent (> 2).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Node density, nodes/m^2.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub nu: Option<f64>,
    /// Cut radius R, m.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub radius: Option<f64>,
    /// SNR parameter P/(NW) (N = 1).
    #[arg(long = "power-over-nw", global = true, allow_negative_numbers = true)]
    pub power_over_nw: Option<f64>,
    /// Bandwidth W, Hz.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub bandwidth: Option<f64>,
    /// Critical percolation radius at unit density.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub d: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub trials: Option<u64>,
    /// Fading draws per trial.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub draws: Option<u64>,
    /// Outer radius of the simulated exterior, m.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub truncation: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub out: Option<PathBuf>,
    /// Quadrature absolute tolerance in bits/s, or bisection tolerance in m
    /// for `percolation threshold`.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

impl Cli {
    pub fn overrides(&self) -> Overrides {
        Overrides {
            alpha: self.alpha,
            nu: self.nu,
            radius: self.radius,
            power_over_nw: self.power_over_nw,
            bandwidth: self.bandwidth,
            d: self.d,
            trials: self.trials,
            draws: self.draws,
            truncation: self.truncation,
            seed: self.seed,
            out: self.out.clone(),
            tol: self.tol,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every bound output at one configuration (JSON on stdout).
    Bound {
        /// Append a CSV row to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Evaluate the bound over a grid of one parameter.
    Sweep(SweepArgs),
    /// Write the bound, asymptotes and SNR pair over a P/(NW) grid for one alpha.
    Figure2(Figure2Args),
    /// Monte Carlo estimate of the MIMO / MISO / Jensen chain.
    Montecarlo(MonteCarloArgs),
    /// Percolation experiments.
    Percolation {
        #[command(subcommand)]
        experiment: PercolationCommand,
    },
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// One of P_over_NW, nu, R, alpha, W.
    #[arg(long)]
    pub param: SweptParameter,
    #[arg(long)]
    pub from: f64,
    #[arg(long)]
    pub to: f64,
    #[arg(long, default_value_t = 50)]
    pub points: usize,
    /// Linear instead of logarithmic spacing.
    #[arg(long)]
    pub linear: bool,
    /// Comma-separated subset of quadrature, closed_form, asymptote, snr_pair, regime.
    #[arg(long, value_delimiter = ',')]
    pub outputs: Vec<OutputKind>,
}

#[derive(Debug, Args)]
pub struct Figure2Args {
    #[arg(long = "points-per-decade", default_value_t = crate::commands::figure2::DEFAULT_POINTS_PER_DECADE)]
    pub points_per_decade: usize,
    /// Smallest P/(NW) on the grid.
    #[arg(long = "grid-min")]
    pub grid_min: Option<f64>,
    /// Largest P/(NW) on the grid.
    #[arg(long = "grid-max")]
    pub grid_max: Option<f64>,
}

#[derive(Debug, Args)]
pub struct MonteCarloArgs {
    /// rayleigh or uniform_phase.
    #[arg(long, default_value = "rayleigh", value_parser = crate::commands::montecarlo::parse_fading)]
    pub fading: cutset_core::montecarlo::FadingModel,
    /// Largest accepted truncation tail fraction.
    #[arg(long = "tail-cap", default_value_t = cutset_core::montecarlo::DEFAULT_TAIL_CAP)]
    pub tail_cap: f64,
}

#[derive(Debug, Subcommand)]
pub enum PercolationCommand {
    /// Critical radius by bisection on the square crossing probability.
    Threshold {
        #[arg(long = "box-side", default_value_t = 200.0)]
        box_side: f64,
    },
    /// Vacant-loop probability of an annulus.
    VacantLoop {
        /// Dimensionless connection distance x sqrt(nu) (default 0.9 d).
        #[arg(long)]
        k: Option<f64>,
        /// Inner radius, m (default 200 / sqrt(nu)).
        #[arg(long = "inner-radius")]
        inner_radius: Option<f64>,
        /// Annulus width, m (default delta ln(R sqrt(nu)) / sqrt(nu)).
        #[arg(long)]
        width: Option<f64>,
        #[arg(long, default_value_t = crate::commands::percolation::DEFAULT_DELTA)]
        delta: f64,
    },
    /// Origin-to-box connection probability against the box half-side.
    Decay {
        /// Dimensionless connection distance x sqrt(nu) (default 0.9 d).
        #[arg(long)]
        k: Option<f64>,
        #[arg(long = "m-values", value_delimiter = ',', default_values_t = vec![2.0, 4.0, 6.0, 8.0, 10.0])]
        m_values: Vec<f64>,
    },
}
