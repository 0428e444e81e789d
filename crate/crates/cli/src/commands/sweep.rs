//! Parameter sweeps over one configuration field.

use std::path::PathBuf;
use std::str::FromStr;

use cutset_core::NetworkConfig;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::commands::bound::{self, config_json, BoundRecord};
use crate::error::{CliError, CliResult};
use crate::output::{self, bits, fmt_float, fmt_opt};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweptParameter {
    PowerOverNw,
    Nu,
    Radius,
    Alpha,
    Bandwidth,
}

impl SweptParameter {
    pub fn name(&self) -> &'static str {
        match self {
            SweptParameter::PowerOverNw => "P_over_NW",
            SweptParameter::Nu => "nu",
            SweptParameter::Radius => "R",
            SweptParameter::Alpha => "alpha",
            SweptParameter::Bandwidth => "W",
        }
    }

    /// `base` with the parameter set to `value`, keeping `P/(NW)` fixed when
    /// `W` changes.
    pub fn apply(&self, base: &NetworkConfig, value: f64) -> CliResult<NetworkConfig> {
        let cfg = match self {
            SweptParameter::PowerOverNw => base.with_snr_parameter(value),
            SweptParameter::Nu => NetworkConfig { density: value, ..*base },
            SweptParameter::Radius => NetworkConfig { radius: value, ..*base },
            SweptParameter::Alpha => NetworkConfig { alpha: value, ..*base },
            SweptParameter::Bandwidth => {
                NetworkConfig { bandwidth: value, ..*base }.with_snr_parameter(base.snr_parameter())
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl FromStr for SweptParameter {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "P_over_NW" | "power_over_nw" | "power-over-nw" => Ok(SweptParameter::PowerOverNw),
            "nu" => Ok(SweptParameter::Nu),
            "R" | "radius" => Ok(SweptParameter::Radius),
            "alpha" => Ok(SweptParameter::Alpha),
            "W" | "bandwidth" => Ok(SweptParameter::Bandwidth),
            _ => Err(format!("unknown sweep parameter `{s}` (P_over_NW, nu, R, alpha, W)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum OutputKind {
    Quadrature,
    ClosedForm,
    Asymptote,
    SnrPair,
    Regime,
}

impl OutputKind {
    pub const ALL: [OutputKind; 5] = [
        OutputKind::Quadrature,
        OutputKind::ClosedForm,
        OutputKind::Asymptote,
        OutputKind::SnrPair,
        OutputKind::Regime,
    ];

    fn columns(&self) -> &'static [&'static str] {
        match self {
            OutputKind::Quadrature => &["quadrature_bits_s"],
            OutputKind::ClosedForm => &["closed_form_bits_s"],
            OutputKind::Asymptote => &["asymptote_case", "asymptote_bits_s"],
            OutputKind::SnrPair => &["s_short", "s_long"],
            OutputKind::Regime => &["regime"],
        }
    }

    fn fields(&self, r: &BoundRecord) -> Vec<String> {
        match self {
            OutputKind::Quadrature => vec![fmt_float(bits(r.quadrature.value))],
            OutputKind::ClosedForm => vec![fmt_opt(r.closed_form.as_ref().ok().map(|v| bits(*v)))],
            OutputKind::Asymptote => match &r.asymptote {
                Ok(a) => vec![a.case.label().to_string(), fmt_float(bits(a.nats))],
                Err(_) => vec![String::new(), String::new()],
            },
            OutputKind::SnrPair => vec![fmt_float(r.snr.short_range), fmt_float(r.snr.long_range)],
            OutputKind::Regime => vec![r.regime_label().to_string()],
        }
    }
}

impl FromStr for OutputKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quadrature" => Ok(OutputKind::Quadrature),
            "closed_form" => Ok(OutputKind::ClosedForm),
            "asymptote" => Ok(OutputKind::Asymptote),
            "snr_pair" => Ok(OutputKind::SnrPair),
            "regime" => Ok(OutputKind::Regime),
            _ => Err(format!(
                "unknown output `{s}` (quadrature, closed_form, asymptote, snr_pair, regime)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: NetworkConfig,
    pub swept: SweptParameter,
    pub grid: Vec<f64>,
    pub outputs: Vec<OutputKind>,
}

/// `points` values from `from` to `to`, log- or linearly spaced.
pub fn make_grid(from: f64, to: f64, points: usize, log: bool) -> CliResult<Vec<f64>> {
    if points == 0 {
        return Err(CliError::validation("sweep grid must have at least one point"));
    }
    if points == 1 {
        return Ok(vec![from]);
    }
    if log && !(from > 0.0 && to > 0.0) {
        return Err(CliError::validation("log-spaced grid needs positive endpoints"));
    }
    let step = |i: usize| i as f64 / (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            if i == points - 1 {
                to
            } else if log {
                10f64.powf(from.log10() + (to.log10() - from.log10()) * step(i))
            } else {
                from + (to - from) * step(i)
            }
        })
        .collect())
}

impl SweepSpec {
    pub fn new(
        base: NetworkConfig,
        swept: SweptParameter,
        grid: Vec<f64>,
        mut outputs: Vec<OutputKind>,
    ) -> CliResult<Self> {
        if grid.is_empty() {
            return Err(CliError::validation("sweep grid is empty"));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(CliError::validation("sweep grid must be strictly increasing"));
        }
        for &v in &grid {
            swept.apply(&base, v).map_err(|e| {
                CliError::validation(format!("grid value {v} for {}: {e}", swept.name()))
            })?;
        }
        if outputs.is_empty() {
            outputs = OutputKind::ALL.to_vec();
        }
        outputs.sort();
        outputs.dedup();
        Ok(SweepSpec {
            base,
            swept,
            grid,
            outputs,
        })
    }

    pub fn header(&self) -> Vec<&'static str> {
        let mut h = vec![self.swept.name()];
        for o in &self.outputs {
            h.extend_from_slice(o.columns());
        }
        h
    }
}

/// Evaluates every grid point (in parallel, results in grid order).
pub fn evaluate(spec: &SweepSpec, tol_bits: Option<f64>) -> CliResult<Vec<BoundRecord>> {
    spec.grid
        .par_iter()
        .map(|&v| bound::evaluate(&spec.swept.apply(&spec.base, v)?, tol_bits))
        .collect()
}

pub fn run(spec: &SweepSpec, tol_bits: Option<f64>, out: &std::path::Path) -> CliResult<(Value, Vec<PathBuf>)> {
    let records = evaluate(spec, tol_bits)?;
    output::ensure_dir(out)?;
    let rows: Vec<Vec<String>> = spec
        .grid
        .iter()
        .zip(&records)
        .map(|(&v, r)| {
            let mut row = vec![fmt_float(v)];
            for o in &spec.outputs {
                row.extend(o.fields(r));
            }
            row
        })
        .collect();
    let csv_path = output::out_path(out, "sweep.csv");
    output::write_csv(&csv_path, &spec.header(), &rows)?;
    let summary = json!({
        "command": "sweep",
        "base": config_json(&spec.base),
        "swept_parameter": spec.swept.name(),
        "points": spec.grid.len(),
        "grid_min": spec.grid[0],
        "grid_max": spec.grid[spec.grid.len() - 1],
        "outputs": spec.outputs.iter().map(|o| o.columns().join("+")).collect::<Vec<_>>(),
        "units": { "capacity": "bits/s", "snr": "dimensionless" },
        "timestamp": output::timestamp(),
    });
    let json_path = output::out_path(out, "sweep.json");
    output::write_json(&json_path, &summary)?;
    Ok((summary, vec![csv_path, json_path]))
}
