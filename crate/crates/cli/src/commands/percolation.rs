//! The three percolation experiments.

use std::path::{Path, PathBuf};

use cutset_core::percolation::{
    decay_scan, estimate_critical_radius, vacant_loop_probability, CrossingExperiment,
};
use cutset_core::runner::TrialRunner;
use serde_json::{json, Value};

use crate::error::CliResult;
use crate::output::{self, fmt_float};

pub const THRESHOLD_HEADER: [&str; 4] = ["x_scaled", "crossing_prob", "std_err", "trials"];
pub const DECAY_HEADER: [&str; 3] = ["m", "prob", "std_err"];
pub const VACANT_HEADER: [&str; 8] = [
    "nu",
    "inner_radius",
    "width",
    "x",
    "vacant_prob",
    "crossing_prob",
    "std_err",
    "trials",
];

/// Accepted window for the threshold estimate.
pub const D_WINDOW: (f64, f64) = (1.10, 1.30);
/// Default `delta` in the annulus width `delta ln(R sqrt(nu)) / sqrt(nu)`.
pub const DEFAULT_DELTA: f64 = 15.0;

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn threshold<T: TrialRunner>(
    nu: f64,
    box_side: f64,
    trials: u64,
    tol: f64,
    seed: u64,
    out: &Path,
    runner: &T,
) -> CliResult<(Value, Vec<PathBuf>)> {
    let est = estimate_critical_radius(nu, box_side, trials, tol, seed, runner)?;
    output::ensure_dir(out)?;
    let mut scan = est.scan.clone();
    scan.sort_by(|a, b| a.x_scaled.total_cmp(&b.x_scaled));
    let rows: Vec<Vec<String>> = scan
        .iter()
        .map(|s| {
            vec![
                fmt_float(s.x_scaled),
                fmt_float(s.crossing.probability),
                fmt_float(s.crossing.std_error),
                s.crossing.trials.to_string(),
            ]
        })
        .collect();
    let csv_path = output::out_path(out, "percolation_threshold.csv");
    output::write_csv(&csv_path, &THRESHOLD_HEADER, &rows)?;
    let in_window = est.d_estimate >= D_WINDOW.0 && est.d_estimate <= D_WINDOW.1;
    let summary = json!({
        "command": "percolation threshold",
        "nu": nu,
        "box_side": box_side,
        "trials_per_point": trials,
        "tol": tol,
        "d_estimate": est.d_estimate,
        "bracket": [est.low, est.high],
        "d_window": [D_WINDOW.0, D_WINDOW.1],
        "check": pass(in_window),
        "seed": seed,
        "timestamp": output::timestamp(),
    });
    let json_path = output::out_path(out, "percolation_threshold.json");
    output::write_json(&json_path, &summary)?;
    Ok((summary, vec![csv_path, json_path]))
}

pub fn vacant_loop<T: TrialRunner>(
    exp: &CrossingExperiment,
    seed: u64,
    out: &Path,
    runner: &T,
) -> CliResult<(Value, Vec<PathBuf>)> {
    let est = vacant_loop_probability(exp, seed, runner)?;
    output::ensure_dir(out)?;
    let row = vec![
        fmt_float(exp.nu),
        fmt_float(exp.inner_radius),
        fmt_float(exp.width),
        fmt_float(exp.connection_distance),
        fmt_float(est.vacant.probability),
        fmt_float(est.crossing.probability),
        fmt_float(est.vacant.std_error),
        exp.trials.to_string(),
    ];
    let csv_path = output::out_path(out, "percolation_vacant_loop.csv");
    output::write_csv(&csv_path, &VACANT_HEADER, &[row])?;
    let summary = json!({
        "command": "percolation vacant-loop",
        "nu": exp.nu,
        "inner_radius": exp.inner_radius,
        "width": exp.width,
        "x": exp.connection_distance,
        "k": exp.connection_distance * exp.nu.sqrt(),
        "trials": exp.trials,
        "vacant_loop_probability": est.vacant.probability,
        "crossing_probability": est.crossing.probability,
        "std_err": est.vacant.std_error,
        "seed": seed,
        "timestamp": output::timestamp(),
    });
    let json_path = output::out_path(out, "percolation_vacant_loop.json");
    output::write_json(&json_path, &summary)?;
    Ok((summary, vec![csv_path, json_path]))
}

#[allow(clippy::too_many_arguments)]
pub fn decay<T: TrialRunner>(
    nu: f64,
    x: f64,
    ms: &[f64],
    trials: u64,
    seed: u64,
    out: &Path,
    runner: &T,
) -> CliResult<(Value, Vec<PathBuf>)> {
    let scan = decay_scan(nu, x, ms, trials, seed, runner)?;
    output::ensure_dir(out)?;
    let rows: Vec<Vec<String>> = scan
        .points
        .iter()
        .map(|p| {
            vec![
                fmt_float(p.m),
                fmt_float(p.estimate.probability),
                fmt_float(p.estimate.std_error),
            ]
        })
        .collect();
    let csv_path = output::out_path(out, "percolation_decay.csv");
    output::write_csv(&csv_path, &DECAY_HEADER, &rows)?;
    let decays = scan
        .fit
        .map(|f| f.slope < 0.0 && f.r_squared >= 0.9)
        .unwrap_or(false);
    let summary = json!({
        "command": "percolation decay",
        "nu": nu,
        "x": x,
        "k": x * nu.sqrt(),
        "m_values": ms,
        "trials": trials,
        "supercritical": scan.supercritical,
        "slope": scan.fit.map(|f| f.slope),
        "intercept": scan.fit.map(|f| f.intercept),
        "r_squared": scan.fit.map(|f| f.r_squared),
        "check": pass(decays),
        "seed": seed,
        "timestamp": output::timestamp(),
    });
    let json_path = output::out_path(out, "percolation_decay.json");
    output::write_json(&json_path, &summary)?;
    Ok((summary, vec![csv_path, json_path]))
}
