//! Monte Carlo validation of the bound chain for one configuration.

use std::path::{Path, PathBuf};

use cutset_core::bound::cutset_bound;
use cutset_core::montecarlo::{
    estimate_expected_cutset, truncation_tail_fraction, CapacityEstimate, CutsetEstimate,
    FadingModel, MonteCarloPlan,
};
use cutset_core::runner::TrialRunner;
use cutset_core::NetworkConfig;
use serde_json::{json, Value};

use crate::commands::bound::config_json;
use crate::error::CliResult;
use crate::output::{self, bits, fmt_float};

pub const TRIALS_HEADER: [&str; 5] = ["trial", "draw", "mimo_nats", "miso_nats", "jensen_nats"];

/// Smallest truncation radius whose tail fraction is within `cap`.
pub fn minimal_truncation(cfg: &NetworkConfig, cap: f64) -> f64 {
    cfg.radius * cap.powf(-1.0 / (cfg.alpha - 2.0)) * (1.0 + 1e-9)
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn estimate_json(e: &CapacityEstimate) -> Value {
    json!({
        "mean_bits_s": bits(e.mean),
        "std_error_bits_s": bits(e.std_error),
        "trials": e.trials,
    })
}

/// The three one-sided checks of the bound chain at 3 pooled standard
/// errors, and the per-draw Hadamard check.
pub fn checks(est: &CutsetEstimate, bound_nats: f64) -> Value {
    let pooled = |a: &CapacityEstimate, b: &CapacityEstimate| {
        (a.std_error.powi(2) + b.std_error.powi(2)).sqrt()
    };
    json!({
        "hadamard_per_draw": pass(est.hadamard_violations == 0),
        "hadamard_violations": est.hadamard_violations,
        "mimo_le_miso": pass(est.mimo.mean <= est.miso.mean + 3.0 * pooled(&est.mimo, &est.miso)),
        "miso_le_jensen": pass(est.miso.mean <= est.jensen.mean + 3.0 * pooled(&est.miso, &est.jensen)),
        "jensen_le_bound": pass(est.jensen.mean <= bound_nats + 3.0 * est.jensen.std_error),
    })
}

pub fn run<T: TrialRunner>(
    cfg: &NetworkConfig,
    plan: &MonteCarloPlan,
    seed: u64,
    out: &Path,
    runner: &T,
) -> CliResult<(Value, Vec<PathBuf>)> {
    let plan = MonteCarloPlan {
        keep_records: true,
        ..*plan
    };
    let est = estimate_expected_cutset(cfg, &plan, seed, runner)?;
    let bound_value = cutset_bound(cfg)?.value;
    output::ensure_dir(out)?;

    let rows: Vec<Vec<String>> = est
        .records
        .iter()
        .map(|r| {
            vec![
                r.trial.to_string(),
                r.draw.to_string(),
                fmt_float(r.mimo),
                fmt_float(r.miso),
                fmt_float(r.jensen),
            ]
        })
        .collect();
    let csv_path = output::out_path(out, "montecarlo_trials.csv");
    output::write_csv(&csv_path, &TRIALS_HEADER, &rows)?;

    let summary = json!({
        "command": "montecarlo",
        "config": config_json(cfg),
        "plan": {
            "trials": plan.trials,
            "draws": plan.fading_draws,
            "truncation": plan.truncation_radius,
            "tail_fraction": truncation_tail_fraction(cfg, plan.truncation_radius),
            "tail_cap": plan.tail_cap,
            "fading": plan.fading.label(),
        },
        "estimates": {
            "mimo": estimate_json(&est.mimo),
            "miso": estimate_json(&est.miso),
            "jensen": estimate_json(&est.jensen),
        },
        "cutset_bound_bits_s": bits(bound_value),
        "checks": checks(&est, bound_value),
        "seed": seed,
        "units": { "capacity": "bits/s", "per_trial_csv": "nats/s" },
        "timestamp": output::timestamp(),
    });
    let json_path = output::out_path(out, "montecarlo_summary.json");
    output::write_json(&json_path, &summary)?;
    Ok((summary, vec![csv_path, json_path]))
}

pub fn parse_fading(s: &str) -> Result<FadingModel, String> {
    FadingModel::from_label(s).ok_or_else(|| format!("unknown fading model `{s}` (rayleigh, uniform_phase)"))
}
