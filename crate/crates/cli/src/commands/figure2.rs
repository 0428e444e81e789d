//! The `figure2` dataset: bound, regime asymptotes and the two SNRs over a
//! log grid of `P/(NW)`.

use std::path::{Path, PathBuf};

use cutset_core::bound::{
    asymptote_for_case, case_one_second_order, cutset_bound, short_long_snr,
    snr_parameter_for_long_range, RegimeCase,
};
use cutset_core::NetworkConfig;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::commands::bound::{config_json, sharp_regime};
use crate::error::{CliError, CliResult};
use crate::output::{self, bits, fmt_float, fmt_opt};

pub const DEFAULT_POINTS_PER_DECADE: usize = 60;

pub const CSV_HEADER: [&str; 7] = [
    "p_over_nw",
    "bound_bits_s",
    "asymptote_case",
    "asymptote_bits_s",
    "s_long",
    "s_short",
    "regime",
];

pub const ASYMPTOTES_HEADER: [&str; 3] = ["p_over_nw", "asymptote_case", "asymptote_bits_s"];

/// Default `P/(NW)` range: `1e-4 .. 1e4` for `alpha < 3`, else `1e-4 .. 1e8`.
pub fn default_range(alpha: f64) -> (f64, f64) {
    if alpha < 3.0 {
        (1e-4, 1e4)
    } else {
        (1e-4, 1e8)
    }
}

/// `points_per_decade` log-spaced points per decade from `min` to `max`.
pub fn log_grid(min: f64, max: f64, points_per_decade: usize) -> CliResult<Vec<f64>> {
    if !(min > 0.0 && max > min && max.is_finite()) {
        return Err(CliError::validation("figure2 grid needs 0 < min < max"));
    }
    if points_per_decade == 0 {
        return Err(CliError::validation("points per decade must be >= 1"));
    }
    let (lo, hi) = (min.log10(), max.log10());
    let n = ((hi - lo) * points_per_decade as f64 - 1e-9).ceil() as usize;
    Ok((0..=n)
        .map(|i| {
            if i == n {
                max
            } else {
                10f64.powf(lo + i as f64 / points_per_decade as f64)
            }
        })
        .collect())
}

/// Cases whose asymptote applies at this `alpha`.
pub fn applicable_cases(alpha: f64) -> Vec<RegimeCase> {
    if (alpha - 3.0).abs() <= cutset_core::bound::ALPHA3_TOLERANCE {
        vec![RegimeCase::BandwidthLimited, RegimeCase::BoundaryAlpha3]
    } else if alpha < 3.0 {
        vec![RegimeCase::BandwidthLimited, RegimeCase::PowerLimitedSublinear]
    } else {
        vec![
            RegimeCase::BandwidthLimited,
            RegimeCase::PowerAndBandwidthLimited,
            RegimeCase::PowerLimited,
        ]
    }
}

/// Case I uses the second-order form, as plotted.
fn plotted_asymptote(cfg: &NetworkConfig, case: RegimeCase) -> CliResult<f64> {
    Ok(if case == RegimeCase::BandwidthLimited {
        case_one_second_order(cfg)?
    } else {
        asymptote_for_case(cfg, case)?
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure2Row {
    pub p_over_nw: f64,
    pub bound_nats: f64,
    pub regime: Option<RegimeCase>,
    pub asymptote_nats: Option<f64>,
    pub s_long: f64,
    pub s_short: f64,
    /// `(case, value)` for every applicable case with a positive value.
    pub all_asymptotes: Vec<(RegimeCase, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub from: RegimeCase,
    pub to: RegimeCase,
    /// Last grid point in `from` and first in `to`.
    pub below: f64,
    pub above: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure2 {
    pub base: NetworkConfig,
    pub canonical: bool,
    pub rows: Vec<Figure2Row>,
}

/// True for the published parameters: `nu = 1`, `R = 100`, `W = 1e3`,
/// `d = 1.198` and `alpha` in {2.5, 4}.
pub fn is_canonical(cfg: &NetworkConfig) -> bool {
    cfg.density == 1.0
        && cfg.radius == 100.0
        && cfg.bandwidth == 1e3
        && cfg.critical_radius == cutset_core::CRITICAL_RADIUS
        && (cfg.alpha == 2.5 || cfg.alpha == 4.0)
}

pub fn compute(base: &NetworkConfig, grid: &[f64]) -> CliResult<Figure2> {
    let cases = applicable_cases(base.alpha);
    let rows = grid
        .par_iter()
        .map(|&p| -> CliResult<Figure2Row> {
            let cfg = base.with_snr_parameter(p);
            let snr = short_long_snr(&cfg)?;
            let regime = sharp_regime(&cfg);
            let asymptote_nats = match regime {
                Some(case) => Some(plotted_asymptote(&cfg, case)?),
                None => None,
            };
            let mut all_asymptotes = Vec::new();
            for &case in &cases {
                let v = plotted_asymptote(&cfg, case)?;
                if v > 0.0 {
                    all_asymptotes.push((case, v));
                }
            }
            Ok(Figure2Row {
                p_over_nw: p,
                bound_nats: cutset_bound(&cfg)?.value,
                regime,
                asymptote_nats,
                s_long: snr.long_range,
                s_short: snr.short_range,
                all_asymptotes,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Figure2 {
        base: *base,
        canonical: is_canonical(base),
        rows,
    })
}

impl Figure2 {
    /// Regimes in grid order with repeats collapsed.
    pub fn regime_sequence(&self) -> Vec<RegimeCase> {
        let mut seq: Vec<RegimeCase> = Vec::new();
        for r in self.rows.iter().filter_map(|r| r.regime) {
            if seq.last() != Some(&r) {
                seq.push(r);
            }
        }
        seq
    }

    pub fn transitions(&self) -> Vec<Transition> {
        let labeled: Vec<(f64, RegimeCase)> = self
            .rows
            .iter()
            .filter_map(|r| r.regime.map(|c| (r.p_over_nw, c)))
            .collect();
        labeled
            .windows(2)
            .filter(|w| w[0].1 != w[1].1)
            .map(|w| Transition {
                from: w[0].1,
                to: w[1].1,
                below: w[0].0,
                above: w[1].0,
            })
            .collect()
    }

    /// Log-log slope of the bound between grid points `i` and `j`.
    pub fn slope(&self, i: usize, j: usize) -> f64 {
        let (a, b) = (&self.rows[i], &self.rows[j]);
        (b.bound_nats.ln() - a.bound_nats.ln()) / (b.p_over_nw.ln() - a.p_over_nw.ln())
    }

    pub fn csv_rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    fmt_float(r.p_over_nw),
                    fmt_float(bits(r.bound_nats)),
                    r.regime.map(|c| c.label().to_string()).unwrap_or_default(),
                    fmt_opt(r.asymptote_nats.map(bits)),
                    fmt_float(r.s_long),
                    fmt_float(r.s_short),
                    r.regime.map(|c| c.label().to_string()).unwrap_or_else(|| "ambiguous".into()),
                ]
            })
            .collect()
    }

    pub fn asymptote_rows(&self) -> Vec<Vec<String>> {
        let mut rows = Vec::new();
        for case in applicable_cases(self.base.alpha) {
            for r in &self.rows {
                if let Some(&(_, v)) = r.all_asymptotes.iter().find(|(c, _)| *c == case) {
                    rows.push(vec![
                        fmt_float(r.p_over_nw),
                        case.label().to_string(),
                        fmt_float(bits(v)),
                    ]);
                }
            }
        }
        rows
    }

    pub fn summary(&self) -> Value {
        let n = self.rows.len();
        json!({
            "command": "figure2",
            "config": config_json(&self.base),
            "canonical": self.canonical,
            "grid_points": n,
            "grid_min": self.rows.first().map(|r| r.p_over_nw),
            "grid_max": self.rows.last().map(|r| r.p_over_nw),
            "regime_classifier": { "threshold": 1.0, "dead_band": 1.0 },
            "regime_sequence": self.regime_sequence().iter().map(|c| c.label()).collect::<Vec<_>>(),
            "transitions": self.transitions().iter().map(|t| json!({
                "from": t.from.label(),
                "to": t.to.label(),
                "p_over_nw_below": t.below,
                "p_over_nw_above": t.above,
            })).collect::<Vec<_>>(),
            "s_long_unit_p_over_nw": snr_parameter_for_long_range(&self.base, 1.0),
            "slope_low_end": if n >= 2 { Some(self.slope(0, 1)) } else { None },
            "slope_high_end": if n >= 2 { Some(self.slope(n - 2, n - 1)) } else { None },
            "units": { "capacity": "bits/s", "snr": "dimensionless" },
            "timestamp": output::timestamp(),
        })
    }
}

fn alpha_tag(alpha: f64) -> String {
    format!("{alpha}").replace('.', "p")
}

pub fn run(base: &NetworkConfig, grid: &[f64], out: &Path) -> CliResult<(Value, Vec<PathBuf>)> {
    let fig = compute(base, grid)?;
    output::ensure_dir(out)?;
    let tag = alpha_tag(base.alpha);
    let main = output::out_path(out, &format!("figure2_alpha{tag}.csv"));
    output::write_csv(&main, &CSV_HEADER, &fig.csv_rows())?;
    let dashed = output::out_path(out, &format!("figure2_alpha{tag}_asymptotes.csv"));
    output::write_csv(&dashed, &ASYMPTOTES_HEADER, &fig.asymptote_rows())?;
    let summary = fig.summary();
    let json_path = output::out_path(out, &format!("figure2_alpha{tag}.json"));
    output::write_json(&json_path, &summary)?;
    Ok((summary, vec![main, dashed, json_path]))
}
