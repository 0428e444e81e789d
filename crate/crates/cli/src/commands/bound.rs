//! Single-point evaluation of every bound output.

use std::f64::consts::LN_2;
use std::path::Path;

use cutset_core::bound::{
    self, case_one_second_order, classify_regime, regime_asymptote, cutset_bound,
    cutset_bound_closed_form, cutset_bound_quadrature, short_long_snr, BoundResult, RegimeCase,
    RegimeLabel, SnrPair, DEFAULT_DEAD_BAND, DEFAULT_THRESHOLD,
};
use cutset_core::{Error, NetworkConfig};
use serde_json::{json, Value};

use crate::error::CliResult;
use crate::output::{self, bits, fmt_float, fmt_opt};

/// Asymptote of the classified regime, leading order; case I also carries
/// the second-order value.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoteValue {
    pub case: RegimeCase,
    pub nats: f64,
    pub second_order_nats: Option<f64>,
}

/// Everything `bound` reports for one configuration. Capacities in nats/s.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundRecord {
    pub config: NetworkConfig,
    pub quadrature: BoundResult,
    pub closed_form: Result<f64, Error>,
    pub asymptote: Result<AsymptoteValue, Error>,
    pub snr: SnrPair,
    pub regime: Result<RegimeLabel, Error>,
}

/// Evaluates all outputs. Only a quadrature failure is fatal; the other
/// outputs report their errors inline. `tol_bits` is an absolute quadrature
/// tolerance in bits/s.
pub fn evaluate(cfg: &NetworkConfig, tol_bits: Option<f64>) -> CliResult<BoundRecord> {
    let quadrature = match tol_bits {
        Some(t) => cutset_bound_quadrature(cfg, t * LN_2)?,
        None => cutset_bound(cfg)?,
    };
    let asymptote = regime_asymptote(cfg).and_then(|a| {
        let case = a.regime.expect("asymptote carries its regime").case;
        let second_order_nats = if case == RegimeCase::BandwidthLimited {
            Some(case_one_second_order(cfg)?)
        } else {
            None
        };
        Ok(AsymptoteValue {
            case,
            nats: a.value,
            second_order_nats,
        })
    });
    Ok(BoundRecord {
        config: *cfg,
        quadrature,
        closed_form: cutset_bound_closed_form(cfg).map(|r| r.value),
        asymptote,
        snr: short_long_snr(cfg)?,
        regime: classify_regime(cfg, DEFAULT_THRESHOLD, DEFAULT_DEAD_BAND),
    })
}

pub fn config_json(cfg: &NetworkConfig) -> Value {
    json!({
        "nu": cfg.density,
        "radius": cfg.radius,
        "power": cfg.power,
        "noise_psd": cfg.noise_psd,
        "bandwidth": cfg.bandwidth,
        "alpha": cfg.alpha,
        "d": cfg.critical_radius,
        "power_over_nw": cfg.snr_parameter(),
    })
}

fn error_json(e: &Error) -> Value {
    let kind = match e {
        Error::ExcludedAlpha { .. } => "excluded_alpha",
        Error::AmbiguousRegime { .. } => "ambiguous_regime",
        _ => "error",
    };
    json!({ kind: e.to_string() })
}

impl BoundRecord {
    pub fn to_json(&self) -> Value {
        let quadrature = json!({
            "bits_s": bits(self.quadrature.value),
            "abs_error_bits_s": self.quadrature.abs_error.map(bits),
        });
        let closed_form = match &self.closed_form {
            Ok(v) => json!({ "bits_s": bits(*v) }),
            Err(e) => error_json(e),
        };
        let asymptote = match &self.asymptote {
            Ok(a) => json!({
                "case": a.case.label(),
                "bits_s": bits(a.nats),
                "second_order_bits_s": a.second_order_nats.map(bits),
            }),
            Err(e) => error_json(e),
        };
        let regime = match &self.regime {
            Ok(r) => json!({ "case": r.case.label(), "s_short": r.s_short, "s_long": r.s_long }),
            Err(e) => {
                let mut v = error_json(e);
                v["s_short"] = json!(self.snr.short_range);
                v["s_long"] = json!(self.snr.long_range);
                v
            }
        };
        json!({
            "config": config_json(&self.config),
            "results": {
                "quadrature": quadrature,
                "closed_form": closed_form,
                "asymptote": asymptote,
                "snr_pair": { "s_short": self.snr.short_range, "s_long": self.snr.long_range },
                "regime": regime,
            },
            "units": { "capacity": "bits/s", "snr": "dimensionless" },
        })
    }

    pub fn regime_label(&self) -> &'static str {
        match &self.regime {
            Ok(r) => r.case.label(),
            Err(_) => "ambiguous",
        }
    }
}

pub const CSV_HEADER: [&str; 13] = [
    "alpha",
    "nu",
    "radius",
    "power_over_nw",
    "bandwidth",
    "d",
    "quadrature_bits_s",
    "closed_form_bits_s",
    "asymptote_case",
    "asymptote_bits_s",
    "s_short",
    "s_long",
    "regime",
];

pub fn csv_row(r: &BoundRecord) -> Vec<String> {
    let c = &r.config;
    vec![
        fmt_float(c.alpha),
        fmt_float(c.density),
        fmt_float(c.radius),
        fmt_float(c.snr_parameter()),
        fmt_float(c.bandwidth),
        fmt_float(c.critical_radius),
        fmt_float(bits(r.quadrature.value)),
        fmt_opt(r.closed_form.as_ref().ok().map(|v| bits(*v))),
        r.asymptote
            .as_ref()
            .map(|a| a.case.label().to_string())
            .unwrap_or_default(),
        fmt_opt(r.asymptote.as_ref().ok().map(|a| bits(a.nats))),
        fmt_float(r.snr.short_range),
        fmt_float(r.snr.long_range),
        r.regime_label().to_string(),
    ]
}

/// Runs `bound`: returns the JSON record and optionally appends a CSV row.
pub fn run(cfg: &NetworkConfig, tol_bits: Option<f64>, csv: Option<&Path>) -> CliResult<Value> {
    let record = evaluate(cfg, tol_bits)?;
    if let Some(path) = csv {
        output::append_csv(path, &CSV_HEADER, &[csv_row(&record)])?;
    }
    let mut v = record.to_json();
    v["command"] = json!("bound");
    v["timestamp"] = json!(output::timestamp());
    Ok(v)
}

/// Regime classification used by figure datasets: threshold 1 with no dead
/// band, so every point gets a label.
pub fn sharp_regime(cfg: &NetworkConfig) -> Option<RegimeCase> {
    bound::classify_regime(cfg, 1.0, 1.0).ok().map(|r| r.case)
}
