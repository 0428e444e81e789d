//! The analytic cut-set bound.
//!
//! For a circular cut of radius `R` with an empty strip of width `d/sqrt(nu)`
//! the expected cut-set capacity is bounded by
//!
//! ```text
//! C = 2 pi nu W int_{d/sqrt(nu)}^{R} ln(1 + s_r) (R - r) dr,
//! s_r = 2 pi nu r^(2-alpha) / (alpha - 2) * P / (N W)
//! ```
//!
//! in nats per second. This module evaluates `C` by adaptive quadrature and
//! in closed form, evaluates the five asymptotic forms and classifies the
//! operating regime from the short- and long-range SNRs.

use core::f64::consts::PI;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::config::NetworkConfig;
use crate::error::{Error, Result};
use crate::quad;
use crate::specfun;

/// Default regime threshold on `s`.
pub const DEFAULT_THRESHOLD: f64 = 1.0;
/// Default multiplicative dead band around the threshold.
pub const DEFAULT_DEAD_BAND: f64 = 10.0;
/// Relative tolerance of the default quadrature, applied to a scale estimate.
pub const DEFAULT_RELATIVE_TOLERANCE: f64 = 1e-9;
/// `|alpha - 3|` below which the alpha = 3 boundary forms apply.
pub const ALPHA3_TOLERANCE: f64 = 1e-9;

const BREAKPOINTS_PER_DECADE: usize = 4;

/// `A = 2 pi nu / (alpha - 2) * P/(NW)`, so that `s_r = A r^(2 - alpha)`.
pub fn snr_coefficient(cfg: &NetworkConfig) -> f64 {
    2.0 * PI * cfg.density / (cfg.alpha - 2.0) * cfg.snr_parameter()
}

/// Upper bound `s_r` on the expected SNR received from all nodes at range at
/// least `r`.
pub fn snr_profile(cfg: &NetworkConfig, r: f64) -> Result<f64> {
    cfg.validate()?;
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::param("r", "must be finite and > 0"));
    }
    Ok(snr_coefficient(cfg) * r.powf(2.0 - cfg.alpha))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrPair {
    /// `s` at `r = d/sqrt(nu)`.
    pub short_range: f64,
    /// `s` at `r = R`.
    pub long_range: f64,
}

pub fn short_long_snr(cfg: &NetworkConfig) -> Result<SnrPair> {
    Ok(SnrPair {
        short_range: snr_profile(cfg, cfg.inner_limit())?,
        long_range: snr_profile(cfg, cfg.radius)?,
    })
}

/// The `P/(NW)` at which the long-range SNR equals `s_long`.
pub fn snr_parameter_for_long_range(cfg: &NetworkConfig, s_long: f64) -> f64 {
    s_long * (cfg.alpha - 2.0) * cfg.radius.powf(cfg.alpha - 2.0) / (2.0 * PI * cfg.density)
}

/// Operating regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegimeCase {
    /// (I) `s_R` large: linear in `n`, bandwidth-limited.
    BandwidthLimited,
    /// (II) `s_R` small, `alpha < 3`: power-limited, sub-linear in `n`.
    PowerLimitedSublinear,
    /// (III) `s_R` small, `alpha > 3`, `s_{d/sqrt(nu)}` large.
    PowerAndBandwidthLimited,
    /// (IV) `s_R` and `s_{d/sqrt(nu)}` small, `alpha > 3`.
    PowerLimited,
    /// `s_R` small at exactly `alpha = 3`.
    BoundaryAlpha3,
}

impl RegimeCase {
    pub const ALL: [RegimeCase; 5] = [
        RegimeCase::BandwidthLimited,
        RegimeCase::PowerLimitedSublinear,
        RegimeCase::BoundaryAlpha3,
        RegimeCase::PowerAndBandwidthLimited,
        RegimeCase::PowerLimited,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            RegimeCase::BandwidthLimited => "I",
            RegimeCase::PowerLimitedSublinear => "II",
            RegimeCase::PowerAndBandwidthLimited => "III",
            RegimeCase::PowerLimited => "IV",
            RegimeCase::BoundaryAlpha3 => "alpha3",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.label() == label)
    }
}

impl fmt::Display for RegimeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeLabel {
    pub case: RegimeCase,
    pub s_long: f64,
    pub s_short: f64,
}

fn is_alpha3(alpha: f64) -> bool {
    (alpha - 3.0).abs() <= ALPHA3_TOLERANCE
}

/// Classifies the regime from `(s_short, s_long)`.
///
/// A value counts as large above `threshold * dead_band` and small below
/// `threshold / dead_band`; anything in between is reported as ambiguous
/// rather than guessed.
pub fn classify_regime(cfg: &NetworkConfig, threshold: f64, dead_band: f64) -> Result<RegimeLabel> {
    if !(threshold.is_finite() && threshold > 0.0) {
        return Err(Error::param("threshold", "must be finite and > 0"));
    }
    if !(dead_band.is_finite() && dead_band >= 1.0) {
        return Err(Error::param("dead_band", "must be finite and >= 1"));
    }
    let snr = short_long_snr(cfg)?;
    let (high, low) = (threshold * dead_band, threshold / dead_band);
    let label = |case| RegimeLabel {
        case,
        s_long: snr.long_range,
        s_short: snr.short_range,
    };
    let ambiguous = |first, second| Error::AmbiguousRegime {
        first,
        second,
        s_short: snr.short_range,
        s_long: snr.long_range,
    };

    if snr.long_range > high {
        return Ok(label(RegimeCase::BandwidthLimited));
    }
    let small_long_case = if cfg.alpha < 3.0 && !is_alpha3(cfg.alpha) {
        Some(RegimeCase::PowerLimitedSublinear)
    } else if is_alpha3(cfg.alpha) {
        Some(RegimeCase::BoundaryAlpha3)
    } else {
        None
    };
    let alpha_gt3_case = || {
        if snr.short_range > high {
            Ok(RegimeCase::PowerAndBandwidthLimited)
        } else if snr.short_range < low {
            Ok(RegimeCase::PowerLimited)
        } else {
            Err(ambiguous(
                RegimeCase::PowerAndBandwidthLimited,
                RegimeCase::PowerLimited,
            ))
        }
    };
    if snr.long_range >= low {
        let other = match small_long_case {
            Some(case) => case,
            None => alpha_gt3_case().unwrap_or(RegimeCase::PowerAndBandwidthLimited),
        };
        return Err(ambiguous(RegimeCase::BandwidthLimited, other));
    }
    match small_long_case {
        Some(case) => Ok(label(case)),
        None => alpha_gt3_case().map(label),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Quadrature,
    ClosedForm,
    Asymptote,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::ClosedForm => "closed_form",
            Method::Asymptote => "asymptote",
        }
    }
}

/// A value of the cut-set bound in nats per second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult {
    pub value: f64,
    pub method: Method,
    /// Regime under the default threshold and dead band; `None` when ambiguous.
    pub regime: Option<RegimeLabel>,
    /// Estimated absolute error (quadrature only), nats/s.
    pub abs_error: Option<f64>,
}

fn default_regime(cfg: &NetworkConfig) -> Option<RegimeLabel> {
    classify_regime(cfg, DEFAULT_THRESHOLD, DEFAULT_DEAD_BAND).ok()
}

/// The integrand `ln(1 + s_r) (R - r)`.
pub fn cutset_integrand(cfg: &NetworkConfig, r: f64) -> f64 {
    (snr_coefficient(cfg) * r.powf(2.0 - cfg.alpha)).ln_1p() * (cfg.radius - r)
}

fn prefactor(cfg: &NetworkConfig) -> f64 {
    2.0 * PI * cfg.density * cfg.bandwidth
}

fn integrate_cutset(cfg: &NetworkConfig, opts: quad::Options) -> Result<quad::Integral> {
    let breaks =
        quad::geometric_breakpoints(cfg.inner_limit(), cfg.radius, BREAKPOINTS_PER_DECADE);
    let a = snr_coefficient(cfg);
    let (alpha, big_r) = (cfg.alpha, cfg.radius);
    quad::integrate(
        |r| (a * r.powf(2.0 - alpha)).ln_1p() * (big_r - r),
        &breaks,
        opts,
    )
}

/// The bound by adaptive quadrature with estimated absolute error at most
/// `abs_tol` nats/s.
pub fn cutset_bound_quadrature(cfg: &NetworkConfig, abs_tol: f64) -> Result<BoundResult> {
    cfg.validate()?;
    if !(abs_tol.is_finite() && abs_tol > 0.0) {
        return Err(Error::param("abs_tol", "must be finite and > 0"));
    }
    let scale = prefactor(cfg);
    let opts = quad::Options {
        abs_tol: abs_tol / scale,
        rel_tol: 0.0,
        ..quad::Options::default()
    };
    let integral = integrate_cutset(cfg, opts).map_err(|e| match e {
        Error::QuadratureNonConvergence {
            estimate,
            error_estimate,
            intervals,
        } => Error::QuadratureNonConvergence {
            estimate: estimate * scale,
            error_estimate: error_estimate * scale,
            intervals,
        },
        other => other,
    })?;
    Ok(BoundResult {
        value: scale * integral.value,
        method: Method::Quadrature,
        regime: default_regime(cfg),
        abs_error: Some(scale * integral.abs_error),
    })
}

/// The bound by quadrature with the default tolerance
/// [`DEFAULT_RELATIVE_TOLERANCE`] times a coarse scale estimate.
pub fn cutset_bound(cfg: &NetworkConfig) -> Result<BoundResult> {
    cfg.validate()?;
    let coarse = integrate_cutset(
        cfg,
        quad::Options {
            abs_tol: 0.0,
            rel_tol: 1e-4,
            ..quad::Options::default()
        },
    )?;
    let scale = prefactor(cfg) * coarse.value.abs();
    if scale == 0.0 {
        return Ok(BoundResult {
            value: 0.0,
            method: Method::Quadrature,
            regime: default_regime(cfg),
            abs_error: Some(0.0),
        });
    }
    cutset_bound_quadrature(cfg, DEFAULT_RELATIVE_TOLERANCE * scale)
}

/// The bound from the closed-form antiderivative,
/// `2 pi nu W (I_R - I_{d/sqrt(nu)})`. Fails with
/// [`Error::ExcludedAlpha`] near the excluded exponents; there is no silent
/// fallback to quadrature.
pub fn cutset_bound_closed_form(cfg: &NetworkConfig) -> Result<BoundResult> {
    let integral = specfun::definite_integral(cfg, cfg.inner_limit(), cfg.radius)?;
    Ok(BoundResult {
        value: prefactor(cfg) * integral,
        method: Method::ClosedForm,
        regime: default_regime(cfg),
        abs_error: None,
    })
}

/// `K1 = 4 pi^2 / ((alpha-2)(3-alpha)(4-alpha))`.
pub fn k1(alpha: f64) -> f64 {
    4.0 * PI * PI / ((alpha - 2.0) * (3.0 - alpha) * (4.0 - alpha))
}

/// `K2 = (2 pi)^((alpha-1)/(alpha-2)) / (alpha-2)^(1/(alpha-2)) * pi / sin(pi/(alpha-2))`.
pub fn k2(alpha: f64) -> f64 {
    let b = 1.0 / (alpha - 2.0);
    (2.0 * PI).powf((alpha - 1.0) * b) / (alpha - 2.0).powf(b) * PI / (PI * b).sin()
}

/// `K3 = 4 pi^2 d^(3-alpha) / ((alpha-2)(alpha-3))`.
pub fn k3(alpha: f64, d: f64) -> f64 {
    4.0 * PI * PI * d.powf(3.0 - alpha) / ((alpha - 2.0) * (alpha - 3.0))
}

/// The asymptotic form of one regime, in nats/s, regardless of whether the
/// configuration actually sits in that regime. Fails only when the form is
/// undefined for the configuration's `alpha`.
pub fn asymptote_for_case(cfg: &NetworkConfig, case: RegimeCase) -> Result<f64> {
    cfg.validate()?;
    let (nu, r, w, alpha) = (cfg.density, cfg.radius, cfg.bandwidth, cfg.alpha);
    let p_over_n = cfg.power_over_noise();
    match case {
        RegimeCase::BandwidthLimited => {
            let s_long = snr_profile(cfg, r)?;
            Ok(PI * nu * r * r * w * s_long.ln())
        }
        RegimeCase::PowerLimitedSublinear => {
            if !(alpha < 3.0) || is_alpha3(alpha) {
                return Err(Error::param("alpha", "case II needs alpha < 3"));
            }
            Ok(k1(alpha) * nu * nu * r.powf(4.0 - alpha) * p_over_n)
        }
        RegimeCase::BoundaryAlpha3 => {
            if !is_alpha3(alpha) {
                return Err(Error::param("alpha", "boundary case needs alpha = 3"));
            }
            Ok(4.0 * PI * PI * nu * nu * r * r.ln() * p_over_n)
        }
        RegimeCase::PowerAndBandwidthLimited => {
            if !(alpha > 3.0) || is_alpha3(alpha) {
                return Err(Error::param("alpha", "case III needs alpha > 3"));
            }
            let b = 1.0 / (alpha - 2.0);
            Ok(k2(alpha)
                * nu.powf((alpha - 1.0) * b)
                * r
                * p_over_n.powf(b)
                * w.powf((alpha - 3.0) * b))
        }
        RegimeCase::PowerLimited => {
            if !(alpha > 3.0) || is_alpha3(alpha) {
                return Err(Error::param("alpha", "case IV needs alpha > 3"));
            }
            Ok(k3(alpha, cfg.critical_radius) * nu.powf(0.5 * (1.0 + alpha)) * r * p_over_n)
        }
    }
}

/// Case (I) including the second-order constant:
/// `pi nu R^2 W (ln s_R + 3 (alpha - 2) / 2)`.
pub fn case_one_second_order(cfg: &NetworkConfig) -> Result<f64> {
    let s_long = snr_profile(cfg, cfg.radius)?;
    Ok(PI * cfg.density * cfg.radius * cfg.radius * cfg.bandwidth
        * (s_long.ln() + 1.5 * (cfg.alpha - 2.0)))
}

/// The asymptotic bound of the regime the configuration falls in (default
/// threshold and dead band).
pub fn regime_asymptote(cfg: &NetworkConfig) -> Result<BoundResult> {
    let regime = classify_regime(cfg, DEFAULT_THRESHOLD, DEFAULT_DEAD_BAND)?;
    Ok(BoundResult {
        value: asymptote_for_case(cfg, regime.case)?,
        method: Method::Asymptote,
        regime: Some(regime),
        abs_error: None,
    })
}
