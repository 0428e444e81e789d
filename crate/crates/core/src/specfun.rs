//! The hypergeometric family
//!
//! ```text
//! g_k(x) = 2F1(1, -b; 1 - b; -x),   b = k / (alpha - 2),   k in {1, 2}
//! ```
//!
//! and the closed-form antiderivative `I_r` of the cut-set integrand
//! `ln(1 + s_r) (R - r)`.
//!
//! Three representations are used:
//!
//! * direct series `g_k(x) = b sum_n (-x)^n / (b - n)` for `x <= 0.5`;
//! * for `x > 0.5` the split `g_k(x) = C_k x^b + h_k(x)` with
//!   `C_k = b pi / sin(b pi)` and the remainder
//!   `h_k(x) = b int_0^1 u^b / (u + x) du`, evaluated either by the
//!   Pfaff-transformed series in `1/(1+x)` (all terms positive) for
//!   `0.5 < x < 2`, or by the large-argument series
//!   `(b/x) sum_n (-1/x)^n / (b + n + 1)` for `x >= 2`.
//!
//! `g_k` has poles where `b` is a positive integer (through `C_k`); the
//! closed form refuses any `alpha` within [`POLE_GUARD`] of such a value.

use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::bound::snr_coefficient;
use crate::config::NetworkConfig;
use crate::error::{Error, Result};

/// Half-width (in alpha) of the refused window around each excluded alpha.
pub const POLE_GUARD: f64 = 1e-3;
/// Largest argument evaluated by the direct series.
pub const SERIES_LIMIT: f64 = 0.5;
/// Smallest argument evaluated by the large-argument form.
pub const LARGE_ARGUMENT: f64 = 2.0;
/// `s_r` at which the antiderivative switches from the `g_k` form to the
/// remainder form.
pub const ANTIDERIVATIVE_SWITCH: f64 = 1.0;

const EPS: f64 = 1e-17;
const MAX_TERMS: usize = 1_000_000;

/// `(k, alpha)` for one member of the family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams {
    k: u8,
    alpha: f64,
}

impl HypParams {
    pub fn new(k: u8, alpha: f64) -> Result<Self> {
        if k != 1 && k != 2 {
            return Err(Error::param("k", "must be 1 or 2"));
        }
        if !(alpha.is_finite() && alpha > 2.0) {
            return Err(Error::param("alpha", "must be finite and > 2"));
        }
        Ok(HypParams { k, alpha })
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `b = k / (alpha - 2)`.
    pub fn exponent(&self) -> f64 {
        self.k as f64 / (self.alpha - 2.0)
    }

    /// `C_k = b pi / sin(b pi)`, the coefficient of `x^b` in the large-`x`
    /// expansion. Infinite at the poles.
    pub fn reflection_coefficient(&self) -> f64 {
        let b = self.exponent();
        b * PI / (b * PI).sin()
    }

    pub fn is_excluded(&self) -> bool {
        excluded_for(self.k, self.alpha)
    }
}

fn excluded_for(k: u8, alpha: f64) -> bool {
    let b = k as f64 / (alpha - 2.0);
    [b.floor(), b.ceil()]
        .into_iter()
        .filter(|&n| n >= 1.0)
        .any(|n| (alpha - (2.0 + k as f64 / n)).abs() <= POLE_GUARD)
}

/// True when `alpha` lies within [`POLE_GUARD`] of a value where `1/(alpha-2)`
/// or `2/(alpha-2)` is a positive integer (alpha = 3, 4, 2.5, 2.667, ...).
pub fn is_excluded_alpha(alpha: f64) -> bool {
    excluded_for(1, alpha) || excluded_for(2, alpha)
}

/// Evaluation path for `g_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    /// Power series around 0, `|x| < 1`.
    Series,
    /// Pfaff transform, series in `1/(1+x)`, any `x > 0`.
    Pfaff,
    /// Linear transformation to `1/x`, `x > 1`.
    LargeArgument,
}

impl Representation {
    pub fn preferred(x: f64) -> Self {
        if x <= SERIES_LIMIT {
            Representation::Series
        } else if x < LARGE_ARGUMENT {
            Representation::Pfaff
        } else {
            Representation::LargeArgument
        }
    }

    fn converges_at(self, x: f64) -> bool {
        match self {
            Representation::Series => x < 1.0,
            Representation::Pfaff => x > 0.0,
            Representation::LargeArgument => x > 1.0,
        }
    }
}

/// `sum_{n>=1} b (-x)^n / (b - n)`, i.e. `g_k(x) - 1`, for `0 <= x < 1`.
fn series_tail(b: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let mut sum = 0.0;
    let mut power = 1.0;
    for n in 1..MAX_TERMS {
        power *= -x;
        let term = b * power / (b - n as f64);
        sum += term;
        if n as f64 > b + 1.0 && term.abs() <= EPS * sum.abs() {
            break;
        }
    }
    sum
}

/// Remainder `h(x) = b sum_n y^n B(b+1, n+1) / (1 + x)`, `y = 1/(1+x)`.
fn pfaff_remainder(b: f64, x: f64) -> f64 {
    let y = 1.0 / (1.0 + x);
    let mut term = 1.0 / (b + 1.0);
    let mut sum = term;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (nf + 1.0) / (nf + b + 2.0) * y;
        sum += term;
        if term <= EPS * sum {
            break;
        }
    }
    b * y * sum
}

/// Remainder `h(x) = (b/x) sum_n (-1/x)^n / (b + n + 1)`, `x > 1`.
fn large_argument_remainder(b: f64, x: f64) -> f64 {
    let z = -1.0 / x;
    let mut power = 1.0;
    let mut sum = 0.0;
    for n in 0..MAX_TERMS {
        let term = power / (b + n as f64 + 1.0);
        sum += term;
        if term.abs() <= EPS * sum.abs() {
            break;
        }
        power *= z;
    }
    b / x * sum
}

fn check_argument(x: f64) -> Result<()> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::param("x", "must be finite and >= 0"));
    }
    Ok(())
}

/// `g_k(x) - C_k x^b`. Pole-free for the Pfaff and large-argument paths.
fn remainder_with(params: &HypParams, x: f64, repr: Representation) -> f64 {
    let b = params.exponent();
    match repr {
        Representation::Series => {
            1.0 + series_tail(b, x) - params.reflection_coefficient() * x.powf(b)
        }
        Representation::Pfaff => pfaff_remainder(b, x),
        Representation::LargeArgument => large_argument_remainder(b, x),
    }
}

/// `g_k(x)` through an explicitly chosen representation.
///
/// Fails if `x` is outside the representation's region of convergence or
/// `alpha` is excluded.
pub fn hyp2f1_gk_via(params: &HypParams, x: f64, repr: Representation) -> Result<f64> {
    check_argument(x)?;
    if params.is_excluded() {
        return Err(Error::ExcludedAlpha {
            alpha: params.alpha,
            guard: POLE_GUARD,
        });
    }
    if x == 0.0 {
        return Ok(1.0);
    }
    if !repr.converges_at(x) {
        return Err(Error::param(
            "x",
            "outside the convergence region of the requested representation",
        ));
    }
    Ok(match repr {
        Representation::Series => 1.0 + series_tail(params.exponent(), x),
        _ => {
            remainder_with(params, x, repr)
                + params.reflection_coefficient() * x.powf(params.exponent())
        }
    })
}

/// `g_k(x) = 2F1(1, -k/(alpha-2); 1 - k/(alpha-2); -x)` for `x >= 0`.
pub fn hyp2f1_gk(params: &HypParams, x: f64) -> Result<f64> {
    hyp2f1_gk_via(params, x, Representation::preferred(x))
}

/// `h_k(x) = g_k(x) - C_k x^b = b int_0^1 u^b / (u + x) du`.
///
/// Finite for every alpha > 2, but the series path (`x <= 0.5`) loses
/// accuracy close to the excluded alphas.
pub fn gk_remainder(params: &HypParams, x: f64) -> Result<f64> {
    check_argument(x)?;
    if x == 0.0 {
        return Ok(1.0);
    }
    Ok(remainder_with(params, x, Representation::preferred(x)))
}

/// `1 - g_k(x)` without cancellation for small `x` (`x <= 1`).
fn one_minus_gk(params: &HypParams, x: f64) -> f64 {
    if x <= SERIES_LIMIT {
        -series_tail(params.exponent(), x)
    } else {
        1.0 - pfaff_remainder(params.exponent(), x)
            - params.reflection_coefficient() * x.powf(params.exponent())
    }
}

/// `1 - h_k(x)` for `x >= 1`.
fn one_minus_remainder(params: &HypParams, x: f64) -> f64 {
    let b = params.exponent();
    if x < LARGE_ARGUMENT {
        1.0 - pfaff_remainder(b, x)
    } else {
        1.0 - large_argument_remainder(b, x)
    }
}

/// The antiderivative `I_r` split as `local + offset`.
///
/// `offset` is an r-independent constant (either 0 or the constant `K` of
/// the large-`s` form), so for two radii whose offsets coincide the
/// difference of the `local` parts is the exact definite integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Antiderivative {
    pub local: f64,
    pub offset: f64,
}

impl Antiderivative {
    pub fn value(&self) -> f64 {
        self.local + self.offset
    }

    /// `self - earlier`, subtracting like parts first.
    pub fn minus(&self, earlier: &Antiderivative) -> f64 {
        (self.local - earlier.local) + (self.offset - earlier.offset)
    }
}

fn closed_form_params(cfg: &NetworkConfig) -> Result<(HypParams, HypParams)> {
    cfg.validate()?;
    if is_excluded_alpha(cfg.alpha) {
        return Err(Error::ExcludedAlpha {
            alpha: cfg.alpha,
            guard: POLE_GUARD,
        });
    }
    Ok((HypParams::new(1, cfg.alpha)?, HypParams::new(2, cfg.alpha)?))
}

fn antiderivative_unchecked(
    cfg: &NetworkConfig,
    g1: &HypParams,
    g2: &HypParams,
    r: f64,
) -> Antiderivative {
    let a = snr_coefficient(cfg);
    let big_r = cfg.radius;
    let scale = cfg.alpha - 2.0;
    let s = a * r.powf(2.0 - cfg.alpha);
    let log_term = s.ln_1p() * (big_r - 0.5 * r) * r;
    if s <= ANTIDERIVATIVE_SWITCH {
        let local = log_term
            + scale * r * (big_r * one_minus_gk(g1, s) - 0.25 * r * one_minus_gk(g2, s));
        Antiderivative { local, offset: 0.0 }
    } else {
        let local = log_term
            + scale
                * r
                * (big_r * one_minus_remainder(g1, s) - 0.25 * r * one_minus_remainder(g2, s));
        let offset = -scale
            * (big_r * g1.reflection_coefficient() * a.powf(g1.exponent())
                - 0.25 * g2.reflection_coefficient() * a.powf(g2.exponent()));
        Antiderivative { local, offset }
    }
}

/// `I_r` at any `r > 0`, as a (local, offset) pair.
pub fn antiderivative(cfg: &NetworkConfig, r: f64) -> Result<Antiderivative> {
    let (g1, g2) = closed_form_params(cfg)?;
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::param("r", "must be finite and > 0"));
    }
    Ok(antiderivative_unchecked(cfg, &g1, &g2, r))
}

/// The closed-form antiderivative
///
/// ```text
/// I_r = ln(1+s_r)(R - r/2) r + (alpha-2)(R - r/4) r
///       - (alpha-2)(R g_1(s_r) - (r/4) g_2(s_r)) r
/// ```
///
/// for `d/sqrt(nu) <= r <= R`.
pub fn closed_form_ir(cfg: &NetworkConfig, r: f64) -> Result<f64> {
    let (g1, g2) = closed_form_params(cfg)?;
    let slack = 1e-12 * cfg.radius;
    if !(r.is_finite() && r >= cfg.inner_limit() - slack && r <= cfg.radius + slack) {
        return Err(Error::param("r", "must lie in [d/sqrt(nu), R]"));
    }
    Ok(antiderivative_unchecked(cfg, &g1, &g2, r).value())
}

/// `int_a^b ln(1 + s_t) (R - t) dt` from the closed form, `0 < a <= b`.
pub fn definite_integral(cfg: &NetworkConfig, a: f64, b: f64) -> Result<f64> {
    let (g1, g2) = closed_form_params(cfg)?;
    if !(a.is_finite() && b.is_finite() && a > 0.0 && b >= a) {
        return Err(Error::param("limits", "need 0 < a <= b"));
    }
    let lo = antiderivative_unchecked(cfg, &g1, &g2, a);
    let hi = antiderivative_unchecked(cfg, &g1, &g2, b);
    Ok(hi.minus(&lo))
}
