//! Monte Carlo validation of the bound chain.
//!
//! For a sampled network the expected cut-set capacity is bounded in three
//! steps: the MIMO capacity `W ln det(I + (P/NW) H H^*)` of the cut, the sum of
//! per-receiver MISO capacities (Hadamard), and the fading-free geometric
//! bound `W sum_i ln(1 + (P/NW) sum_j r_ij^-alpha)` (Jensen). The estimator
//! samples nodes in the disk (with the empty strip) as receivers and nodes in
//! a truncated exterior annulus as transmitters.
//!
//! All capacities are in nats per second.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::config::NetworkConfig;
use crate::error::{Error, Result};
use crate::linalg::{self, HermitianMatrix};
use crate::ppp::{self, Point, PointSet, Region};
use crate::quad;
use crate::rng::{self, domain};
use crate::runner::TrialRunner;
use crate::stats::Accumulator;

/// Default cap on the analytic tail fraction dropped by truncation.
pub const DEFAULT_TAIL_CAP: f64 = 1e-3;

/// Distribution of the fading coefficients `h_ij`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FadingModel {
    /// Circularly symmetric complex Gaussian with `E|h|^2 = 1`.
    Rayleigh,
    /// `h = e^{i theta}` with `theta` uniform.
    UniformPhase,
}

impl FadingModel {
    pub fn label(&self) -> &'static str {
        match self {
            FadingModel::Rayleigh => "rayleigh",
            FadingModel::UniformPhase => "uniform_phase",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        match label {
            "rayleigh" => Some(FadingModel::Rayleigh),
            "uniform_phase" | "uniform-phase" => Some(FadingModel::UniformPhase),
            _ => None,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Complex64 {
        loop {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            match self {
                FadingModel::Rayleigh => {
                    return Complex64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2)
                }
                FadingModel::UniformPhase => {
                    // A normalized isotropic Gaussian has a uniform phase.
                    let norm = re.hypot(im);
                    if norm > 0.0 {
                        return Complex64::new(re / norm, im / norm);
                    }
                }
            }
        }
    }
}

/// Channel gains `H_ij = r_ij^(-alpha/2) h_ij` from transmitter `j` to
/// receiver `i`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelMatrix {
    pub gains: Vec<Complex64>,
    pub tx_positions: Vec<Point>,
    pub rx_positions: Vec<Point>,
    pub alpha: f64,
}

impl ChannelMatrix {
    pub fn rows(&self) -> usize {
        self.rx_positions.len()
    }

    pub fn cols(&self) -> usize {
        self.tx_positions.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.gains[i * self.cols() + j]
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 2.0 {
        Ok(())
    } else {
        Err(Error::param("alpha", "must be finite and > 2"))
    }
}

/// `r^(-alpha/2)` for every (receiver, transmitter) pair, row-major.
fn path_amplitudes(tx: &[Point], rx: &[Point], alpha: f64) -> Result<Vec<f64>> {
    let e = -0.25 * alpha;
    let mut out = Vec::with_capacity(tx.len() * rx.len());
    for r in rx {
        for t in tx {
            let d2 = r.distance_squared(t);
            if d2 == 0.0 {
                return Err(Error::DegenerateGeometry);
            }
            out.push(d2.powf(e));
        }
    }
    Ok(out)
}

/// `sum_j r_ij^-alpha` for each receiver `i`.
fn row_path_power(tx: &[Point], rx: &[Point], alpha: f64) -> Result<Vec<f64>> {
    let e = -0.5 * alpha;
    rx.iter()
        .map(|r| {
            let mut acc = 0.0;
            for t in tx {
                let d2 = r.distance_squared(t);
                if d2 == 0.0 {
                    return Err(Error::DegenerateGeometry);
                }
                acc += d2.powf(e);
            }
            Ok(acc)
        })
        .collect()
}

fn fill_gains<R: Rng + ?Sized>(
    amplitudes: &[f64],
    fading: FadingModel,
    rng: &mut R,
    out: &mut Vec<Complex64>,
) {
    out.clear();
    out.extend(amplitudes.iter().map(|&a| fading.sample(rng) * a));
}

/// Draws one channel realization for fixed positions.
pub fn build_channel(
    tx: &PointSet,
    rx: &PointSet,
    alpha: f64,
    fading: FadingModel,
    seed: u64,
) -> Result<ChannelMatrix> {
    check_alpha(alpha)?;
    let amplitudes = path_amplitudes(&tx.points, &rx.points, alpha)?;
    let mut gains = Vec::with_capacity(amplitudes.len());
    fill_gains(&amplitudes, fading, &mut rng::stream(seed, &[]), &mut gains);
    Ok(ChannelMatrix {
        gains,
        tx_positions: tx.points.clone(),
        rx_positions: rx.points.clone(),
        alpha,
    })
}

/// MIMO and MISO-sum capacity (both in nats/s) of one draw at each SNR level.
///
/// The MIMO log-determinant is taken on the smaller Gram matrix. The result
/// satisfies `mimo <= miso` exactly: on `H H^*` every `LDL^H` pivot is bounded
/// by the matching MISO term, and in the rare case that the `H^* H` form
/// rounds the other way the `H H^*` form is used instead.
fn draw_capacities(
    gains: &[Complex64],
    rows: usize,
    cols: usize,
    levels: &[f64],
    bandwidth: f64,
) -> Result<Vec<(f64, f64)>> {
    if rows == 0 || cols == 0 {
        return Ok(vec![(0.0, 0.0); levels.len()]);
    }
    let outer_terms = |g: &HermitianMatrix, c: f64| -> Result<(f64, f64)> {
        let pivots = linalg::ldl_pivots(g, c)?;
        let mut mimo = 0.0;
        let mut miso = 0.0;
        for (i, d) in pivots.iter().enumerate() {
            mimo += d.ln();
            miso += (1.0 + c * g.diag(i)).ln();
        }
        Ok((bandwidth * mimo, bandwidth * miso))
    };
    if rows <= cols {
        let g = HermitianMatrix::outer_gram(gains, rows, cols);
        return levels.iter().map(|&c| outer_terms(&g, c)).collect();
    }
    let g = HermitianMatrix::inner_gram(gains, rows, cols);
    let row_norms: Vec<f64> = gains
        .chunks_exact(cols)
        .map(|row| row.iter().map(|z| z.norm_sqr()).sum())
        .collect();
    let mut outer: Option<HermitianMatrix> = None;
    levels
        .iter()
        .map(|&c| {
            let mimo = bandwidth * linalg::log_det_identity_plus(&g, c)?;
            let miso = bandwidth * row_norms.iter().map(|&n| (1.0 + c * n).ln()).sum::<f64>();
            if mimo <= miso {
                Ok((mimo, miso))
            } else {
                let g = outer.get_or_insert_with(|| HermitianMatrix::outer_gram(gains, rows, cols));
                outer_terms(g, c)
            }
        })
        .collect()
}

/// `W ln det(I + (P/NW) H H^*)` in nats/s.
pub fn mimo_capacity(ch: &ChannelMatrix, cfg: &NetworkConfig) -> Result<f64> {
    cfg.validate()?;
    let caps = draw_capacities(
        &ch.gains,
        ch.rows(),
        ch.cols(),
        &[cfg.snr_parameter()],
        cfg.bandwidth,
    )?;
    Ok(caps[0].0)
}

/// `W sum_i ln(1 + (P/NW) sum_j |H_ij|^2)` in nats/s.
pub fn miso_sum_capacity(ch: &ChannelMatrix, cfg: &NetworkConfig) -> Result<f64> {
    cfg.validate()?;
    let c = cfg.snr_parameter();
    let cols = ch.cols();
    if cols == 0 {
        return Ok(0.0);
    }
    let sum: f64 = ch
        .gains
        .chunks_exact(cols)
        .map(|row| (1.0 + c * row.iter().map(|z| z.norm_sqr()).sum::<f64>()).ln())
        .sum();
    Ok(cfg.bandwidth * sum)
}

fn jensen_from_row_power(row_power: &[f64], c: f64, bandwidth: f64) -> f64 {
    bandwidth * row_power.iter().map(|&p| (1.0 + c * p).ln()).sum::<f64>()
}

/// `W sum_i ln(1 + (P/NW) sum_j r_ij^-alpha)` in nats/s.
pub fn jensen_geometry_bound(tx: &PointSet, rx: &PointSet, cfg: &NetworkConfig) -> Result<f64> {
    cfg.validate()?;
    let power = row_path_power(&tx.points, &rx.points, cfg.alpha)?;
    Ok(jensen_from_row_power(&power, cfg.snr_parameter(), cfg.bandwidth))
}

/// `Q = (P/NW) sum_j r_j^-alpha` at one receiver.
pub fn received_snr(rx: Point, tx: &PointSet, cfg: &NetworkConfig) -> Result<f64> {
    cfg.validate()?;
    let power = row_path_power(&tx.points, &[rx], cfg.alpha)?;
    Ok(cfg.snr_parameter() * power[0])
}

/// Expected `Q` at `rx` for Poisson transmitters of density `nu` in an
/// annulus (or disk), by Campbell's theorem:
/// `(P/NW) nu int int t (t^2 + a^2 - 2 a t cos theta)^(-alpha/2) dtheta dt`.
///
/// The receiver must lie strictly outside the region.
pub fn campbell_mean_snr(rx: Point, region: &Region, cfg: &NetworkConfig) -> Result<f64> {
    cfg.validate()?;
    let (center, inner, outer) = match *region {
        Region::Annulus {
            center,
            inner_radius,
            outer_radius,
        } => (center, inner_radius, outer_radius),
        Region::Disk { center, radius } => (center, 0.0, radius),
        Region::Rect { .. } => {
            return Err(Error::param("region", "must be a disk or an annulus"))
        }
    };
    let a = rx.distance(&center);
    if a >= inner && a <= outer {
        return Err(Error::param("rx", "must lie outside the transmitter region"));
    }
    let half_alpha = 0.5 * cfg.alpha;
    let theta_breaks = [0.0, 0.05, 0.1, 0.2, 0.4, 0.8, 1.6, PI];
    let inner_opts = quad::Options {
        abs_tol: 0.0,
        rel_tol: 1e-12,
        ..quad::Options::default()
    };
    let mut failure = None;
    let radial = |t: f64| -> f64 {
        let angular = quad::integrate(
            |th| (t * t + a * a - 2.0 * a * t * th.cos()).powf(-half_alpha),
            &theta_breaks,
            inner_opts,
        );
        match angular {
            Ok(v) => 2.0 * t * v.value,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        }
    };
    let lo = if inner > 0.0 { inner } else { 0.0 };
    let mut breaks = if lo > 0.0 {
        quad::geometric_breakpoints(lo, outer, 4)
    } else {
        vec![0.0, outer]
    };
    if a > lo && a < outer {
        breaks.push(a);
        breaks.sort_by(|x, y| x.partial_cmp(y).unwrap());
    }
    let value = quad::integrate(
        radial,
        &breaks,
        quad::Options {
            abs_tol: 0.0,
            rel_tol: 1e-10,
            ..quad::Options::default()
        },
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(cfg.snr_parameter() * cfg.density * value?.value)
}

/// Fraction of the SNR integral beyond the truncation radius `T` that the
/// truncated exterior drops: `(R/T)^(alpha-2)`.
pub fn truncation_tail_fraction(cfg: &NetworkConfig, truncation_radius: f64) -> f64 {
    (cfg.radius / truncation_radius).powf(cfg.alpha - 2.0)
}

/// Sampling plan of [`estimate_expected_cutset`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloPlan {
    pub trials: u64,
    pub fading_draws: u64,
    /// Outer radius of the sampled exterior annulus, m.
    pub truncation_radius: f64,
    /// Largest acceptable [`truncation_tail_fraction`].
    pub tail_cap: f64,
    pub fading: FadingModel,
    /// Keep one [`DrawRecord`] per (trial, draw).
    pub keep_records: bool,
}

impl MonteCarloPlan {
    pub fn new(trials: u64, fading_draws: u64, truncation_radius: f64) -> Self {
        MonteCarloPlan {
            trials,
            fading_draws,
            truncation_radius,
            tail_cap: DEFAULT_TAIL_CAP,
            fading: FadingModel::Rayleigh,
            keep_records: false,
        }
    }

    pub fn validate(&self, cfg: &NetworkConfig) -> Result<()> {
        cfg.validate()?;
        if self.trials == 0 {
            return Err(Error::param("trials", "must be >= 1"));
        }
        if self.fading_draws == 0 {
            return Err(Error::param("draws", "must be >= 1"));
        }
        if !(self.truncation_radius.is_finite() && self.truncation_radius > cfg.radius) {
            return Err(Error::param("truncation", "must be finite and > radius"));
        }
        if !(self.tail_cap > 0.0 && self.tail_cap < 1.0) {
            return Err(Error::param("tail_cap", "must lie in (0, 1)"));
        }
        let fraction = truncation_tail_fraction(cfg, self.truncation_radius);
        if fraction > self.tail_cap {
            return Err(Error::TruncationTooSmall {
                fraction,
                cap: self.tail_cap,
            });
        }
        Ok(())
    }
}

/// A Monte Carlo mean in nats/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityEstimate {
    pub mean: f64,
    pub std_error: f64,
    /// Number of independent network realizations behind the estimate.
    pub trials: u64,
}

impl CapacityEstimate {
    pub const UNITS: &'static str = "nats/s";
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrawRecord {
    pub trial: u64,
    pub draw: u64,
    pub mimo: f64,
    pub miso: f64,
    /// Fading-free bound of the trial's geometry (repeated on every draw).
    pub jensen: f64,
}

/// The three estimates of [`estimate_expected_cutset`] at one SNR level.
#[derive(Debug, Clone, PartialEq)]
pub struct CutsetEstimate {
    pub snr_parameter: f64,
    pub mimo: CapacityEstimate,
    pub miso: CapacityEstimate,
    pub jensen: CapacityEstimate,
    /// Draws with `mimo > miso`; always zero unless something is broken.
    pub hadamard_violations: u64,
    pub records: Vec<DrawRecord>,
}

struct TrialOutcome {
    jensen: Vec<f64>,
    /// `draws[draw][level] = (mimo, miso)`.
    draws: Vec<Vec<(f64, f64)>>,
}

/// Transmitters and receivers of one trial.
pub fn sample_trial_geometry(
    cfg: &NetworkConfig,
    truncation_radius: f64,
    seed: u64,
    trial: u64,
) -> Result<(PointSet, PointSet)> {
    let disk = Region::disk(Point::ORIGIN, cfg.radius)?;
    let inside = ppp::sample_ppp(disk, cfg.density, rng::derive_seed(seed, &[domain::DISK, trial]))?;
    let rx = ppp::enforce_empty_strip(&inside, cfg.radius, cfg.inner_limit())?;
    let exterior = Region::annulus(Point::ORIGIN, cfg.radius, truncation_radius)?;
    let tx = ppp::sample_ppp(
        exterior,
        cfg.density,
        rng::derive_seed(seed, &[domain::EXTERIOR, trial]),
    )?;
    Ok((tx, rx))
}

fn run_trial(
    cfg: &NetworkConfig,
    levels: &[f64],
    plan: &MonteCarloPlan,
    seed: u64,
    trial: u64,
) -> Result<TrialOutcome> {
    let (tx, rx) = sample_trial_geometry(cfg, plan.truncation_radius, seed, trial)?;
    let power = row_path_power(&tx.points, &rx.points, cfg.alpha)?;
    let jensen = levels
        .iter()
        .map(|&c| jensen_from_row_power(&power, c, cfg.bandwidth))
        .collect();
    let amplitudes = path_amplitudes(&tx.points, &rx.points, cfg.alpha)?;
    let mut gains = Vec::with_capacity(amplitudes.len());
    let mut draws = Vec::with_capacity(plan.fading_draws as usize);
    for draw in 0..plan.fading_draws {
        let mut rng = rng::stream(seed, &[domain::FADING, trial, draw]);
        fill_gains(&amplitudes, plan.fading, &mut rng, &mut gains);
        draws.push(draw_capacities(
            &gains,
            rx.len(),
            tx.len(),
            levels,
            cfg.bandwidth,
        )?);
    }
    Ok(TrialOutcome { jensen, draws })
}

fn estimate_from(acc_trials: &Accumulator, acc_draws: &Accumulator, trials: u64) -> CapacityEstimate {
    // Draws within a trial share a geometry, so the spread of the per-trial
    // means is the honest error; a single trial falls back to its draws.
    let std_error = if trials >= 2 {
        acc_trials.std_error()
    } else {
        acc_draws.std_error()
    };
    CapacityEstimate {
        mean: acc_draws.mean(),
        std_error,
        trials,
    }
}

/// Monte Carlo estimates of the expected MIMO, MISO-sum and Jensen bounds at
/// several SNR parameters `P/(NW)`, sharing geometry and fading draws.
/// The `power` of `cfg` is ignored.
pub fn estimate_expected_cutset_levels<T: TrialRunner>(
    cfg: &NetworkConfig,
    levels: &[f64],
    plan: &MonteCarloPlan,
    seed: u64,
    runner: &T,
) -> Result<Vec<CutsetEstimate>> {
    plan.validate(cfg)?;
    if levels.iter().any(|c| !(c.is_finite() && *c >= 0.0)) {
        return Err(Error::param("power-over-nw", "must be finite and >= 0"));
    }
    let outcomes = runner.map(plan.trials, |t| run_trial(cfg, levels, plan, seed, t));
    let outcomes: Vec<TrialOutcome> = outcomes.into_iter().collect::<Result<_>>()?;

    let mut estimates = Vec::with_capacity(levels.len());
    for (l, &c) in levels.iter().enumerate() {
        let mut mimo_trials = Accumulator::new();
        let mut miso_trials = Accumulator::new();
        let mut jensen_trials = Accumulator::new();
        let mut mimo_draws = Accumulator::new();
        let mut miso_draws = Accumulator::new();
        let mut violations = 0;
        let mut records = Vec::new();
        for (t, outcome) in outcomes.iter().enumerate() {
            let jensen = outcome.jensen[l];
            jensen_trials.push(jensen);
            let mut mimo_t = Accumulator::new();
            let mut miso_t = Accumulator::new();
            for (d, caps) in outcome.draws.iter().enumerate() {
                let (mimo, miso) = caps[l];
                if mimo > miso {
                    violations += 1;
                }
                mimo_t.push(mimo);
                miso_t.push(miso);
                mimo_draws.push(mimo);
                miso_draws.push(miso);
                if plan.keep_records {
                    records.push(DrawRecord {
                        trial: t as u64,
                        draw: d as u64,
                        mimo,
                        miso,
                        jensen,
                    });
                }
            }
            mimo_trials.push(mimo_t.mean());
            miso_trials.push(miso_t.mean());
        }
        estimates.push(CutsetEstimate {
            snr_parameter: c,
            mimo: estimate_from(&mimo_trials, &mimo_draws, plan.trials),
            miso: estimate_from(&miso_trials, &miso_draws, plan.trials),
            jensen: CapacityEstimate {
                mean: jensen_trials.mean(),
                std_error: jensen_trials.std_error(),
                trials: plan.trials,
            },
            hadamard_violations: violations,
            records,
        });
    }
    Ok(estimates)
}

/// Monte Carlo estimate of the expected cut-set bound chain at `cfg`.
pub fn estimate_expected_cutset<T: TrialRunner>(
    cfg: &NetworkConfig,
    plan: &MonteCarloPlan,
    seed: u64,
    runner: &T,
) -> Result<CutsetEstimate> {
    let mut all = estimate_expected_cutset_levels(cfg, &[cfg.snr_parameter()], plan, seed, runner)?;
    Ok(all.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runner::Sequential;

    fn single(p: Point) -> PointSet {
        PointSet::new(vec![p], Region::disk(Point::ORIGIN, 100.0).unwrap(), 1.0)
    }

    fn cfg(snr: f64, alpha: f64) -> NetworkConfig {
        NetworkConfig::from_snr_parameter(1.0, 5.0, snr, 1e3, alpha).unwrap()
    }

    #[test]
    fn uniform_phase_gain_magnitude() {
        let ch = build_channel(
            &single(Point::new(3.0, 0.0)),
            &single(Point::ORIGIN),
            4.0,
            FadingModel::UniformPhase,
            9,
        )
        .unwrap();
        assert!((ch.get(0, 0).norm() * 9.0 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn scalar_channel_capacities() {
        let c = cfg(2.0, 4.0);
        let (tx, rx) = (single(Point::new(0.0, 2.0)), single(Point::ORIGIN));
        let ch = build_channel(&tx, &rx, 4.0, FadingModel::UniformPhase, 1).unwrap();
        let expected = 1e3 * (1.0 + 2.0 / 16.0f64).ln();
        let mimo = mimo_capacity(&ch, &c).unwrap();
        let miso = miso_sum_capacity(&ch, &c).unwrap();
        let jensen = jensen_geometry_bound(&tx, &rx, &c).unwrap();
        assert!((mimo - expected).abs() < 1e-12 * expected);
        assert_eq!(mimo, miso);
        assert!((jensen - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn zero_power_is_zero() {
        let c = cfg(0.0, 4.0);
        let tx = PointSet::new(
            vec![Point::new(6.0, 0.0), Point::new(0.0, 7.0)],
            Region::annulus(Point::ORIGIN, 5.0, 10.0).unwrap(),
            1.0,
        );
        let rx = PointSet::new(
            vec![Point::new(1.0, 0.0), Point::ORIGIN, Point::new(0.0, -2.0)],
            Region::disk(Point::ORIGIN, 5.0).unwrap(),
            1.0,
        );
        let ch = build_channel(&tx, &rx, 4.0, FadingModel::Rayleigh, 3).unwrap();
        assert_eq!(mimo_capacity(&ch, &c).unwrap(), 0.0);
        assert_eq!(miso_sum_capacity(&ch, &c).unwrap(), 0.0);
        assert_eq!(jensen_geometry_bound(&tx, &rx, &c).unwrap(), 0.0);
    }

    #[test]
    fn coincident_points_are_degenerate() {
        let p = single(Point::new(1.0, 1.0));
        assert_eq!(
            build_channel(&p, &p, 4.0, FadingModel::Rayleigh, 0).unwrap_err(),
            Error::DegenerateGeometry
        );
        assert_eq!(
            jensen_geometry_bound(&p, &p, &cfg(1.0, 4.0)).unwrap_err(),
            Error::DegenerateGeometry
        );
    }

    #[test]
    fn received_snr_examples() {
        let c = cfg(1.0, 4.0);
        let empty = PointSet::new(vec![], Region::disk(Point::ORIGIN, 1.0).unwrap(), 1.0);
        assert_eq!(received_snr(Point::ORIGIN, &empty, &c).unwrap(), 0.0);
        let one = single(Point::new(1.0, 0.0));
        assert_eq!(received_snr(Point::ORIGIN, &one, &c).unwrap(), 1.0);
    }

    #[test]
    fn campbell_at_center_matches_radial_formula() {
        let c = cfg(1.0, 4.0);
        let region = Region::annulus(Point::ORIGIN, 5.0, 20.0).unwrap();
        let v = campbell_mean_snr(Point::ORIGIN, &region, &c).unwrap();
        let exact = 2.0 * PI / 2.0 * (5f64.powi(-2) - 20f64.powi(-2));
        assert!((v - exact).abs() < 1e-10 * exact);
        assert!(campbell_mean_snr(Point::new(7.0, 0.0), &region, &c).is_err());
    }

    #[test]
    fn truncation_cap_is_enforced() {
        let c = cfg(1.0, 4.0);
        assert!((truncation_tail_fraction(&c, 50.0) - 0.01).abs() < 1e-15);
        let plan = MonteCarloPlan::new(1, 1, 50.0);
        assert!(matches!(
            estimate_expected_cutset(&c, &plan, 0, &Sequential),
            Err(Error::TruncationTooSmall { .. })
        ));
        let plan = MonteCarloPlan::new(1, 1, 4.0);
        assert!(estimate_expected_cutset(&c, &plan, 0, &Sequential).is_err());
    }

    #[test]
    fn estimator_orders_and_is_deterministic() {
        let c = cfg(1.0, 4.0);
        let plan = MonteCarloPlan {
            tail_cap: 0.1,
            keep_records: true,
            ..MonteCarloPlan::new(3, 4, 20.0)
        };
        let a = estimate_expected_cutset(&c, &plan, 11, &Sequential).unwrap();
        let b = estimate_expected_cutset(&c, &plan, 11, &Sequential).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.hadamard_violations, 0);
        assert_eq!(a.records.len(), 12);
        assert!(a.records.iter().all(|r| r.mimo <= r.miso));
        assert!(a.mimo.mean <= a.miso.mean);
        let zero = estimate_expected_cutset(&c.with_snr_parameter(0.0), &plan, 11, &Sequential)
            .unwrap();
        assert_eq!((zero.mimo.mean, zero.miso.mean, zero.jensen.mean), (0.0, 0.0, 0.0));
    }
}
