//! Continuum percolation experiments on Gilbert disk graphs.
//!
//! Nodes of a Poisson process are joined when their distance is at most the
//! connection distance `x` (closed-ball convention). A connected component
//! reaches a circle or a box boundary when one of its nodes lies within `x/2`
//! of it, which matches the occupied region of the Boolean model with disks
//! of radius `x/2` around every node.
//!
//! Lengths are in meters; `k = x sqrt(nu)` is the dimensionless connection
//! distance and `d` the critical value of `k`.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::ppp::{self, Point, PointSet, Region};
use crate::rng::{self, domain};
use crate::runner::TrialRunner;
use crate::stats::{self, LinearFit};
use crate::unionfind::UnionFind;
use crate::CRITICAL_RADIUS;

/// Calls `f(i, j)` once for every unordered pair `i < j` with
/// `|p_i - p_j| <= x`, using a uniform grid of cells no smaller than `x`.
pub fn for_each_close_pair<F: FnMut(usize, usize)>(points: &[Point], x: f64, mut f: F) {
    let n = points.len();
    if n < 2 || !(x >= 0.0) {
        return;
    }
    let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
    let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        min_x = min_x.min(p.x);
        min_y = min_y.min(p.y);
        max_x = max_x.max(p.x);
        max_y = max_y.max(p.y);
    }
    let extent = (max_x - min_x).max(max_y - min_y);
    // Cells may be larger than x (sparse points, tiny x) but never smaller.
    let max_cells_per_axis = (2.0 * (n as f64).sqrt()).ceil().max(1.0);
    let cell = x.max(extent / max_cells_per_axis).max(f64::MIN_POSITIVE);
    let nx = ((max_x - min_x) / cell) as usize + 1;
    let ny = ((max_y - min_y) / cell) as usize + 1;
    let cell_of = |p: &Point| {
        let cx = (((p.x - min_x) / cell) as usize).min(nx - 1);
        let cy = (((p.y - min_y) / cell) as usize).min(ny - 1);
        cy * nx + cx
    };

    let mut start = vec![0usize; nx * ny + 1];
    let cells: Vec<usize> = points.iter().map(cell_of).collect();
    for &c in &cells {
        start[c + 1] += 1;
    }
    for c in 0..nx * ny {
        start[c + 1] += start[c];
    }
    let mut fill = start.clone();
    let mut order = vec![0usize; n];
    for (i, &c) in cells.iter().enumerate() {
        order[fill[c]] = i;
        fill[c] += 1;
    }

    let x2 = x * x;
    let close = |i: usize, j: usize| points[i].distance_squared(&points[j]) <= x2;
    const FORWARD: [(isize, isize); 4] = [(1, 0), (-1, 1), (0, 1), (1, 1)];
    for cy in 0..ny {
        for cx in 0..nx {
            let here = &order[start[cy * nx + cx]..start[cy * nx + cx + 1]];
            for (a, &i) in here.iter().enumerate() {
                for &j in &here[a + 1..] {
                    if close(i, j) {
                        f(i.min(j), i.max(j));
                    }
                }
            }
            for (dx, dy) in FORWARD {
                let (ox, oy) = (cx as isize + dx, cy as isize + dy);
                if ox < 0 || ox >= nx as isize || oy >= ny as isize {
                    continue;
                }
                let c = oy as usize * nx + ox as usize;
                let there = &order[start[c]..start[c + 1]];
                for &i in here {
                    for &j in there {
                        if close(i, j) {
                            f(i.min(j), i.max(j));
                        }
                    }
                }
            }
        }
    }
}

/// Connected components of the Gilbert graph with connection distance `x`.
pub fn components(points: &[Point], x: f64) -> UnionFind {
    let mut uf = UnionFind::new(points.len());
    for_each_close_pair(points, x, |i, j| {
        uf.union(i, j);
    });
    uf
}

fn check_distance(x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::param("x", "must be finite and > 0"))
    }
}

fn check_density(nu: f64) -> Result<()> {
    if nu.is_finite() && nu >= 0.0 {
        Ok(())
    } else {
        Err(Error::param("nu", "must be finite and >= 0"))
    }
}

fn check_trials(trials: u64) -> Result<()> {
    if trials >= 1 {
        Ok(())
    } else {
        Err(Error::param("trials", "must be >= 1"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GilbertGraph {
    pub points: PointSet,
    pub connection_distance: f64,
    /// Edges `(i, j)` with `i < j`.
    pub edges: Vec<(u32, u32)>,
}

impl GilbertGraph {
    pub fn build(points: PointSet, connection_distance: f64) -> Result<Self> {
        check_distance(connection_distance)?;
        let mut edges = Vec::new();
        for_each_close_pair(&points.points, connection_distance, |i, j| {
            edges.push((i as u32, j as u32))
        });
        edges.sort_unstable();
        Ok(GilbertGraph {
            points,
            connection_distance,
            edges,
        })
    }

    pub fn components(&self) -> UnionFind {
        let mut uf = UnionFind::new(self.points.len());
        for &(i, j) in &self.edges {
            uf.union(i as usize, j as usize);
        }
        uf
    }
}

/// Whether one component touches two sets of nodes, given by predicates.
fn joins<A, B>(uf: &mut UnionFind, points: &[Point], touches_a: A, touches_b: B) -> bool
where
    A: Fn(&Point) -> bool,
    B: Fn(&Point) -> bool,
{
    let mut marked = vec![false; points.len()];
    let mut any = false;
    for (i, p) in points.iter().enumerate() {
        if touches_a(p) {
            let root = uf.find(i);
            marked[root] = true;
            any = true;
        }
    }
    any && points
        .iter()
        .enumerate()
        .any(|(i, p)| touches_b(p) && marked[uf.find(i)])
}

fn annulus_crossing(
    uf: &mut UnionFind,
    points: &[Point],
    center: Point,
    inner_radius: f64,
    outer_radius: f64,
    x: f64,
) -> bool {
    let half = 0.5 * x;
    joins(
        uf,
        points,
        |p| (p.distance(&center) - inner_radius).abs() <= half,
        |p| (p.distance(&center) - outer_radius).abs() <= half,
    )
}

/// True iff a component of `g` touches both the inner and the outer circle
/// (centered on the point set's region).
pub fn has_occupied_crossing(g: &GilbertGraph, inner_radius: f64, outer_radius: f64) -> bool {
    let mut uf = g.components();
    annulus_crossing(
        &mut uf,
        &g.points.points,
        g.points.region.center(),
        inner_radius,
        outer_radius,
        g.connection_distance,
    )
}

/// A Monte Carlo estimate of a probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityEstimate {
    pub probability: f64,
    pub std_error: f64,
    pub successes: u64,
    pub trials: u64,
}

impl ProbabilityEstimate {
    pub fn from_counts(successes: u64, trials: u64) -> Self {
        let p = successes as f64 / trials as f64;
        Self::with_probability(p, successes, trials)
    }

    fn with_probability(p: f64, successes: u64, trials: u64) -> Self {
        ProbabilityEstimate {
            probability: p,
            std_error: (p * (1.0 - p) / trials as f64).sqrt(),
            successes,
            trials,
        }
    }

    /// The estimate of the complementary event.
    pub fn complement(&self) -> Self {
        Self::with_probability(
            1.0 - self.probability,
            self.trials - self.successes,
            self.trials,
        )
    }
}

/// Occupied crossings of the annulus `inner_radius < r < inner_radius + width`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossingExperiment {
    pub nu: f64,
    pub inner_radius: f64,
    pub width: f64,
    pub connection_distance: f64,
    pub trials: u64,
}

impl CrossingExperiment {
    pub fn new(nu: f64, inner_radius: f64, width: f64, connection_distance: f64, trials: u64) -> Result<Self> {
        let exp = CrossingExperiment {
            nu,
            inner_radius,
            width,
            connection_distance,
            trials,
        };
        exp.validate()?;
        Ok(exp)
    }

    pub fn validate(&self) -> Result<()> {
        check_density(self.nu)?;
        if !(self.inner_radius.is_finite() && self.inner_radius > 0.0) {
            return Err(Error::param("radius", "must be finite and > 0"));
        }
        if !(self.width.is_finite() && self.width > 0.0) {
            return Err(Error::param("m", "must be finite and > 0"));
        }
        check_distance(self.connection_distance)?;
        check_trials(self.trials)
    }

    pub fn outer_radius(&self) -> f64 {
        self.inner_radius + self.width
    }

    /// The annulus dilated by `x`, where points are sampled.
    pub fn sampling_region(&self) -> Result<Region> {
        let x = self.connection_distance;
        let outer = self.outer_radius() + x;
        if self.inner_radius > x {
            Region::annulus(Point::ORIGIN, self.inner_radius - x, outer)
        } else {
            Region::disk(Point::ORIGIN, outer)
        }
    }

    /// Whether trial `trial` has an occupied crossing.
    pub fn trial_crosses(&self, seed: u64, trial: u64) -> Result<bool> {
        let ps = ppp::sample_ppp(
            self.sampling_region()?,
            self.nu,
            rng::derive_seed(seed, &[domain::VACANT_LOOP, trial]),
        )?;
        let mut uf = components(&ps.points, self.connection_distance);
        Ok(annulus_crossing(
            &mut uf,
            &ps.points,
            Point::ORIGIN,
            self.inner_radius,
            self.outer_radius(),
            self.connection_distance,
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VacantLoopEstimate {
    /// `1 - crossing`.
    pub vacant: ProbabilityEstimate,
    pub crossing: ProbabilityEstimate,
}

/// Probability that the annulus holds a vacant loop, estimated as one minus
/// the probability of an occupied crossing.
pub fn vacant_loop_probability<T: TrialRunner>(
    exp: &CrossingExperiment,
    seed: u64,
    runner: &T,
) -> Result<VacantLoopEstimate> {
    exp.validate()?;
    let outcomes = runner.map(exp.trials, |t| exp.trial_crosses(seed, t));
    let mut successes = 0;
    for crossed in outcomes {
        successes += crossed? as u64;
    }
    let crossing = ProbabilityEstimate::from_counts(successes, exp.trials);
    Ok(VacantLoopEstimate {
        vacant: crossing.complement(),
        crossing,
    })
}

/// Largest Chebyshev norm reached by the component of a node planted at the
/// origin, with other nodes sampled in `[-half, half]^2`.
fn origin_reach(nu: f64, x: f64, half: f64, seed: u64, trial: u64) -> Result<f64> {
    let ps = ppp::sample_ppp(
        Region::square(half)?,
        nu,
        rng::derive_seed(seed, &[domain::ORIGIN_BOX, trial]),
    )?;
    let mut points = Vec::with_capacity(ps.len() + 1);
    points.push(Point::ORIGIN);
    points.extend_from_slice(&ps.points);
    let mut uf = components(&points, x);
    let root = uf.find(0);
    let mut reach = 0.0f64;
    for (i, p) in points.iter().enumerate() {
        if uf.find(i) == root {
            reach = reach.max(p.x.abs().max(p.y.abs()));
        }
    }
    Ok(reach)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OriginBoxEstimate {
    pub m: f64,
    pub estimate: ProbabilityEstimate,
    /// `x sqrt(nu) >= d`: exponential decay is not expected.
    pub supercritical: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayScan {
    pub points: Vec<OriginBoxEstimate>,
    /// Fit of `ln P` against `m` over the points with `P > 0`.
    pub fit: Option<LinearFit>,
    pub supercritical: bool,
}

/// Probability that the component of a node at the origin reaches the
/// boundary of `[-m, m]^2`, for every `m` in `ms`. Each trial samples one
/// configuration in the box of the largest `m` (plus `x`) and serves every
/// `m`; restricting it to a smaller box gives the same answer.
pub fn decay_scan<T: TrialRunner>(
    nu: f64,
    x: f64,
    ms: &[f64],
    trials: u64,
    seed: u64,
    runner: &T,
) -> Result<DecayScan> {
    check_density(nu)?;
    check_distance(x)?;
    check_trials(trials)?;
    if ms.is_empty() || ms.iter().any(|m| !(m.is_finite() && *m > 0.0)) {
        return Err(Error::param("m", "must be a nonempty list of finite values > 0"));
    }
    let half = ms.iter().cloned().fold(0.0, f64::max) + x;
    let reaches: Vec<f64> = runner
        .map(trials, |t| origin_reach(nu, x, half, seed, t))
        .into_iter()
        .collect::<Result<_>>()?;
    let supercritical = x * nu.sqrt() >= CRITICAL_RADIUS;
    let points: Vec<OriginBoxEstimate> = ms
        .iter()
        .map(|&m| {
            let hits = reaches.iter().filter(|&&r| r >= m - 0.5 * x).count() as u64;
            OriginBoxEstimate {
                m,
                estimate: ProbabilityEstimate::from_counts(hits, trials),
                supercritical,
            }
        })
        .collect();
    let (xs, ys): (Vec<f64>, Vec<f64>) = points
        .iter()
        .filter(|p| p.estimate.probability > 0.0)
        .map(|p| (p.m, p.estimate.probability.ln()))
        .unzip();
    Ok(DecayScan {
        fit: stats::linear_fit(&xs, &ys),
        points,
        supercritical,
    })
}

/// [`decay_scan`] at a single box half-side `m`.
pub fn origin_to_box_probability<T: TrialRunner>(
    nu: f64,
    x: f64,
    m: f64,
    trials: u64,
    seed: u64,
    runner: &T,
) -> Result<OriginBoxEstimate> {
    Ok(decay_scan(nu, x, &[m], trials, seed, runner)?.points[0])
}

fn square_crosses(nu: f64, side: f64, x: f64, seed: u64, trial: u64) -> Result<bool> {
    let region = Region::rect(Point::ORIGIN, Point::new(side, side))?;
    let ps = ppp::sample_ppp(region, nu, rng::derive_seed(seed, &[domain::CROSSING, trial]))?;
    let mut uf = components(&ps.points, x);
    let half = 0.5 * x;
    Ok(joins(
        &mut uf,
        &ps.points,
        |p| p.x <= half,
        |p| p.x >= side - half,
    ))
}

/// Probability of a left-right occupied crossing of `[0, side]^2`.
///
/// Trial `t` uses the same point set for every `x`, so estimates at
/// different `x` are coupled and monotone.
pub fn square_crossing_probability<T: TrialRunner>(
    nu: f64,
    side: f64,
    x: f64,
    trials: u64,
    seed: u64,
    runner: &T,
) -> Result<ProbabilityEstimate> {
    check_density(nu)?;
    check_distance(x)?;
    check_trials(trials)?;
    if !(side.is_finite() && side > 0.0) {
        return Err(Error::param("box_side", "must be finite and > 0"));
    }
    let mut successes = 0;
    for crossed in runner.map(trials, |t| square_crosses(nu, side, x, seed, t)) {
        successes += crossed? as u64;
    }
    Ok(ProbabilityEstimate::from_counts(successes, trials))
}

/// Smallest admissible `box_side sqrt(nu)`.
pub const MIN_SCALED_BOX: f64 = 50.0;
/// Default bracket on `x sqrt(nu)` for the threshold search.
pub const DEFAULT_BRACKET: (f64, f64) = (0.5, 2.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanPoint {
    pub x_scaled: f64,
    pub crossing: ProbabilityEstimate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalRadiusEstimate {
    /// `x_c sqrt(nu)`.
    pub d_estimate: f64,
    /// Final bracket on `x sqrt(nu)`.
    pub low: f64,
    pub high: f64,
    /// Every evaluated point, in evaluation order.
    pub scan: Vec<ScanPoint>,
}

/// Bisection on `x` for the crossing probability 1/2 of a square box, with
/// the default bracket.
pub fn estimate_critical_radius<T: TrialRunner>(
    nu: f64,
    box_side: f64,
    trials: u64,
    tol: f64,
    seed: u64,
    runner: &T,
) -> Result<CriticalRadiusEstimate> {
    estimate_critical_radius_in(nu, box_side, trials, tol, DEFAULT_BRACKET, seed, runner)
}

/// As [`estimate_critical_radius`] with a bracket on `x sqrt(nu)`. `tol` is
/// the final bracket width in meters.
pub fn estimate_critical_radius_in<T: TrialRunner>(
    nu: f64,
    box_side: f64,
    trials: u64,
    tol: f64,
    bracket: (f64, f64),
    seed: u64,
    runner: &T,
) -> Result<CriticalRadiusEstimate> {
    if !(nu.is_finite() && nu > 0.0) {
        return Err(Error::param("nu", "must be finite and > 0"));
    }
    if !(box_side.is_finite() && box_side * nu.sqrt() >= MIN_SCALED_BOX) {
        return Err(Error::param("box_side", "box_side * sqrt(nu) must be >= 50"));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::param("tol", "must be finite and > 0"));
    }
    if !(bracket.0 > 0.0 && bracket.0 < bracket.1 && bracket.1.is_finite()) {
        return Err(Error::param("bracket", "must satisfy 0 < low < high"));
    }
    let scale = nu.sqrt();
    let mut scan = Vec::new();
    let mut eval = |x: f64| -> Result<f64> {
        let p = square_crossing_probability(nu, box_side, x, trials, seed, runner)?;
        scan.push(ScanPoint {
            x_scaled: x * scale,
            crossing: p,
        });
        Ok(p.probability)
    };
    let (mut low, mut high) = (bracket.0 / scale, bracket.1 / scale);
    let (p_low, p_high) = (eval(low)?, eval(high)?);
    if !(p_low < 0.5 && p_high >= 0.5) {
        return Err(Error::NonBracketing {
            low: bracket.0,
            high: bracket.1,
            p_low,
            p_high,
        });
    }
    while high - low > tol {
        let mid = 0.5 * (low + high);
        if eval(mid)? >= 0.5 {
            high = mid;
        } else {
            low = mid;
        }
    }
    Ok(CriticalRadiusEstimate {
        d_estimate: 0.5 * (low + high) * scale,
        low: low * scale,
        high: high * scale,
        scan,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::runner::Sequential;

    fn graph(points: Vec<Point>, x: f64) -> GilbertGraph {
        let region = Region::disk(Point::ORIGIN, 100.0).unwrap();
        GilbertGraph::build(PointSet::new(points, region, 1.0), x).unwrap()
    }

    #[test]
    fn empty_graph_never_crosses() {
        assert!(!has_occupied_crossing(&graph(vec![], 1.0), 10.0, 20.0));
    }

    #[test]
    fn single_edge_crossing() {
        let g = graph(vec![Point::new(10.0, 0.0), Point::new(10.8, 0.0)], 1.0);
        assert_eq!(g.edges, vec![(0, 1)]);
        assert!(has_occupied_crossing(&g, 10.0, 10.8));
    }

    #[test]
    fn radial_chain_with_and_without_gap() {
        let x = 1.0;
        let chain: Vec<Point> = (0..13).map(|i| Point::new(10.0 + 0.9 * x * i as f64, 0.0)).collect();
        assert!(has_occupied_crossing(&graph(chain.clone(), x), 10.0, 20.0));
        let gapped: Vec<Point> = chain
            .iter()
            .map(|p| if p.x > 15.0 { Point::new(p.x + 0.6 * x, 0.0) } else { *p })
            .collect();
        assert!(!has_occupied_crossing(&graph(gapped, x), 10.0, 20.0));
    }

    #[test]
    fn closed_ball_edges() {
        let g = graph(vec![Point::ORIGIN, Point::new(0.0, 2.0)], 2.0);
        assert_eq!(g.edges.len(), 1);
        assert!(GilbertGraph::build(g.points.clone(), 0.0).is_err());
    }

    #[test]
    fn vacant_loop_empty_process() {
        let exp = CrossingExperiment::new(0.0, 50.0, 5.0, 1.0, 20).unwrap();
        let est = vacant_loop_probability(&exp, 4, &Sequential).unwrap();
        assert_eq!(est.vacant.probability, 1.0);
        assert_eq!(est.crossing.probability, 0.0);
    }

    #[test]
    fn vacant_loop_dense_large_x() {
        let exp = CrossingExperiment::new(1.0, 10.0, 1.0, 5.0, 20).unwrap();
        let est = vacant_loop_probability(&exp, 4, &Sequential).unwrap();
        assert_eq!(est.vacant.probability, 0.0);
    }

    #[test]
    fn origin_box_edge_cases() {
        let none = origin_to_box_probability(0.0, 1.0, 3.0, 50, 1, &Sequential).unwrap();
        assert_eq!(none.estimate.probability, 0.0);
        let tiny = origin_to_box_probability(1.0, 1.0, 0.4, 50, 1, &Sequential).unwrap();
        assert_eq!(tiny.estimate.probability, 1.0);
        assert!(!tiny.supercritical);
        let sup = origin_to_box_probability(1.0, 1.3, 2.0, 5, 1, &Sequential).unwrap();
        assert!(sup.supercritical);
    }

    #[test]
    fn threshold_preconditions() {
        assert!(estimate_critical_radius(1.0, 40.0, 10, 0.01, 0, &Sequential).is_err());
        assert!(estimate_critical_radius(1.0, 60.0, 10, 0.0, 0, &Sequential).is_err());
        let r = estimate_critical_radius_in(1.0, 60.0, 10, 0.1, (1.5, 2.0), 0, &Sequential);
        assert!(matches!(r, Err(Error::NonBracketing { .. })), "{r:?}");
    }
}
