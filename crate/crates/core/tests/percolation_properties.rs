use std::collections::VecDeque;

use cutset_core::percolation::{
    components, has_occupied_crossing, square_crossing_probability, vacant_loop_probability,
    CrossingExperiment, GilbertGraph,
};
use cutset_core::ppp::{sample_ppp, Point, PointSet, Region};
use cutset_core::runner::Sequential;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Brute-force crossing test: BFS over the O(n^2) adjacency from every node
/// touching the inner circle.
fn bfs_crossing(points: &[Point], x: f64, inner: f64, outer: f64) -> bool {
    let n = points.len();
    let touches = |p: &Point, r: f64| (p.norm() - r).abs() <= x / 2.0;
    let mut seen = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| touches(&points[i], inner)).collect();
    for &i in &queue {
        seen[i] = true;
    }
    while let Some(i) = queue.pop_front() {
        if touches(&points[i], outer) {
            return true;
        }
        for j in 0..n {
            if !seen[j] && points[i].distance(&points[j]) <= x {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    false
}

fn brute_edges(points: &[Point], x: f64) -> Vec<(u32, u32)> {
    let mut edges = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i].distance(&points[j]) <= x {
                edges.push((i as u32, j as u32));
            }
        }
    }
    edges
}

#[test]
fn union_find_agrees_with_bfs_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut crossings = 0;
    for seed in 0..300 {
        let inner = rng.random_range(1.0..6.0);
        let width = rng.random_range(0.5..4.0);
        let x = rng.random_range(0.3..2.0);
        let nu = rng.random_range(0.2..3.0);
        let region = Region::disk(Point::ORIGIN, inner + width + x).unwrap();
        let ps = sample_ppp(region, nu, seed).unwrap();
        let want = bfs_crossing(&ps.points, x, inner, inner + width);
        let g = GilbertGraph::build(ps.clone(), x).unwrap();
        assert_eq!(g.edges, brute_edges(&ps.points, x), "seed {seed}");
        assert_eq!(has_occupied_crossing(&g, inner, inner + width), want, "seed {seed}");
        crossings += want as u32;
    }
    assert!(crossings > 30 && crossings < 270, "fixtures too one-sided: {crossings}");
}

#[test]
fn grid_handles_degenerate_layouts() {
    // All points on one line, clustered, or far apart with a tiny x.
    let line: Vec<Point> = (0..200).map(|i| Point::new(i as f64 * 0.1, 0.0)).collect();
    assert_eq!(brute_edges(&line, 0.25).len(), {
        let mut n = 0;
        cutset_core::percolation::for_each_close_pair(&line, 0.25, |_, _| n += 1);
        n
    });
    let far = vec![Point::new(0.0, 0.0), Point::new(1e6, 1e6), Point::new(1e6, 1e6 + 1e-9)];
    let mut uf = components(&far, 1e-6);
    assert!(uf.connected(1, 2));
    assert!(!uf.connected(0, 1));
}

#[test]
fn crossing_is_monotone_in_x_on_fixed_points() {
    for seed in 0..100 {
        let region = Region::disk(Point::ORIGIN, 12.0).unwrap();
        let ps = sample_ppp(region, 1.0, seed).unwrap();
        let mut prev = false;
        for x in [0.6, 0.8, 1.0, 1.1, 1.2, 1.3, 1.5, 2.0] {
            let now = has_occupied_crossing(&GilbertGraph::build(ps.clone(), x).unwrap(), 4.0, 10.0);
            assert!(now || !prev, "seed {seed}: lost crossing at x = {x}");
            prev = now;
        }
    }
}

#[test]
fn square_crossing_is_monotone_in_x_per_seed() {
    for seed in 0..40 {
        let mut prev = 0.0;
        for k in [0.9, 1.0, 1.1, 1.15, 1.2, 1.25, 1.3, 1.5] {
            let p = square_crossing_probability(1.0, 30.0, k, 1, seed, &Sequential)
                .unwrap()
                .probability;
            assert!(p >= prev, "seed {seed}, k = {k}");
            prev = p;
        }
    }
}

#[test]
fn crossing_is_monotone_in_density_under_superposition() {
    let region = Region::disk(Point::ORIGIN, 12.0).unwrap();
    for seed in 0..100 {
        let mut points = sample_ppp(region, 0.6, seed).unwrap().points;
        let mut prev = false;
        for extra in 0..5u64 {
            let now = has_occupied_crossing(
                &GilbertGraph::build(PointSet::new(points.clone(), region, 1.0), 1.2).unwrap(),
                4.0,
                10.0,
            );
            assert!(now || !prev, "seed {seed}: lost crossing after adding points");
            prev = now;
            points.extend(sample_ppp(region, 0.15, 10_000 * (seed + 1) + extra).unwrap().points);
        }
    }
}

#[test]
fn vacant_and_crossing_are_complementary() {
    for (nu, x, seed) in [(1.0, 1.0, 1), (1.0, 1.2, 2), (0.5, 1.8, 3), (2.0, 0.6, 4)] {
        let exp = CrossingExperiment::new(nu, 8.0, 3.0, x, 37).unwrap();
        let est = vacant_loop_probability(&exp, seed, &Sequential).unwrap();
        assert_eq!(est.vacant.probability + est.crossing.probability, 1.0);
        assert_eq!(est.vacant.successes + est.crossing.successes, 37);
    }
}

#[test]
fn vacant_loop_is_nondecreasing_along_a_ladder() {
    // k = 0.9 d, width growing like delta * ln(R sqrt(nu)).
    let x = 0.9 * 1.198;
    let delta = 12.0;
    let estimates: Vec<_> = [25.0f64, 50.0, 100.0]
        .iter()
        .map(|&r| {
            let exp = CrossingExperiment::new(1.0, r, delta * r.ln(), x, 200).unwrap();
            vacant_loop_probability(&exp, 31, &Sequential).unwrap().vacant
        })
        .collect();
    for w in estimates.windows(2) {
        let slack = 3.0 * (w[0].std_error.powi(2) + w[1].std_error.powi(2)).sqrt();
        assert!(w[1].probability >= w[0].probability - slack, "{estimates:?}");
    }
}

#[test]
fn threshold_bracket_sanity() {
    let low = square_crossing_probability(1.0, 200.0, 0.5, 50, 3, &Sequential).unwrap();
    let high = square_crossing_probability(1.0, 200.0, 2.0, 50, 3, &Sequential).unwrap();
    assert!(low.probability < 0.05, "{low:?}");
    assert!(high.probability > 0.95, "{high:?}");
}

#[test]
fn larger_box_moves_threshold_estimates_toward_d() {
    // The bias itself is below Monte Carlo resolution at these sizes, so the
    // comparison uses the mean squared deviation from d over several seeds.
    let rms = |side: f64| {
        let ms: f64 = (0..8u64)
            .map(|s| {
                let e = cutset_core::percolation::estimate_critical_radius(
                    1.0, side, 400, 0.002, 100 + s, &Sequential,
                )
                .unwrap();
                (e.d_estimate - 1.198).powi(2)
            })
            .sum::<f64>()
            / 8.0;
        ms.sqrt()
    };
    let (small, large) = (rms(50.0), rms(100.0));
    assert!(large < small, "rms deviation {small} at side 50, {large} at side 100");
}
