use cutset_core::bound::cutset_bound;
use cutset_core::montecarlo::{
    build_channel, campbell_mean_snr, estimate_expected_cutset, jensen_geometry_bound,
    mimo_capacity, miso_sum_capacity, received_snr, FadingModel, MonteCarloPlan,
};
use cutset_core::ppp::{sample_ppp, Point, PointSet, Region};
use cutset_core::runner::Sequential;
use cutset_core::stats::Accumulator;
use cutset_core::NetworkConfig;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn points(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> PointSet {
    let region = Region::annulus(Point::ORIGIN, lo, hi).unwrap();
    let pts = (0..n).map(|_| region.sample_uniform(rng)).collect();
    PointSet::new(pts, region, 1.0)
}

fn cfg(snr: f64) -> NetworkConfig {
    NetworkConfig::from_snr_parameter(1.0, 5.0, snr, 1e3, 4.0).unwrap()
}

/// `W sum ln(1 + c lambda_i)` over the eigenvalues of `H H^*`.
fn eigen_oracle(gains: &[Complex64], rows: usize, cols: usize, c: &NetworkConfig) -> f64 {
    let h = DMatrix::from_row_slice(rows, cols, gains);
    let gram = &h * h.adjoint();
    gram.symmetric_eigenvalues()
        .iter()
        .map(|&l| (1.0 + c.snr_parameter() * l).ln())
        .sum::<f64>()
        * c.bandwidth
}

#[test]
fn mimo_matches_eigenvalue_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (rows, cols) in [(3, 4), (4, 3), (1, 5), (6, 6), (8, 2)] {
        for seed in 0..20 {
            let rx = points(&mut rng, rows, 0.0, 2.0);
            let tx = points(&mut rng, cols, 3.0, 6.0);
            for fading in [FadingModel::Rayleigh, FadingModel::UniformPhase] {
                let ch = build_channel(&tx, &rx, 3.5, fading, seed).unwrap();
                for snr in [1e-3, 1.0, 1e3] {
                    let c = cfg(snr);
                    let got = mimo_capacity(&ch, &c).unwrap();
                    let want = eigen_oracle(&ch.gains, rows, cols, &c);
                    assert!(((got - want) / want).abs() <= 1e-10, "{rows}x{cols}: {got} vs {want}");
                }
            }
        }
    }
}

#[test]
fn hadamard_ordering_holds_per_draw() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for seed in 0..300 {
        let rows = rng.random_range(1..12);
        let cols = rng.random_range(1..12);
        let rx = points(&mut rng, rows, 0.0, 2.0);
        let tx = points(&mut rng, cols, 2.5, 5.0);
        let ch = build_channel(&tx, &rx, 4.0, FadingModel::Rayleigh, seed).unwrap();
        for snr in [1e-4, 0.1, 10.0, 1e5] {
            let c = cfg(snr);
            let mimo = mimo_capacity(&ch, &c).unwrap();
            let miso = miso_sum_capacity(&ch, &c).unwrap();
            assert!(mimo <= miso, "{rows}x{cols} snr={snr}: {mimo} > {miso}");
            if rows == 1 {
                assert_eq!(mimo, miso);
            }
        }
    }
}

#[test]
fn rayleigh_fading_is_normalized_and_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 100_000;
    let mut power = Accumulator::new();
    let (mut pos_re, mut pos_im) = (0u64, 0u64);
    for _ in 0..n {
        let h = FadingModel::Rayleigh.sample(&mut rng);
        power.push(h.norm_sqr());
        pos_re += (h.re > 0.0) as u64;
        pos_im += (h.im > 0.0) as u64;
    }
    assert!((power.mean() - 1.0).abs() <= 0.02, "{}", power.mean());
    // Sign-flip symmetry: the number of positive parts is Binomial(n, 1/2).
    for count in [pos_re, pos_im] {
        let z = (count as f64 - 0.5 * n as f64) / (0.25 * n as f64).sqrt();
        assert!(z.abs() < 2.576, "z = {z}");
    }
}

#[test]
fn fading_averaged_miso_stays_below_jensen() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let rx = points(&mut rng, 5, 0.0, 3.0);
    let tx = points(&mut rng, 40, 5.0, 10.0);
    let c = cfg(10.0);
    let jensen = jensen_geometry_bound(&tx, &rx, &c).unwrap();
    for fading in [FadingModel::Rayleigh, FadingModel::UniformPhase] {
        let miso: Accumulator = (0..10_000)
            .map(|seed| {
                let ch = build_channel(&tx, &rx, 4.0, fading, seed).unwrap();
                miso_sum_capacity(&ch, &c).unwrap()
            })
            .collect();
        let slack = 3.0 * miso.std_error() + 1e-12 * jensen;
        assert!(miso.mean() <= jensen + slack, "{} > {jensen}", miso.mean());
        if fading == FadingModel::Rayleigh {
            assert!(miso.mean() < jensen, "Jensen gap should be strictly positive");
        }
    }
}

#[test]
fn jensen_is_identical_for_both_fading_models() {
    let c = cfg(1.0);
    let plan = MonteCarloPlan {
        tail_cap: 0.1,
        ..MonteCarloPlan::new(4, 2, 20.0)
    };
    let run = |fading| {
        estimate_expected_cutset(&c, &MonteCarloPlan { fading, ..plan }, 9, &Sequential).unwrap()
    };
    let a = run(FadingModel::Rayleigh);
    let b = run(FadingModel::UniformPhase);
    assert_eq!(a.jensen.mean.to_bits(), b.jensen.mean.to_bits());
    assert_eq!(a.jensen.std_error.to_bits(), b.jensen.std_error.to_bits());
}

#[test]
fn campbell_first_moment_matches_analytic_integral() {
    let c = cfg(1.0);
    let region = Region::annulus(Point::ORIGIN, 5.0, 50.0).unwrap();
    for r in [1.0, 2.0, 5.0] {
        let rx = Point::new(5.0 - r, 0.0);
        let snr: Accumulator = (0..10_000)
            .map(|seed| {
                let tx = sample_ppp(region, 1.0, 1_000_000 + seed).unwrap();
                received_snr(rx, &tx, &c).unwrap()
            })
            .collect();
        let analytic = campbell_mean_snr(rx, &region, &c).unwrap();
        let s_r = cutset_core::bound::snr_profile(&c, r).unwrap();
        assert!((snr.mean() - analytic).abs() <= 3.0 * snr.std_error(), "r={r}");
        assert!(analytic <= s_r);
        assert!(snr.mean() <= s_r + 3.0 * snr.std_error());
    }
}

#[test]
fn campbell_integral_approaches_profile_at_the_center() {
    // With the tail beyond T below 1e-3, the center receiver sees >= 0.8 s_R.
    let c = cfg(1.0);
    let t = 5.0 * 1e3f64.sqrt() * 1.01;
    let region = Region::annulus(Point::ORIGIN, 5.0, t).unwrap();
    let analytic = campbell_mean_snr(Point::ORIGIN, &region, &c).unwrap();
    let s_r = cutset_core::bound::snr_profile(&c, 5.0).unwrap();
    assert!(analytic >= 0.8 * s_r && analytic <= s_r, "{analytic} vs {s_r}");
}

#[test]
fn jensen_mean_stays_below_the_bound() {
    let c = cfg(1.0);
    let plan = MonteCarloPlan {
        tail_cap: 0.011,
        ..MonteCarloPlan::new(100, 1, 50.0)
    };
    let est = estimate_expected_cutset(&c, &plan, 5, &Sequential).unwrap();
    let bound = cutset_bound(&c).unwrap().value;
    assert!(est.jensen.mean <= bound + 3.0 * est.jensen.std_error, "{} vs {bound}", est.jensen.mean);
    assert_eq!(est.hadamard_violations, 0);
}

fn small_cfg() -> NetworkConfig {
    NetworkConfig::from_snr_parameter(1.0, 3.0, 1.0, 1e3, 4.0).unwrap()
}

#[test]
fn doubling_draws_halves_the_variance_of_the_mean() {
    let c = small_cfg();
    let se = |draws| {
        let plan = MonteCarloPlan {
            tail_cap: 0.1,
            ..MonteCarloPlan::new(1, draws, 10.0)
        };
        estimate_expected_cutset(&c, &plan, 21, &Sequential).unwrap().mimo.std_error
    };
    let ratio = (se(4000) / se(2000)).powi(2);
    assert!((ratio - 0.5).abs() <= 0.1, "variance ratio {ratio}");
}

#[test]
fn doubling_trials_shrinks_the_error_like_root_n() {
    let c = small_cfg();
    let se = |trials| {
        let plan = MonteCarloPlan {
            tail_cap: 0.1,
            ..MonteCarloPlan::new(trials, 1, 10.0)
        };
        estimate_expected_cutset(&c, &plan, 22, &Sequential).unwrap().jensen.std_error
    };
    let ratio = se(400) / se(1600);
    assert!((ratio - 2.0).abs() <= 0.4, "ratio {ratio}");
}
