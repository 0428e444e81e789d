use cutset_core::bound::{
    asymptote_for_case, case_one_second_order, classify_regime, cutset_bound,
    cutset_bound_closed_form, snr_profile, RegimeCase,
};
use cutset_core::specfun::is_excluded_alpha;
use cutset_core::NetworkConfig;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cfg(nu: f64, r: f64, snr: f64, w: f64, alpha: f64) -> NetworkConfig {
    NetworkConfig::from_snr_parameter(nu, r, snr, w, alpha).unwrap()
}

fn random_alpha(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let alpha = rng.random_range(2.05..6.0);
        if !is_excluded_alpha(alpha) {
            return alpha;
        }
    }
}

fn random_config(rng: &mut ChaCha8Rng) -> NetworkConfig {
    let nu = 10f64.powf(rng.random_range(-1.0..1.0));
    let r = 10f64.powf(rng.random_range(0.5..3.0)).max(2.0 / nu.sqrt());
    let snr = 10f64.powf(rng.random_range(-6.0..6.0));
    let w = 10f64.powf(rng.random_range(0.0..6.0));
    cfg(nu, r, snr, w, random_alpha(rng))
}

type Ladder = fn(&NetworkConfig, f64) -> NetworkConfig;

fn bound(c: &NetworkConfig) -> f64 {
    cutset_bound(c).unwrap().value
}

#[test]
fn closed_form_and_quadrature_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let c = random_config(&mut rng);
        let q = bound(&c);
        let cf = cutset_bound_closed_form(&c).unwrap().value;
        assert!(((cf - q) / q).abs() <= 1e-8, "{c:?}: {cf} vs {q}");
    }
}

#[test]
fn bound_is_monotone_in_each_parameter() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let c = random_config(&mut rng);
        let ladders: [(&str, Ladder); 4] = [
            ("P", |c, f| NetworkConfig { power: c.power * f, ..*c }),
            ("nu", |c, f| NetworkConfig { density: c.density * f, ..*c }),
            ("R", |c, f| NetworkConfig { radius: c.radius * f, ..*c }),
            ("W", |c, f| NetworkConfig { bandwidth: c.bandwidth * f, ..*c }),
        ];
        for (name, step) in ladders {
            let values: Vec<f64> = [1.0, 1.5, 2.5].iter().map(|&f| bound(&step(&c, f))).collect();
            assert!(
                values.windows(2).all(|w| w[1] >= w[0]),
                "{name} ladder not monotone at {c:?}: {values:?}"
            );
        }
    }
}

#[test]
fn bound_is_zero_iff_power_is_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let c = random_config(&mut rng);
        assert!(bound(&c) > 0.0);
        assert_eq!(bound(&c.with_snr_parameter(0.0)), 0.0);
    }
}

#[test]
fn regime_is_invariant_under_power_noise_rescaling() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let c = random_config(&mut rng);
        let scale = 10f64.powf(rng.random_range(-20.0..20.0));
        let scaled = NetworkConfig {
            power: c.power * scale,
            noise_psd: c.noise_psd * scale,
            ..c
        };
        let a = classify_regime(&c, 1.0, 10.0).map(|r| r.case);
        let b = classify_regime(&scaled, 1.0, 10.0).map(|r| r.case);
        match (a, b) {
            (Ok(x), Ok(y)) => assert_eq!(x, y),
            (Err(_), Err(_)) => {}
            other => panic!("{other:?}"),
        }
    }
}

#[test]
fn snr_profile_times_power_is_constant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let c = random_config(&mut rng);
        let base = snr_profile(&c, 1.0).unwrap();
        for _ in 0..20 {
            let r = 10f64.powf(rng.random_range(-2.0..4.0));
            let v = snr_profile(&c, r).unwrap() * r.powf(c.alpha - 2.0);
            assert!(((v - base) / base).abs() <= 1e-12);
        }
    }
}

/// Walks a ray until asymptote/quadrature is within 5% of 1 and checks that
/// the distance to 1 never grows along the way.
fn check_ray(case: RegimeCase, ray: &[NetworkConfig], use_second_order: bool) {
    let mut last = f64::INFINITY;
    for c in ray {
        if case != RegimeCase::BandwidthLimited || !use_second_order {
            assert_eq!(classify_regime(c, 1.0, 10.0).unwrap().case, case, "{c:?}");
        }
        let asym = if use_second_order {
            case_one_second_order(c).unwrap()
        } else {
            asymptote_for_case(c, case).unwrap()
        };
        let ratio = asym / bound(c);
        let gap = (ratio - 1.0).abs();
        assert!(gap <= last * (1.0 + 1e-9), "{case}: gap grew to {gap} at {c:?}");
        last = gap;
        if gap <= 0.05 {
            return;
        }
    }
    panic!("{case}: ray ended with asymptote/quadrature gap {last}");
}

#[test]
fn asymptotes_converge_along_rays() {
    let case_one: Vec<_> = (1..=12)
        .map(|e| cfg(1.0, 100.0, 10f64.powi(2 * e), 1e3, 2.5))
        .collect();
    check_ray(RegimeCase::BandwidthLimited, &case_one, false);
    check_ray(RegimeCase::BandwidthLimited, &case_one, true);

    let case_two: Vec<_> = (2..=8)
        .map(|e| cfg(1.0, 10f64.powi(e), 1e-12, 1e3, 2.5))
        .collect();
    check_ray(RegimeCase::PowerLimitedSublinear, &case_two, false);

    let boundary: Vec<_> = (1..=5)
        .map(|e| cfg(1.0, 10f64.powi(3 * e), 1e-9, 1e3, 3.0))
        .collect();
    check_ray(RegimeCase::BoundaryAlpha3, &boundary, false);

    let case_three: Vec<_> = (1..=6)
        .map(|e| cfg(1.0, 1e7, 10f64.powi(e), 1e3, 4.0))
        .collect();
    check_ray(RegimeCase::PowerAndBandwidthLimited, &case_three, false);

    let case_four: Vec<_> = (2..=8)
        .map(|e| cfg(1.0, 10f64.powi(e), 1e-6, 1e3, 4.0))
        .collect();
    check_ray(RegimeCase::PowerLimited, &case_four, false);
}
