use super::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn arcs(lowers: &[f64], len: f64) -> Vec<Arc> {
    lowers.iter().map(|&x| Arc::new(x, len).unwrap()).collect()
}

#[test]
fn circular_distance() {
    assert!((circ_dist(0.9, 0.1) - 0.2).abs() < 1e-15);
    assert!((circ_dist(0.49, 0.5) - 0.01).abs() < 1e-15);
    assert_eq!(circ_dist(0.3, 0.3), 0.0);
    assert!((circ_dist(0.0, 0.5) - 0.5).abs() < 1e-15);
}

#[test]
fn atan2_branches() {
    assert_eq!(atan2_quadrant(1.0, 0.0).unwrap(), 0.0);
    assert_eq!(atan2_quadrant(0.0, 1.0).unwrap(), PI / 2.0);
    assert_eq!(atan2_quadrant(-1.0, 0.0).unwrap(), PI);
    assert_eq!(atan2_quadrant(0.0, -2.0).unwrap(), -PI / 2.0);
    assert!((atan2_quadrant(-1.0, -1.0).unwrap() + 3.0 * PI / 4.0).abs() < 1e-15);
    assert!(matches!(atan2_quadrant(0.0, 0.0), Err(crate::Error::UndefinedAtan2)));
}

proptest! {
    #[test]
    fn atan2_agrees_with_std(x in -5.0f64..5.0, y in -5.0f64..5.0) {
        prop_assume!(x != 0.0 || y != 0.0);
        prop_assert!((atan2_quadrant(x, y).unwrap() - y.atan2(x)).abs() < 1e-12);
    }

    #[test]
    fn circ_dist_is_a_symmetric_bounded_metric(a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let d = circ_dist(a, b);
        prop_assert!((0.0..=0.5).contains(&d));
        prop_assert_eq!(d, circ_dist(b, a));
    }
}

#[test]
fn stage_estimates() {
    let n = 40;
    assert_eq!(estimate_stage(&StageCounts::new(n, n, n / 2).unwrap()).value, 0.0);
    assert!((estimate_stage(&StageCounts::new(n, n / 2, n).unwrap()).value - 0.25).abs() < 1e-15);
    assert!((estimate_stage(&StageCounts::new(n, 0, n / 2).unwrap()).value - 0.5).abs() < 1e-15);
    let origin = estimate_stage(&StageCounts::new(n, n / 2, n / 2).unwrap());
    assert!(origin.flagged && origin.value == 0.0);
    assert!(StageCounts::new(n, n + 1, 0).is_err());
    assert!(StageCounts::new(0, 0, 0).is_err());
}

#[test]
fn arcs_from_estimates() {
    let a = arc_from_estimate(0.5);
    assert!((a.lower - 1.0 / 3.0).abs() < 1e-15 && (a.upper() - 2.0 / 3.0).abs() < 1e-15);
    assert!((arc_from_estimate(0.05).lower - 0.883_333_333_333_333_3).abs() < 1e-12);
    for x in [0.0, 0.05, 0.3, 0.99] {
        assert!(circ_dist(arc_from_estimate(x).center(), x) < 1e-15);
    }
    let half_open = Arc::new(0.2, 0.3).unwrap();
    assert!(half_open.contains(0.2) && !half_open.contains(0.5) && half_open.contains(0.4999));
}

#[test]
fn worked_example_one() {
    let it = iterate_arcs(&arcs(&[0.6, 0.3, 0.8], 0.3)).unwrap();
    let want = [0.6, 1.3, 2.8];
    for (z, w) in it.chain.z.iter().zip(want) {
        assert!((z - w).abs() < 1e-12);
    }
    assert!((it.final_arc.lower - 0.7).abs() < 1e-12);
    assert!((it.final_arc.upper() - 0.775).abs() < 1e-12);
    assert!((it.estimate - 0.7375).abs() < 1e-12);
}

#[test]
fn worked_example_two() {
    let it = iterate_arcs(&arcs(&[0.1, 0.7, 0.9], 0.3)).unwrap();
    for (z, w) in it.chain.z.iter().zip([0.1, 0.5, 1.0]) {
        assert!((z - w).abs() < 1e-12);
    }
    assert!((it.final_arc.lower - 0.25).abs() < 1e-12);
    assert!((it.final_arc.upper() - 0.325).abs() < 1e-12);
    assert!((it.estimate - 0.2875).abs() < 1e-12);
}

#[test]
fn single_stage_and_bad_input() {
    let it = iterate_arcs(&[arc_from_estimate(0.4)]).unwrap();
    assert_eq!(it.final_arc, arc_from_estimate(0.4));
    assert!((it.estimate - 0.4).abs() < 1e-15);
    assert!(matches!(iterate_arcs(&[]), Err(crate::Error::EmptyInput)));
    assert!(iterate_arcs(&[Arc::new(0.1, 0.3).unwrap(), Arc::new(0.1, 0.2).unwrap()]).is_err());
}

#[test]
fn containing_arcs_always_yield_a_containing_final_arc() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for i in 0..10_000 {
        let theta = i as f64 / 10_000.0;
        let l = 1 + (i % 8) as u32;
        let stage_arcs: Vec<Arc> = (0..l)
            .map(|k| {
                let point = (2f64.powi(k as i32) * theta).rem_euclid(1.0);
                let offset = rng.gen_range(0.01..0.99) * ARC_LENGTH;
                Arc::new(point - offset, ARC_LENGTH).unwrap()
            })
            .collect();
        let it = iterate_arcs(&stage_arcs).unwrap();
        assert!(it.final_arc.contains(theta), "theta {theta}, l {l}");
        assert!((it.final_arc.length - ARC_LENGTH / 2f64.powi(l as i32 - 1)).abs() < 1e-15);
        assert!(circ_dist(it.estimate, theta) <= coverage_radius(l));
        assert!(it.chain.invariant_holds());
    }
}

#[test]
fn exact_probabilities_recover_phase_multiples() {
    for i in 0..200 {
        let theta = (i as f64 * 0.618_033_988_749_895).rem_euclid(1.0);
        for k in 1..=12 {
            let (px, py) = stage_probs(theta, k, NoiseModel::NONE);
            let est = estimate_from_frequencies(px, py);
            let target = (2f64.powi(k as i32 - 1) * theta).rem_euclid(1.0);
            assert!(circ_dist(est.value, target) < 1e-10, "theta {theta}, k {k}");
        }
    }
    let t = run_exact_trial(0.7375, 6, NoiseModel::NONE).unwrap();
    assert!(t.covered && t.distance < 1e-10 && t.stage_misses.iter().all(|m| !m));
}

#[test]
fn bounded_frequency_errors_keep_stage_estimates_within_a_sixth() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let dev = ALPHA / 2.0;
    for _ in 0..20_000 {
        let theta: f64 = rng.gen();
        let k = rng.gen_range(1..=10);
        let (px, py) = stage_probs(theta, k, NoiseModel::NONE);
        let fx = (px + rng.gen_range(-dev..dev)).clamp(0.0, 1.0);
        let fy = (py + rng.gen_range(-dev..dev)).clamp(0.0, 1.0);
        let est = estimate_from_frequencies(fx, fy);
        let target = (2f64.powi(k as i32 - 1) * theta).rem_euclid(1.0);
        assert!(circ_dist(est.value, target) <= 1.0 / 6.0);
    }
}

#[test]
fn stage_probabilities() {
    for k in 1..6 {
        let (px, py) = stage_probs(0.0, k, NoiseModel::NONE);
        assert!((px - 1.0).abs() < 1e-15 && (py - 0.5).abs() < 1e-15);
    }
    let th = 0.13;
    let (px, py) = stage_probs(th, 1, NoiseModel::NONE);
    assert!((px - (1.0 + (2.0 * PI * th).cos()) / 2.0).abs() < 1e-15);
    assert!((py - (1.0 + (2.0 * PI * th).sin()) / 2.0).abs() < 1e-15);
    let noise = NoiseModel::new(0.5).unwrap();
    let (px, _) = stage_probs(th, 2, noise);
    assert!((px - (1.0 + 0.25 * (4.0 * PI * th).cos()) / 2.0).abs() < 1e-15);
    assert!(NoiseModel::new(1.0).is_err() && NoiseModel::new(-0.1).is_err());
}

#[test]
fn stage_amplitude_matches_repeated_depolarizing_channel() {
    use crate::quantum::{apply, born, make_depolarizing, measure_basis, phase_unitary, Axis, DensityMatrix, PureState};
    let (theta, r, k) = (0.21, 0.07, 3u32);
    let m = 2usize.pow(k - 1);
    let u = phase_unitary(theta);
    let dep = make_depolarizing(2, r).unwrap();
    let mut rho = PureState::plus().density();
    for _ in 0..m {
        let rotated = &(&u * rho.matrix()) * &u.adjoint();
        rho = apply(&dep, &DensityMatrix::new(rotated).unwrap()).unwrap();
    }
    let (px, py) = stage_probs(theta, k, NoiseModel::new(r).unwrap());
    let bx = born(&rho, &measure_basis(Axis::X)).unwrap()[0];
    let by = born(&rho, &measure_basis(Axis::Y)).unwrap()[0];
    assert!((px - bx).abs() < 1e-12, "{px} vs {bx}");
    assert!((py - by).abs() < 1e-12, "{py} vs {by}");
}

#[test]
fn trials_are_reproducible_and_validated() {
    let a = run_trial(0.3, 5, 30, NoiseModel::NONE, &mut trial_rng(4, 9)).unwrap();
    let b = run_trial(0.3, 5, 30, NoiseModel::NONE, &mut trial_rng(4, 9)).unwrap();
    assert_eq!(a, b);
    assert!(matches!(
        run_trial(0.3, 5, 31, NoiseModel::NONE, &mut trial_rng(4, 9)),
        Err(crate::Error::OddMeasurementCount(31))
    ));
    assert!(run_trial(0.3, 0, 30, NoiseModel::NONE, &mut trial_rng(4, 9)).is_err());
    let mut rng = trial_rng(1, 0);
    for i in 0..20 {
        let theta = i as f64 / 20.0 + 0.013;
        assert!(run_trial(theta, 8, 2_000_000, NoiseModel::NONE, &mut rng).unwrap().covered);
    }
}

#[test]
fn simulation_is_independent_of_worker_count() {
    let cfg = SimConfig { l: 6, n_tot: 20, trials: 3000, noise: NoiseModel::new(1.0 / 64.0).unwrap(), seed: 5 };
    let one = run_simulation_with_workers(&cfg, 1).unwrap();
    let four = run_simulation_with_workers(&cfg, 4).unwrap();
    assert_eq!(one, four);
    assert_eq!(one.chain_violations, 0);
    assert!(one.successes <= one.trials);
    assert!(run_simulation(&SimConfig { trials: 0, ..cfg }).is_err());
}

#[test]
fn small_noiseless_simulation_covers_nearly_always() {
    let cfg = SimConfig { l: 4, n_tot: 200, trials: 2000, noise: NoiseModel::NONE, seed: 1 };
    let rep = run_simulation(&cfg).unwrap();
    assert_eq!(rep.successes, 2000);
    assert_eq!(rep.stages.len(), 4);
}

#[test]
fn coverage_intervals() {
    assert_eq!(coverage_ci(10, 10).unwrap(), (1.0, 1.0));
    let (lo, hi) = coverage_ci(99_712, 100_000).unwrap();
    assert!(((hi - lo) / 2.0 - 0.00033).abs() < 5e-6);
    let widest = coverage_ci(50, 100).unwrap();
    for m in [10, 30, 70, 90] {
        let (a, b) = coverage_ci(m, 100).unwrap();
        assert!(b - a < widest.1 - widest.0);
    }
    assert!(coverage_ci(0, 0).is_err() && coverage_ci(5, 4).is_err());
}

#[test]
fn bernstein_planner() {
    let c = bernstein_counts(6, 2f64.powi(-12)).unwrap();
    assert_eq!(c.n_tot, 562);
    assert_eq!(c.n, 281);
    let mut last = 0;
    for e in 1..20 {
        let n = bernstein_counts(6, 2f64.powi(-e)).unwrap().n_tot;
        assert!(n > last);
        last = n;
    }
    assert!(bernstein_counts(6, 1.0).is_err());
    assert!(bernstein_counts(6, 0.0).is_err());
    assert!(bernstein_counts(0, 0.1).is_err());
}

#[test]
fn alpha_margin() {
    let m = alpha_bound_check();
    assert!(m > 0.0 && m < 1e-3, "{m}");
    assert!(alpha_bound(0.5).unwrap() > PI / 3.0);
    assert_eq!(alpha_bound(0.0).unwrap(), 0.0);
    assert!(alpha_bound(0.6).is_err());
}

#[test]
fn noise_plan() {
    let p = noise_planning(2f64.powi(-6), 10).unwrap();
    assert_eq!(p.l_star, 6);
    assert!((p.m_star - 31.75).abs() < 0.01 && p.m_star_approx == 32.0);
    assert!(per_use_info(p.m_star, p.r) > per_use_info(2.0 * p.m_star, p.r));
    let best = p.curve.iter().max_by(|a, b| a.info_per_use.total_cmp(&b.info_per_use)).unwrap();
    assert_eq!(best.uses, 32.0);
    let mut last = 0.0;
    for m in [1.0, 10.0, 100.0, 1000.0] {
        let v = per_use_info(m, 0.0);
        assert!((v - 4.0 * PI * PI * m).abs() < 1e-9 && v > last);
        last = v;
    }
    assert!(noise_planning(0.0, 4).is_err() && noise_planning(1.0, 4).is_err());
}

#[test]
fn fidelity_bounds() {
    let b = worst_case_fidelity(3, 0.0).unwrap();
    assert!((b.exact - (1.0 - (1.0 + (2.0 * PI / 24.0).cos()) / 2.0)).abs() < 1e-15);
    for l in 6..=12 {
        let b = worst_case_fidelity(l, 0.01).unwrap();
        assert!((b.exact - b.approx).abs() < 1e-4);
    }
    let scaled: Vec<f64> =
        (4..=12).map(|l| worst_case_fidelity(l, 4f64.powi(-(l as i32))).unwrap().exact * 4f64.powi(l as i32)).collect();
    let (lo, hi) = scaled.iter().fold((f64::MAX, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
    assert!(hi / lo < 2.0);
}

#[test]
fn adaptive_refinement() {
    assert_eq!(second_stage_prob(0.4, 1.1, 0.4), 0.5);
    let setup = AdaptiveSetup { phi: 0.0, polar: PI / 2.0, n: 1_000_000, n_first: 10_000 };
    let out = adaptive_demo(&setup, &mut trial_rng(3, 0)).unwrap();
    assert!(angle_diff(out.refined, 0.0).abs() < 5e-3);
    let setup = AdaptiveSetup { phi: 0.9, polar: 1.2, n: 10_000, n_first: 1_000 };
    let mse = adaptive_mse(&setup, 1000, 11).unwrap();
    assert!(mse.mse_refined < mse.mse_first, "{mse:?}");
    assert!(adaptive_demo(&AdaptiveSetup { n_first: 3, ..setup }, &mut trial_rng(0, 0)).is_err());
    assert!((angle_diff(0.1, 2.0 * PI - 0.1) - 0.2).abs() < 1e-12);
}
