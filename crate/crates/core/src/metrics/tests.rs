use super::*;
use crate::linalg::{herm_eig, CMatrix, C64};
use crate::models::{
    bloch_qubit, commuting_ud, commuting_ud_separate, depol_qutrit_rotation, phase_on_psix, spectral_curve, Gauge,
    ParametricFamily,
};
use crate::quantum::{measure_basis, Axis, Povm};
use crate::random::{random_family, random_point, random_povm, random_pure_family};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

const BLOCH: [f64; 3] = [0.5, 1.0, 0.7];

fn assert_matrix(m: &InfoMatrix, want: &[Vec<f64>], tol: f64) {
    let diff = m.max_abs_diff_entries(want);
    assert!(diff <= tol, "{:?} vs {want:?} (diff {diff:.3e})", m.entries);
}

fn diag(d: &[f64]) -> Vec<Vec<f64>> {
    (0..d.len()).map(|i| (0..d.len()).map(|j| if i == j { d[i] } else { 0.0 }).collect()).collect()
}

fn classical_family() -> ParametricFamily {
    ParametricFamily::new("classical", 3, 1, |t| {
        Ok(CMatrix::diag_real(&[0.2 + 0.1 * t[0], 0.5 - 0.3 * t[0], 0.3 + 0.2 * t[0]]))
    })
}

fn bloch_pure_slice() -> ParametricFamily {
    ParametricFamily::pure("bloch_pure", 2, 2, |t| {
        let (c, s) = ((t[0] / 2.0).cos(), (t[0] / 2.0).sin());
        Ok(vec![C64::from_polar(c, -t[1] / 2.0), C64::from_polar(s, t[1] / 2.0)])
    })
}

#[test]
fn fisher_of_x_measurement_on_phase_family() {
    let fam = phase_on_psix(1, 0.0).unwrap();
    let f = fisher_info(&fam, &[0.125], &measure_basis(Axis::X)).unwrap();
    assert!((f.get(0, 0) - 4.0 * PI * PI).abs() < 1e-6);
    let useless = Povm::new(vec![CMatrix::identity(2).scale_real(0.5); 2]).unwrap();
    assert!(fisher_info(&fam, &[0.125], &useless).unwrap().get(0, 0).abs() < 1e-12);
}

#[test]
fn eigenbasis_measurement_on_classical_family_is_optimal() {
    let fam = classical_family();
    let pvm = Povm::from_basis(&(0..3).map(|k| crate::linalg::basis_vector(3, k)).collect::<Vec<_>>()).unwrap();
    let f = fisher_info(&fam, &[0.1], &pvm).unwrap();
    let h = sld_info(&fam, &[0.1]).unwrap();
    // 0.1^2/0.21 + 0.3^2/0.47 + 0.2^2/0.32
    let exact = 0.01 / 0.21 + 0.09 / 0.47 + 0.04 / 0.32;
    assert!((f.get(0, 0) - exact).abs() < 1e-8);
    assert!((h.get(0, 0) - exact).abs() < 1e-8);
}

#[test]
fn sld_of_phase_family_scales_with_uses_and_noise() {
    for (m, r) in [(1u32, 0.0f64), (3, 0.0), (2, 0.1), (8, 0.05)] {
        let want = 4.0 * PI * PI * (m * m) as f64 * (1.0f64 - r).powi(2 * m as i32);
        let fam = phase_on_psix(m, r).unwrap();
        for f in [fam.clone(), fam.numerical()] {
            let h = sld_info(&f, &[0.37]).unwrap().get(0, 0);
            assert!((h - want).abs() < 1e-6 * want, "m={m} r={r}: {h} vs {want}");
        }
    }
}

#[test]
fn bloch_family_information_matrices() {
    let (r, th) = (BLOCH[0], BLOCH[1]);
    let fr = 1.0 / (1.0 - r * r);
    for fam in [bloch_qubit(false), bloch_qubit(false).numerical()] {
        let h = sld_info(&fam, &BLOCH).unwrap();
        assert_matrix(&h, &diag(&[fr, r * r, (r * th.sin()).powi(2)]), 1e-8);
        let cl = c_l(&fam, &BLOCH).unwrap();
        assert_matrix(&cl, &diag(&[fr, 1.0, th.sin().powi(2)]), 1e-8);
    }
    let cu = c_upsilon(&bloch_qubit(false), &BLOCH, Gauge::FixedPhase).unwrap();
    assert_matrix(&cu, &diag(&[fr, 1.0, 1.0]), 1e-9);
    let cu = c_upsilon(&bloch_qubit(true), &BLOCH, Gauge::FixedPhase).unwrap();
    assert_matrix(&cu, &diag(&[fr, 1.0, 2.0 + 2.0 * r * th.cos()]), 1e-9);
}

#[test]
fn sld_routes_agree() {
    for seed in 0..10 {
        let fam = random_family(seed, 2 + (seed as usize % 2), 1 + (seed as usize % 3));
        let theta = vec![0.1; fam.param_count()];
        let curve = spectral_curve(&fam, &theta, Gauge::FixedPhase).unwrap();
        let a = sld_info_from_curve(&curve);
        let b = sld_info_via_scores(&curve);
        let c = coefficient_info(&fam, &theta, CoefficientKind::Sld).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-7, "seed {seed}");
        assert!(a.max_abs_diff(&c) < 1e-7, "seed {seed}");
    }
}

#[test]
fn depolarized_qutrit_rotation_is_not_monotone() {
    let (delta, eps) = (0.1, 0.2);
    let fam = depol_qutrit_rotation(delta, 0.0).unwrap();
    assert!((c_l(&fam, &[0.3]).unwrap().get(0, 0) - 8.0 * delta).abs() < 1e-9);
    assert!(sld_info(&fam, &[0.3]).unwrap().get(0, 0).abs() < 1e-9);
    let noisy = depol_qutrit_rotation(delta, eps).unwrap();
    let want = 8.0 * delta + 8.0 * eps * (1.0 / 3.0 - delta);
    assert!((c_l(&noisy, &[0.3]).unwrap().get(0, 0) - want).abs() < 1e-9);
    assert!(want > 8.0 * delta);
}

#[test]
fn pure_families_have_cl_equal_to_sld() {
    for seed in 0..5 {
        let fam = random_pure_family(seed, 3, 2);
        let theta = [0.2, -0.1];
        let h = sld_info(&fam, &theta).unwrap();
        let cl = c_l(&fam, &theta).unwrap();
        assert!(h.max_abs_diff(&cl) < 1e-8);
        assert!(h.max_abs_diff(&pure_sld_info(&fam, &theta).unwrap()) < 1e-7);
    }
}

#[test]
fn classical_family_all_metrics_coincide() {
    let fam = classical_family();
    let h = sld_info(&fam, &[0.1]).unwrap().get(0, 0);
    let k = kmb_info(&fam, &[0.1]).unwrap().get(0, 0);
    let r = rld_info(&fam, &[0.1]).unwrap().get(0, 0);
    assert!((h - k).abs() < 1e-8 && (h - r).abs() < 1e-8);
}

#[test]
fn sld_kmb_rld_ordering_on_random_qubits() {
    for seed in 0..20 {
        let fam = random_family(100 + seed, 2, 2);
        let theta = [0.05, -0.1];
        let h = sld_info(&fam, &theta).unwrap();
        let k = kmb_info(&fam, &theta).unwrap();
        let r = rld_info(&fam, &theta).unwrap();
        assert!(k.min_eig_gap(&h).unwrap() > -1e-8, "seed {seed}");
        assert!(r.min_eig_gap(&k).unwrap() > -1e-8, "seed {seed}");
    }
}

#[test]
fn kmb_and_rld_need_full_rank() {
    let fam = phase_on_psix(1, 0.0).unwrap();
    assert!(matches!(kmb_info(&fam, &[0.2]), Err(crate::Error::RankDeficient(_))));
    assert!(matches!(rld_info(&fam, &[0.2]), Err(crate::Error::RankDeficient(_))));
}

#[test]
fn monotone_functions() {
    use CoefficientKind::*;
    for k in [Sld, Kmb, Rld] {
        assert!((monotone_f(k, 1.0).unwrap() - 1.0).abs() < 1e-12);
    }
    assert_eq!(monotone_f(CL, 0.0).unwrap(), 0.5);
    assert_eq!(monotone_f(CL, 1.0).unwrap(), 0.0);
    assert!((monotone_f(CL, 3.0).unwrap() - 0.5).abs() < 1e-15);
    assert!(monotone_f(Sld, -1.0).is_err());
    // c_KMB(p, p) -> 1/p
    let p = 0.37;
    assert!((Kmb.c(p, p) - 1.0 / p).abs() < 1e-8);
    assert!((Kmb.c(p, p * (1.0 + 1e-9)) - 1.0 / p).abs() < 1e-8);
    assert!((Kmb.c(0.2, 0.5) - (0.2f64.ln() - 0.5f64.ln()) / (0.2 - 0.5)).abs() < 1e-14);
}

proptest! {
    #[test]
    fn coefficients_are_symmetric_and_homogeneous(x in 0.01f64..10.0, y in 0.01f64..10.0, a in 0.1f64..10.0) {
        for k in CoefficientKind::ALL {
            if k == CoefficientKind::CL && (x - y).abs() < 1e-3 {
                continue;
            }
            let c = k.c(x, y);
            prop_assert!((c - k.c(y, x)).abs() <= 1e-10 * c.abs());
            prop_assert!((k.c(a * x, a * y) - c / a).abs() <= 1e-10 * (c / a).abs());
        }
    }

    #[test]
    fn generating_functions_are_self_dual(t in 0.01f64..50.0) {
        for k in CoefficientKind::ALL {
            let lhs = k.f(t);
            prop_assert!((lhs - t * k.f(1.0 / t)).abs() <= 1e-10 * lhs.abs().max(1.0));
            if k != CoefficientKind::CL {
                prop_assert!((1.0 / k.c(t, 1.0) - lhs).abs() <= 1e-10 * lhs.abs().max(1.0));
            }
        }
    }
}

#[test]
fn braunstein_caves_on_random_measurements() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for seed in 0..5 {
        let fam = random_family(seed, 3, 2);
        let theta = random_point(&mut rng, 2);
        let h = sld_info(&fam, &theta).unwrap();
        for _ in 0..5 {
            let f = fisher_info(&fam, &theta, &random_povm(&mut rng, 3, 4)).unwrap();
            assert!(check_bc(&f, &h).unwrap().holds);
        }
        assert!(check_bc(&InfoMatrix::zeros(InfoKind::Fisher, 2), &h).unwrap().holds);
    }
}

fn sld_eigenbasis_pvm(fam: &ParametricFamily, theta: &[f64]) -> Povm {
    let lam = crate::models::sld_score(fam, theta, 0).unwrap().lambda;
    Povm::from_basis(&herm_eig(&lam).unwrap().vectors).unwrap()
}

#[test]
fn equality_conditions() {
    let fam = random_family(11, 3, 1);
    let pvm = sld_eigenbasis_pvm(&fam, &[0.2]);
    assert!(check_bc_equality(&fam, &[0.2], &pvm).unwrap().all_satisfied);
    let f = fisher_info(&fam, &[0.2], &pvm).unwrap();
    let h = sld_info(&fam, &[0.2]).unwrap();
    assert!((f.get(0, 0) - h.get(0, 0)).abs() < 1e-6);

    let phase = phase_on_psix(1, 0.0).unwrap();
    assert!(!check_bc_equality(&phase, &[0.17], &measure_basis(Axis::Z)).unwrap().all_satisfied);
    let trivial = Povm::new(vec![CMatrix::identity(2)]).unwrap();
    assert!(!check_bc_equality(&phase, &[0.17], &trivial).unwrap().all_satisfied);
}

#[test]
fn matsumoto_condition() {
    assert!(check_matsumoto(&phase_on_psix(1, 0.0).unwrap(), &[0.3]).unwrap().holds);
    assert!(check_matsumoto(&commuting_ud(3, vec![1.0, 1.0]).unwrap(), &[0.2, 0.4]).unwrap().holds);
    let v = check_matsumoto(&bloch_pure_slice(), &[1.0, 0.7]).unwrap();
    // |Im <d_theta w | d_phi w>| = sin(theta)/4
    assert!(!v.holds);
    assert!((v.max_imag - 1.0f64.sin() / 4.0).abs() < 1e-8);
    assert!(matches!(check_matsumoto(&bloch_qubit(false), &BLOCH), Err(crate::Error::NotPure)));
}

#[test]
fn ballester_measurement_on_phase_family() {
    let fam = phase_on_psix(1, 0.0).unwrap();
    let povm = ballester_povm(&fam, &[0.3], None).unwrap();
    assert_eq!(povm.len(), 3);
    assert!(povm.completeness_error() < 1e-10);
    let f = fisher_info(&fam, &[0.3], &povm).unwrap().get(0, 0);
    assert!((f - 4.0 * PI * PI).abs() < 1e-6);
}

#[test]
fn ballester_measurement_on_commuting_family() {
    let fam = commuting_ud(3, vec![1.0, 1.0]).unwrap();
    let theta = [0.2, 0.4];
    let povm = ballester_povm(&fam, &theta, None).unwrap();
    assert!(povm.completeness_error() < 1e-10);
    let f = fisher_info(&fam, &theta, &povm).unwrap();
    let h = sld_info(&fam, &theta).unwrap();
    assert!(f.max_abs_diff(&h) < 1e-6, "{:?} vs {:?}", f.entries, h.entries);
    assert!(matches!(ballester_povm(&bloch_pure_slice(), &[1.0, 0.7], None), Err(crate::Error::MatsumotoViolated(_))));
    let not_orthogonal = vec![vec![1.0, 1.0, 1.0]; 3];
    assert!(matches!(ballester_povm(&fam, &theta, Some(&not_orthogonal)), Err(crate::Error::InvalidOrthogonal)));
}

#[test]
fn default_rotation_is_orthogonal_with_uniform_last_column() {
    for n in 2..6 {
        let o = default_rotation(n);
        for i in 0..n {
            assert!((o[i][n - 1] - 1.0 / (n as f64).sqrt()).abs() < 1e-14);
            for j in 0..n {
                let dot: f64 = (0..n).map(|k| o[i][k] * o[j][k]).sum();
                assert!((dot - if i == j { 1.0 } else { 0.0 }).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn decomposition_identity_residuals() {
    assert!(decomposition_identity(&classical_family(), &[0.1]).unwrap() < 1e-10);
    assert!(decomposition_identity(&bloch_qubit(false), &BLOCH).unwrap() < 1e-7);
    assert!(decomposition_identity(&bloch_qubit(false).numerical(), &BLOCH).unwrap() < 1e-7);
    assert!(decomposition_identity(&random_pure_family(3, 3, 2), &[0.1, 0.2]).unwrap() < 1e-7);
}

#[test]
fn commuting_scheme_traces() {
    let f = [1.0, 2.0, 3.0];
    assert!((commuting_scheme_info(&f, 2, Scheme::Separate).unwrap() - 28.0).abs() < 1e-12);
    assert!((commuting_scheme_info(&f, 2, Scheme::Sequential).unwrap() - 72.0).abs() < 1e-12);
    assert_eq!(qubit_phase_scheme_info(&f, Scheme::Separate).unwrap(), 14.0);
    assert_eq!(qubit_phase_scheme_info(&f, Scheme::Sequential).unwrap(), 36.0);
    for n in [1usize, 2, 5, 10] {
        let ones = vec![1.0; n];
        let ratio = commuting_scheme_info(&ones, 3, Scheme::Sequential).unwrap()
            / commuting_scheme_info(&ones, 3, Scheme::Separate).unwrap();
        assert!((ratio - n as f64).abs() < 1e-10);
    }
    assert!(commuting_scheme_info(&[1.0, -1.0], 3, Scheme::Separate).is_err());
}

#[test]
fn commuting_scheme_traces_match_output_states() {
    let (d, slopes) = (3, vec![1.0, 2.0]);
    let theta = [0.1, 0.25];
    let seq = sld_info(&commuting_ud(d, slopes.clone()).unwrap(), &theta).unwrap().trace();
    let sep = sld_info(&commuting_ud_separate(d, slopes.clone()).unwrap(), &theta).unwrap().trace();
    assert!((seq - commuting_scheme_info(&slopes, d, Scheme::Sequential).unwrap()).abs() < 1e-6);
    assert!((sep - commuting_scheme_info(&slopes, d, Scheme::Separate).unwrap()).abs() < 1e-6);
}

#[test]
fn dimension_bound() {
    let v = dim_bound_check(&commuting_ud(3, vec![1.0]).unwrap(), &[0.1, 0.2]).unwrap();
    assert!(v.matsumoto_holds && v.independent && v.consistent);
    let v = dim_bound_check(&phase_on_psix(1, 0.0).unwrap(), &[0.1]).unwrap();
    assert!(v.consistent);
    for seed in 0..10 {
        let v = dim_bound_check(&random_pure_family(seed, 2, 3), &[0.1, 0.2, 0.3]).unwrap();
        assert!(!v.matsumoto_holds && v.consistent, "seed {seed}");
    }
}

#[test]
fn information_ordering_on_random_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for seed in 0..12 {
        let fam = random_family(seed, 2 + (seed as usize % 2), 1 + (seed as usize % 3));
        let theta = random_point(&mut rng, fam.param_count());
        let curve = spectral_curve(&fam, &theta, Gauge::FixedPhase).unwrap();
        let (h, cl, cu) = (sld_info_from_curve(&curve), c_l_from_curve(&curve), c_upsilon_from_curve(&curve));
        assert!(cl.min_eig_gap(&h).unwrap() > -1e-8);
        assert!(cu.min_eig_gap(&cl).unwrap() > -1e-8);
    }
}

#[test]
fn one_parameter_gap_formula() {
    for seed in 0..5 {
        let fam = random_family(50 + seed, 3, 1);
        let curve = spectral_curve(&fam, &[0.1], Gauge::FixedPhase).unwrap();
        let gap = c_upsilon_from_curve(&curve).get(0, 0) - sld_info_from_curve(&curve).get(0, 0);
        let conn = curve.connection(0);
        let mut formula = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                let (pa, pb) = (curve.probs[a], curve.probs[b]);
                formula += 8.0 * pa * pb / (pa + pb) * conn[(a, b)].norm_sqr();
            }
        }
        assert!((gap - formula).abs() < 1e-8);
        let diag_gap = c_upsilon_from_curve(&curve).get(0, 0) - c_l_from_curve(&curve).get(0, 0);
        let direct: f64 = (0..3).map(|i| 4.0 * curve.probs[i] * conn[(i, i)].norm_sqr()).sum();
        assert!((diag_gap - direct).abs() < 1e-10 && diag_gap >= 0.0);
    }
}

#[test]
fn parallel_gauge_reaches_cl() {
    for seed in 0..5 {
        let fam = random_family(70 + seed, 3, 1);
        let cu = c_upsilon(&fam, &[0.1], Gauge::Parallel).unwrap();
        let cl = c_l(&fam, &[0.1]).unwrap();
        assert!(cu.max_abs_diff(&cl) < 1e-8);
    }
}

#[test]
fn sld_equals_cl_only_without_rotation() {
    let classical = classical_family();
    assert!((c_l(&classical, &[0.1]).unwrap().get(0, 0) - sld_info(&classical, &[0.1]).unwrap().get(0, 0)).abs() < 1e-8);
    let rotating = random_family(5, 2, 1);
    let gap = c_l(&rotating, &[0.0]).unwrap().get(0, 0) - sld_info(&rotating, &[0.0]).unwrap().get(0, 0);
    assert!(gap > 1e-4);
}

#[test]
fn reparameterization_scales_every_metric() {
    // phi = 2 theta, so theta = phi / 2 and metrics scale by 1/4
    let fam = random_family(9, 2, 1);
    let slow = fam.rescaled(0.5);
    let (theta, phi) = ([0.15], [0.3]);
    let povm = random_povm(&mut ChaCha8Rng::seed_from_u64(1), 2, 3);
    let pairs = [
        (sld_info(&fam, &theta).unwrap(), sld_info(&slow, &phi).unwrap()),
        (c_l(&fam, &theta).unwrap(), c_l(&slow, &phi).unwrap()),
        (c_upsilon(&fam, &theta, Gauge::FixedPhase).unwrap(), c_upsilon(&slow, &phi, Gauge::FixedPhase).unwrap()),
        (kmb_info(&fam, &theta).unwrap(), kmb_info(&slow, &phi).unwrap()),
        (rld_info(&fam, &theta).unwrap(), rld_info(&slow, &phi).unwrap()),
        (fisher_info(&fam, &theta, &povm).unwrap(), fisher_info(&slow, &phi, &povm).unwrap()),
    ];
    for (a, b) in pairs {
        assert!((a.get(0, 0) / 4.0 - b.get(0, 0)).abs() < 1e-8, "{:?}", a.kind);
    }
    let slice = bloch_pure_slice();
    assert_eq!(
        check_matsumoto(&slice, &[1.0, 0.7]).unwrap().holds,
        check_matsumoto(&slice.rescaled(0.5), &[2.0, 1.4]).unwrap().holds
    );
}

#[test]
fn sld_is_additive_over_copies() {
    let fam = random_family(21, 2, 1);
    let one = sld_info(&fam, &[0.1]).unwrap().get(0, 0);
    let two = sld_info(&fam.tensor_square(), &[0.1]).unwrap().get(0, 0);
    assert!((two - 2.0 * one).abs() < 1e-6);
    let via_coeff = coefficient_info(&fam.numerical().tensor_square().numerical(), &[0.1], CoefficientKind::Sld).unwrap();
    assert!((via_coeff.get(0, 0) - 2.0 * one).abs() < 1e-6);
}

#[test]
fn kraus_bound_for_phase_gate() {
    let rho0 = crate::quantum::PureState::plus().density().into_matrix();
    let cmp = compare_kraus_bound(|t| Ok(vec![crate::quantum::phase_unitary(t)]), &rho0, 0.3).unwrap();
    assert!((cmp.c_e - 8.0 * PI * PI).abs() < 1e-6);
    assert!((cmp.c_l - 4.0 * PI * PI).abs() < 1e-6);
    assert!(cmp.c_e >= cmp.c_upsilon - 1e-6 || cmp.c_upsilon >= cmp.c_l - 1e-8);
}

#[test]
fn report_serializes_every_section() {
    let report = metric_report(&phase_on_psix(2, 0.0).unwrap(), &[0.1], Gauge::FixedPhase, Some(&measure_basis(Axis::X))).unwrap();
    let json = serde_json::to_value(&report).unwrap();
    for key in ["family", "theta", "gauge", "matrices", "gaps", "verdicts"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    assert!(report.unavailable.contains_key("KMB"));
    assert!(report.verdicts.ordering_holds);
    assert!(report.verdicts.braunstein_caves.unwrap().holds);
    assert!(!report.rows().is_empty());
}
