use super::*;
use crate::linalg::{CMatrix, C64, ZERO};
use crate::quantum::{pauli_x, pauli_y, pauli_z};
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn trace_rho_lambda_sq(curve: &SpectralCurve, j: usize) -> f64 {
    let s = sld_score_from_curve(curve, j);
    let rho = curve.state();
    (&(&rho * &s.lambda) * &s.lambda).trace().re
}

fn bloch_state(t: &[f64]) -> CMatrix {
    let (r, th, ph) = (t[0], t[1], t[2]);
    let n = [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()];
    let nsig = &(&pauli_x().scale_real(n[0]) + &pauli_y().scale_real(n[1])) + &pauli_z().scale_real(n[2]);
    (&CMatrix::identity(2) + &nsig.scale_real(r)).scale_real(0.5)
}

fn bloch_derivative(t: &[f64], j: usize) -> CMatrix {
    let (r, th, ph) = (t[0], t[1], t[2]);
    let dn = match j {
        0 => [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()],
        1 => [r * th.cos() * ph.cos(), r * th.cos() * ph.sin(), -r * th.sin()],
        _ => [-r * th.sin() * ph.sin(), r * th.sin() * ph.cos(), 0.0],
    };
    let s = &(&pauli_x().scale_real(dn[0]) + &pauli_y().scale_real(dn[1])) + &pauli_z().scale_real(dn[2]);
    s.scale_real(0.5)
}

const BLOCH_POINT: [f64; 3] = [0.5, 1.0, 0.7];

#[test]
fn phase_family_derivative_matches_closed_form() {
    let theta = 0.13;
    let fam = phase_on_psix(1, 0.0).unwrap();
    let e = C64::from_polar(1.0, 2.0 * PI * theta);
    let want = CMatrix::from_rows(&[vec![ZERO, (c(0.0, -PI)) * e.conj()], vec![c(0.0, PI) * e, ZERO]]);
    assert!(d_rho(&fam, &[theta], 0).unwrap().approx_eq(&want, 1e-12));
    assert!(d_rho(&fam.numerical(), &[theta], 0).unwrap().approx_eq(&want, 1e-7));
}

#[test]
fn constant_family_has_zero_derivative() {
    let fam = ParametricFamily::new("const", 2, 1, |_| Ok(CMatrix::diag_real(&[0.3, 0.7])));
    assert!(d_rho(&fam, &[0.2], 0).unwrap().max_abs() < 1e-12);
}

#[test]
fn bloch_finite_difference_matches_analytic_derivative() {
    let fam = bloch_qubit(false);
    assert!(fam.state_matrix(&BLOCH_POINT).unwrap().approx_eq(&bloch_state(&BLOCH_POINT), 1e-14));
    for j in 0..3 {
        let fd = d_rho(&fam, &BLOCH_POINT, j).unwrap();
        assert!(fd.approx_eq(&bloch_derivative(&BLOCH_POINT, j), 1e-6), "param {j}");
    }
}

#[test]
fn eigenvalue_derivatives_of_diagonal_family() {
    let fam = ParametricFamily::new("diag", 2, 1, |t| Ok(CMatrix::diag_real(&[t[0] * t[0], 1.0 - t[0] * t[0]])));
    let curve = spectral_curve(&fam, &[0.5], Gauge::FixedPhase).unwrap();
    // sorted descending: 1 - theta^2 first
    assert!((curve.probs[0] - 0.75).abs() < 1e-14);
    assert!((curve.prob_derivs[0][0] + 1.0).abs() < 1e-8);
    assert!((curve.prob_derivs[0][1] - 1.0).abs() < 1e-8);
    for v in &curve.vector_derivs[0] {
        assert!(crate::linalg::norm(v) < 1e-7);
    }
}

#[test]
fn degenerate_numerical_spectrum_is_rejected() {
    let fam = ParametricFamily::new("flat", 2, 1, |_| Ok(CMatrix::diag_real(&[0.5, 0.5])));
    assert!(matches!(
        spectral_curve(&fam, &[0.0], Gauge::FixedPhase),
        Err(crate::Error::DegenerateSpectrum { .. })
    ));
}

#[test]
fn curve_invariants_on_bloch_family() {
    for fam in [bloch_qubit(false), bloch_qubit(false).numerical(), bloch_qubit(true)] {
        let curve = spectral_curve(&fam, &BLOCH_POINT, Gauge::FixedPhase).unwrap();
        let (ortho, re, anti) = curve.invariant_residuals();
        assert!(ortho < 1e-9 && re < 1e-7 && anti < 1e-7, "{} {ortho} {re} {anti}", fam.name());
    }
}

#[test]
fn parallel_gauge_kills_diagonal_connection() {
    let fam = phase_on_psix(3, 0.1).unwrap();
    let curve = spectral_curve(&fam, &[0.21], Gauge::Parallel).unwrap();
    let conn = curve.connection(0);
    assert!(conn[(0, 0)].norm() < 1e-7 && conn[(1, 1)].norm() < 1e-7);
    assert!(matches!(
        spectral_curve(&bloch_qubit(false), &BLOCH_POINT, Gauge::Parallel),
        Err(crate::Error::GaugeUnsupported(3))
    ));
}

#[test]
fn sld_of_pure_phase_family() {
    for fam in [phase_on_psix(1, 0.0).unwrap(), phase_on_psix(1, 0.0).unwrap().numerical()] {
        let curve = spectral_curve(&fam, &[0.3], Gauge::FixedPhase).unwrap();
        assert!((trace_rho_lambda_sq(&curve, 0) - 4.0 * PI * PI).abs() < 1e-6, "{}", fam.name());
    }
}

#[test]
fn classical_family_score_is_diagonal() {
    let fam = ParametricFamily::new("classical", 3, 1, |t| {
        let a = 0.2 + 0.1 * t[0];
        Ok(CMatrix::diag_real(&[a, 0.5 - 0.3 * t[0], 0.3 + 0.2 * t[0]]))
    });
    let theta = [0.1];
    let score = sld_score(&fam, &theta, 0).unwrap();
    let diag = [0.1 / 0.21, -0.3 / 0.47, 0.2 / 0.32];
    let want = CMatrix::diag_real(&diag);
    // eigenbasis is a permutation of the standard basis: compare the diagonal set
    let mut got: Vec<f64> = (0..3).map(|i| score.lambda[(i, i)].re).collect();
    let mut exp: Vec<f64> = (0..3).map(|i| want[(i, i)].re).collect();
    got.sort_by(f64::total_cmp);
    exp.sort_by(f64::total_cmp);
    for (g, e) in got.iter().zip(&exp) {
        assert!((g - e).abs() < 1e-8);
    }
    let off: f64 = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).filter(|(i, j)| i != j).map(|(i, j)| score.lambda[(i, j)].norm()).sum();
    assert!(off < 1e-8);
}

#[test]
fn sld_solves_lyapunov_equation() {
    let fam = bloch_qubit(false);
    let rho = fam.state_matrix(&BLOCH_POINT).unwrap();
    for j in 0..3 {
        let score = sld_score(&fam, &BLOCH_POINT, j).unwrap();
        let drho = bloch_derivative(&BLOCH_POINT, j);
        assert!(score.residual(&rho, &drho) < 1e-7, "param {j}");
        assert!((&rho * &score.lambda).trace().norm() < 1e-8);
    }
}

#[test]
fn pure_qutrit_numerical_path_handles_zero_block() {
    let fam = commuting_ud(3, vec![1.0, 2.0]).unwrap();
    let theta = [0.3, -0.2];
    let analytic = spectral_curve(&fam, &theta, Gauge::FixedPhase).unwrap();
    let numerical = spectral_curve(&fam.numerical(), &theta, Gauge::FixedPhase).unwrap();
    for j in 0..2 {
        let a = trace_rho_lambda_sq(&analytic, j);
        let n = trace_rho_lambda_sq(&numerical, j);
        // (4/d) g'^2 with g' = 3
        assert!((a - 12.0).abs() < 1e-6 && (n - 12.0).abs() < 1e-6, "{a} {n}");
    }
}

#[test]
fn constant_phases_do_not_change_sld() {
    let base = bloch_qubit(false);
    let shifted = ParametricFamily::from_spectral("phased", 2, 3, move |t| {
        let mut sp = base.spectral_point(t)?;
        sp.vectors[0].iter_mut().for_each(|x| *x *= C64::from_polar(1.0, 0.9));
        sp.vectors[1].iter_mut().for_each(|x| *x *= C64::from_polar(1.0, -2.1));
        Ok(sp)
    });
    let a = spectral_curve(&bloch_qubit(false), &BLOCH_POINT, Gauge::FixedPhase).unwrap();
    let b = spectral_curve(&shifted, &BLOCH_POINT, Gauge::FixedPhase).unwrap();
    for j in 0..3 {
        assert!((trace_rho_lambda_sq(&a, j) - trace_rho_lambda_sq(&b, j)).abs() < 1e-8);
    }
}

#[test]
fn domain_boundary_is_reported() {
    let fam = bloch_qubit(false);
    assert!(matches!(d_rho(&fam, &[1.0, 1.0, 0.0], 0), Err(crate::Error::DomainBoundary(_))));
    assert!(spectral_curve(&fam, &[0.5, 0.0, 0.0], Gauge::FixedPhase).is_err());
}

#[test]
fn registry_resolves_names() {
    let none = Default::default();
    for name in FAMILY_NAMES {
        assert!(family_by_name(name, &none).is_ok(), "{name}");
    }
    assert!(family_by_name("nope", &none).is_err());
    let bad: std::collections::BTreeMap<String, f64> = [("zeta".to_string(), 1.0)].into();
    assert!(family_by_name("bloch_qubit", &bad).is_err());
}

#[test]
fn depolarized_spectral_data_matches_channel_output() {
    let fam = depol_qutrit_rotation(0.1, 0.2).unwrap();
    let sp = fam.spectral_point(&[0.4]).unwrap();
    let base = depol_qutrit_rotation(0.1, 0.0).unwrap();
    let ch = crate::quantum::make_depolarizing(3, 0.2).unwrap();
    let via_channel = ch.apply_operator(&base.state_matrix(&[0.4]).unwrap()).unwrap();
    assert!(sp.state().approx_eq(&via_channel, 1e-14));
    assert!(fam.state_matrix(&[0.4]).unwrap().approx_eq(&via_channel, 1e-14));
}
