use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use super::family::{ParametricFamily, SpectralPoint};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector, C64, ZERO};

pub const FAMILY_NAMES: [&str; 4] = ["phase_on_psix", "bloch_qubit", "depol_qutrit_rotation", "commuting_ud"];

/// The phase gate applied `uses` times to (|0> + |1>)/sqrt(2), each use
/// followed by depolarizing noise of strength r.
///
/// rho = 1/2 [[1, a e^{-i 2 pi m theta}], [a e^{i 2 pi m theta}, 1]], a = (1-r)^m.
pub fn phase_on_psix(uses: u32, r: f64) -> Result<ParametricFamily> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::InvalidArgument(format!("noise level r = {r} outside [0, 1)")));
    }
    let m = uses as f64;
    let a = (1.0 - r).powi(uses as i32);
    let spectral = move |t: &[f64]| {
        let e = C64::from_polar(FRAC_1_SQRT_2, 2.0 * PI * m * t[0]);
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        Ok(SpectralPoint { probs: vec![(1.0 + a) / 2.0, (1.0 - a) / 2.0], vectors: vec![vec![h, e], vec![h, -e]] })
    };
    let deriv = move |t: &[f64], _j: usize| {
        let w = 2.0 * PI * m;
        let off = C64::from_polar(a * w / 2.0, w * t[0]) * C64::new(0.0, 1.0);
        Ok(CMatrix::from_rows(&[vec![ZERO, off.conj()], vec![off, ZERO]]))
    };
    let name = format!("phase_on_psix(m={uses},r={r})");
    let fam = if r == 0.0 {
        ParametricFamily::pure(name, 2, 1, move |t| {
            Ok(vec![C64::new(FRAC_1_SQRT_2, 0.0), C64::from_polar(FRAC_1_SQRT_2, 2.0 * PI * m * t[0])])
        })
    } else {
        ParametricFamily::from_spectral(name, 2, 1, spectral)
    };
    Ok(fam.with_derivative(deriv))
}

/// Qubit states (I + r n.sigma)/2 in spherical coordinates (r, theta, phi).
///
/// Eigenvectors carry phases e^{-+i phi/2}; with `shifted` they are further
/// multiplied by e^{-i phi/2}.
pub fn bloch_qubit(shifted: bool) -> ParametricFamily {
    let spectral = move |t: &[f64]| {
        let (r, th, ph) = (t[0], t[1], t[2]);
        let (c, s) = ((th / 2.0).cos(), (th / 2.0).sin());
        let shift = if shifted { -ph / 2.0 } else { 0.0 };
        let em = C64::from_polar(1.0, -ph / 2.0 + shift);
        let ep = C64::from_polar(1.0, ph / 2.0 + shift);
        Ok(SpectralPoint {
            probs: vec![(1.0 + r) / 2.0, (1.0 - r) / 2.0],
            vectors: vec![vec![em * c, ep * s], vec![em * s, -ep * c]],
        })
    };
    let name = if shifted { "bloch_qubit(shifted)" } else { "bloch_qubit" };
    ParametricFamily::from_spectral(name, 2, 3, spectral).with_domain(vec![
        (0.0, 1.0),
        (0.0, PI),
        (f64::NEG_INFINITY, f64::INFINITY),
    ])
}

/// Qutrit with spectrum (1-2 delta, delta, delta) whose degenerate eigenvectors
/// rotate with theta, followed by depolarizing noise eps. The state itself does
/// not depend on theta; only the chosen eigenbasis does.
pub fn depol_qutrit_rotation(delta: f64, eps: f64) -> Result<ParametricFamily> {
    if !(0.0..=1.0 / 3.0).contains(&delta) {
        return Err(Error::InvalidArgument(format!("delta = {delta} outside [0, 1/3]")));
    }
    let spectral = move |t: &[f64]| {
        let (c, s) = (t[0].cos(), t[0].sin());
        let r = |x: f64| C64::new(x, 0.0);
        Ok(SpectralPoint {
            probs: vec![1.0 - 2.0 * delta, delta, delta],
            vectors: vec![vec![r(1.0), ZERO, ZERO], vec![ZERO, r(c), r(s)], vec![ZERO, r(-s), r(c)]],
        })
    };
    let base = ParametricFamily::from_spectral(format!("depol_qutrit_rotation(delta={delta})"), 3, 1, spectral);
    if eps == 0.0 {
        Ok(base)
    } else {
        base.depolarized(eps)
    }
}

/// Diagonal generalized Gell-Mann generators t_1..t_{d-1}, tr(t_k t_l) = delta_kl.
pub fn diagonal_generators(d: usize) -> Vec<Vec<f64>> {
    (1..d)
        .map(|k| {
            let norm = ((k * (k + 1)) as f64).sqrt();
            (0..d)
                .map(|i| match i.cmp(&k) {
                    std::cmp::Ordering::Less => 1.0 / norm,
                    std::cmp::Ordering::Equal => -(k as f64) / norm,
                    std::cmp::Ordering::Greater => 0.0,
                })
                .collect()
        })
        .collect()
}

/// exp(i sum_k g_k t_k) applied to the uniform superposition.
fn commuting_output(d: usize, g: &[f64]) -> CVector {
    let ts = diagonal_generators(d);
    let amp = 1.0 / (d as f64).sqrt();
    (0..d).map(|i| C64::from_polar(amp, g.iter().zip(&ts).map(|(gk, t)| gk * t[i]).sum())).collect()
}

/// Pure output of n commuting channels applied one after another to the
/// uniform superposition on C^d; channel j contributes f_j(theta_k) =
/// slopes[j] * theta_k to each of the d-1 diagonal generators.
pub fn commuting_ud(d: usize, slopes: Vec<f64>) -> Result<ParametricFamily> {
    if d < 2 || slopes.is_empty() {
        return Err(Error::InvalidArgument("commuting_ud needs d >= 2 and at least one channel".into()));
    }
    let total: f64 = slopes.iter().sum();
    let name = format!("commuting_ud(d={d},n={})", slopes.len());
    Ok(ParametricFamily::pure(name, d, d - 1, move |t| {
        let g: Vec<f64> = t.iter().map(|x| total * x).collect();
        Ok(commuting_output(d, &g))
    }))
}

/// The same channels used in parallel, one per copy of the probe: the output
/// is the tensor product of the single-channel outputs.
pub fn commuting_ud_separate(d: usize, slopes: Vec<f64>) -> Result<ParametricFamily> {
    if d < 2 || slopes.is_empty() {
        return Err(Error::InvalidArgument("commuting_ud needs d >= 2 and at least one channel".into()));
    }
    let n = slopes.len();
    let dim = d.pow(n as u32);
    let name = format!("commuting_ud_separate(d={d},n={n})");
    Ok(ParametricFamily::pure(name, dim, d - 1, move |t| {
        let mut psi = vec![C64::new(1.0, 0.0)];
        for f in &slopes {
            let g: Vec<f64> = t.iter().map(|x| f * x).collect();
            psi = crate::linalg::tensor_vec(&psi, &commuting_output(d, &g));
        }
        Ok(psi)
    }))
}

fn get(fixed: &BTreeMap<String, f64>, key: &str, default: f64) -> f64 {
    fixed.get(key).copied().unwrap_or(default)
}

fn check_keys(fixed: &BTreeMap<String, f64>, allowed: &[&str], family: &str) -> Result<()> {
    for k in fixed.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(Error::InvalidArgument(format!(
                "family '{family}' has no constant '{k}' (accepted: {})",
                allowed.join(", ")
            )));
        }
    }
    Ok(())
}

fn as_count(x: f64, what: &str) -> Result<usize> {
    if x >= 1.0 && x.fract() == 0.0 && x < 1e6 {
        Ok(x as usize)
    } else {
        Err(Error::InvalidArgument(format!("{what} = {x} is not a positive integer")))
    }
}

/// Built-in family by name. Constants:
/// phase_on_psix: m (uses, 1), r (noise, 0);
/// bloch_qubit: shift (0 or 1);
/// depol_qutrit_rotation: delta (0.1), eps (0);
/// commuting_ud: d (3), n (2), separate (0 or 1).
pub fn family_by_name(name: &str, fixed: &BTreeMap<String, f64>) -> Result<ParametricFamily> {
    match name {
        "phase_on_psix" => {
            check_keys(fixed, &["m", "r"], name)?;
            phase_on_psix(as_count(get(fixed, "m", 1.0), "m")? as u32, get(fixed, "r", 0.0))
        }
        "bloch_qubit" => {
            check_keys(fixed, &["shift"], name)?;
            Ok(bloch_qubit(get(fixed, "shift", 0.0) != 0.0))
        }
        "depol_qutrit_rotation" => {
            check_keys(fixed, &["delta", "eps"], name)?;
            depol_qutrit_rotation(get(fixed, "delta", 0.1), get(fixed, "eps", 0.0))
        }
        "commuting_ud" => {
            check_keys(fixed, &["d", "n", "separate"], name)?;
            let d = as_count(get(fixed, "d", 3.0), "d")?;
            let n = as_count(get(fixed, "n", 2.0), "n")?;
            if get(fixed, "separate", 0.0) != 0.0 {
                commuting_ud_separate(d, vec![1.0; n])
            } else {
                commuting_ud(d, vec![1.0; n])
            }
        }
        _ => Err(Error::Unknown { kind: "family", name: name.into(), known: FAMILY_NAMES.join(", ") }),
    }
}
