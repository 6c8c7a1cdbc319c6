use serde::Serialize;

use super::state::{pauli_x, pauli_y, pauli_z, DensityMatrix};
use crate::error::{Error, Result};
use crate::linalg::{tensor, CMatrix, C64, ZERO};
use crate::tol;

/// Completely positive trace-preserving map in Kraus form.
#[derive(Debug, Clone, Serialize)]
pub struct KrausChannel {
    name: String,
    ops: Vec<CMatrix>,
}

/// Names accepted by [`channel_by_name`].
pub const CHANNEL_NAMES: [&str; 6] = ["depolarizing", "pauli", "gen_pauli", "amp_damp", "gen_damp", "phase_unitary"];

impl KrausChannel {
    pub fn new(name: impl Into<String>, ops: Vec<CMatrix>) -> Result<Self> {
        let first = ops.first().ok_or_else(|| Error::InvalidChannel("no Kraus operators".into()))?;
        let (d_out, d_in) = (first.rows(), first.cols());
        let mut sum = CMatrix::zeros(d_in, d_in);
        for e in &ops {
            if e.rows() != d_out || e.cols() != d_in {
                return Err(Error::DimensionMismatch("Kraus operators differ in shape".into()));
            }
            sum = &sum + &(&e.adjoint() * e);
        }
        let dev = (&sum - &CMatrix::identity(d_in)).max_abs();
        if dev > tol::POVM {
            return Err(Error::InvalidChannel(format!("sum E^dagger E deviates from I by {dev:.3e}")));
        }
        Ok(KrausChannel { name: name.into(), ops })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.ops
    }

    pub fn dim_in(&self) -> usize {
        self.ops[0].cols()
    }

    pub fn dim_out(&self) -> usize {
        self.ops[0].rows()
    }

    /// Sum_k E_k X E_k^dagger for an arbitrary operator X.
    pub fn apply_operator(&self, x: &CMatrix) -> Result<CMatrix> {
        if x.rows() != self.dim_in() || x.cols() != self.dim_in() {
            return Err(Error::DimensionMismatch(format!(
                "operator is {}x{}, channel input dim {}",
                x.rows(),
                x.cols(),
                self.dim_in()
            )));
        }
        let d = self.dim_out();
        Ok(self.ops.iter().fold(CMatrix::zeros(d, d), |acc, e| &acc + &(&(e * x) * &e.adjoint())))
    }

    /// Channel that applies `self` first and then `after`.
    pub fn then(&self, after: &KrausChannel) -> Result<KrausChannel> {
        if after.dim_in() != self.dim_out() {
            return Err(Error::DimensionMismatch("channel composition".into()));
        }
        let ops = after.ops.iter().flat_map(|b| self.ops.iter().map(move |a| b * a)).collect();
        Ok(KrausChannel { name: format!("{}*{}", after.name, self.name), ops })
    }

    pub fn completeness_error(&self) -> f64 {
        let d = self.dim_in();
        let sum = self.ops.iter().fold(CMatrix::zeros(d, d), |acc, e| &acc + &(&e.adjoint() * e));
        (&sum - &CMatrix::identity(d)).max_abs()
    }
}

pub fn apply(ch: &KrausChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    Ok(DensityMatrix::from_matrix_unchecked(ch.apply_operator(rho.matrix())?.hermitian_part()))
}

/// I_d (x) E, acting on an ancilla of dimension d and the channel's system.
pub fn extend(ch: &KrausChannel, ancilla_dim: usize) -> KrausChannel {
    let id = CMatrix::identity(ancilla_dim);
    KrausChannel { name: format!("id{ancilla_dim}x{}", ch.name), ops: ch.ops.iter().map(|e| tensor(&id, e)).collect() }
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(format!("{name} = {x} is outside [0, 1]")))
    }
}

fn check_distribution(probs: &[f64]) -> Result<()> {
    if probs.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(Error::InvalidProbability(format!("{probs:?} has entries outside [0, 1]")));
    }
    let s: f64 = probs.iter().sum();
    if (s - 1.0).abs() > tol::RECONSTRUCTION {
        return Err(Error::InvalidProbability(format!("{probs:?} sums to {s}")));
    }
    Ok(())
}

/// rho -> (1 - eps) rho + eps I/d.
pub fn make_depolarizing(d: usize, eps: f64) -> Result<KrausChannel> {
    check_unit("eps", eps)?;
    let ch = if d == 2 {
        let q = eps / 4.0;
        make_pauli([1.0 - 3.0 * q, q, q, q])?
    } else {
        let n = (d * d) as f64;
        let mut probs = vec![eps / n; d * d];
        probs[0] = 1.0 - eps + eps / n;
        make_generalized_pauli(&probs, None)?
    };
    Ok(KrausChannel { name: "depolarizing".into(), ops: ch.ops })
}

/// rho -> sum_i p_i sigma_i rho sigma_i with sigma_0 = I.
pub fn make_pauli(probs: [f64; 4]) -> Result<KrausChannel> {
    check_distribution(&probs)?;
    let sigmas = [CMatrix::identity(2), pauli_x(), pauli_y(), pauli_z()];
    let ops = probs.iter().zip(sigmas).filter(|(p, _)| **p > 0.0).map(|(p, s)| s.scale_real(p.sqrt())).collect();
    KrausChannel::new("pauli", ops)
}

/// Clock-and-shift unitaries X^a Z^b, indexed k = a d + b.
pub fn clock_shift_unitaries(d: usize) -> Vec<CMatrix> {
    let shift = CMatrix::from_fn(d, d, |i, j| if i == (j + 1) % d { C64::new(1.0, 0.0) } else { ZERO });
    let omega = 2.0 * std::f64::consts::PI / d as f64;
    let clock = CMatrix::diag(&(0..d).map(|j| C64::from_polar(1.0, omega * j as f64)).collect::<Vec<_>>());
    let mut out = Vec::with_capacity(d * d);
    for a in 0..d as u32 {
        let xa = shift.pow(a);
        for b in 0..d as u32 {
            out.push(&xa * &clock.pow(b));
        }
    }
    out
}

/// rho -> sum_k p_k U_k rho U_k^dagger with tr(U_k^dagger U_l) = d delta_kl.
/// Defaults to the clock-and-shift basis when no unitaries are given.
pub fn make_generalized_pauli(probs: &[f64], unitaries: Option<Vec<CMatrix>>) -> Result<KrausChannel> {
    check_distribution(probs)?;
    let d = (probs.len() as f64).sqrt().round() as usize;
    if d * d != probs.len() || d == 0 {
        return Err(Error::InvalidProbability(format!("{} probabilities is not a square count", probs.len())));
    }
    let us = unitaries.unwrap_or_else(|| clock_shift_unitaries(d));
    if us.len() != probs.len() {
        return Err(Error::DimensionMismatch(format!("{} unitaries for {} probabilities", us.len(), probs.len())));
    }
    for (k, uk) in us.iter().enumerate() {
        if uk.rows() != d || uk.cols() != d {
            return Err(Error::DimensionMismatch(format!("unitary {k} is not {d}x{d}")));
        }
        for (l, ul) in us.iter().enumerate() {
            let want = if k == l { d as f64 } else { 0.0 };
            let got = uk.hs_inner(ul);
            if (got - C64::new(want, 0.0)).norm() > tol::RECONSTRUCTION * d as f64 {
                return Err(Error::NonOrthogonalUnitaries(format!("tr(U_{k}^dagger U_{l}) = {got}")));
            }
        }
    }
    let ops = probs.iter().zip(us).filter(|(p, _)| **p > 0.0).map(|(p, u)| u.scale_real(p.sqrt())).collect();
    KrausChannel::new("gen_pauli", ops)
}

pub fn make_amplitude_damping(gamma: f64) -> Result<KrausChannel> {
    check_unit("gamma", gamma)?;
    let e0 = CMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, (1.0 - gamma).sqrt()]]);
    let e1 = CMatrix::from_real_rows(&[vec![0.0, gamma.sqrt()], vec![0.0, 0.0]]);
    KrausChannel::new("amp_damp", vec![e0, e1])
}

/// Amplitude damping towards a thermal state; `p` weights the decay to |0>.
pub fn make_generalized_damping(gamma: f64, p: f64) -> Result<KrausChannel> {
    check_unit("gamma", gamma)?;
    check_unit("p", p)?;
    let (a, b) = (p.sqrt(), (1.0 - p).sqrt());
    let (g, h) = (gamma.sqrt(), (1.0 - gamma).sqrt());
    let ops = vec![
        CMatrix::from_real_rows(&[vec![a, 0.0], vec![0.0, a * h]]),
        CMatrix::from_real_rows(&[vec![0.0, a * g], vec![0.0, 0.0]]),
        CMatrix::from_real_rows(&[vec![b * h, 0.0], vec![0.0, b]]),
        CMatrix::from_real_rows(&[vec![0.0, 0.0], vec![b * g, 0.0]]),
    ];
    KrausChannel::new("gen_damp", ops)
}

/// U_theta = diag(1, exp(i 2 pi theta)).
pub fn phase_unitary(theta: f64) -> CMatrix {
    CMatrix::diag(&[C64::new(1.0, 0.0), C64::from_polar(1.0, 2.0 * std::f64::consts::PI * theta)])
}

pub fn make_phase_unitary(theta: f64) -> KrausChannel {
    KrausChannel { name: "phase_unitary".into(), ops: vec![phase_unitary(theta)] }
}

/// Builds a channel from its registry name and numeric parameters.
///
/// depolarizing: d, eps; pauli: p0..p3; gen_pauli: d^2 probabilities;
/// amp_damp: gamma; gen_damp: gamma, p; phase_unitary: theta.
pub fn channel_by_name(name: &str, params: &[f64]) -> Result<KrausChannel> {
    let want = |n: usize| {
        if params.len() == n {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("channel '{name}' takes {n} parameters, got {}", params.len())))
        }
    };
    match name {
        "depolarizing" => {
            want(2)?;
            let d = params[0];
            if d < 1.0 || d.fract() != 0.0 {
                return Err(Error::InvalidArgument(format!("dimension {d} is not a positive integer")));
            }
            make_depolarizing(d as usize, params[1])
        }
        "pauli" => {
            want(4)?;
            make_pauli([params[0], params[1], params[2], params[3]])
        }
        "gen_pauli" => make_generalized_pauli(params, None),
        "amp_damp" => {
            want(1)?;
            make_amplitude_damping(params[0])
        }
        "gen_damp" => {
            want(2)?;
            make_generalized_damping(params[0], params[1])
        }
        "phase_unitary" => {
            want(1)?;
            Ok(make_phase_unitary(params[0]))
        }
        _ => Err(Error::Unknown { kind: "channel", name: name.into(), known: CHANNEL_NAMES.join(", ") }),
    }
}
