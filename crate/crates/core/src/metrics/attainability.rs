use serde::Serialize;

use super::info::InfoMatrix;
use crate::error::{Error, Result};
use crate::linalg::{inner, inv_sqrt_psd, outer, sqrt_psd, CMatrix, CVector, C64};
use crate::models::{sld_score_from_curve, spectral_curve, Gauge, ParametricFamily};
use crate::quantum::Povm;
use crate::tol;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BcVerdict {
    pub holds: bool,
    /// Smallest eigenvalue of H - F.
    pub min_eigenvalue: f64,
}

/// Tests H - F >= -slack, with the slack relative to the size of H.
pub fn check_bc(fisher: &InfoMatrix, sld: &InfoMatrix) -> Result<BcVerdict> {
    let min = sld.min_eig_gap(fisher)?;
    let scale = sld.trace().abs().max(1.0);
    Ok(BcVerdict { holds: min >= -tol::MATRIX_ORDER * scale, min_eigenvalue: min })
}

#[derive(Debug, Clone, Serialize)]
pub struct EqualityVerdict {
    /// residuals[j][m]: relative least-squares residual for parameter j, outcome m.
    pub residuals: Vec<Vec<f64>>,
    pub satisfied: Vec<Vec<bool>>,
    pub all_satisfied: bool,
}

/// Relative residual of the best real fit A ~ xi B.
fn real_proportionality_residual(a: &CMatrix, b: &CMatrix) -> f64 {
    let (na, nb) = (a.frobenius_norm(), b.frobenius_norm());
    if nb < 1e-12 {
        return if na < 1e-12 { 0.0 } else { 1.0 };
    }
    let xi = b.hs_inner(a).re / (nb * nb);
    let res = (a - &b.scale_real(xi)).frobenius_norm();
    res / na.max(xi.abs() * nb)
}

/// For each parameter j and outcome m, tests whether
/// M_m^{1/2} lambda^j rho^{1/2} is a real multiple of M_m^{1/2} rho^{1/2}.
pub fn check_bc_equality(fam: &ParametricFamily, theta: &[f64], povm: &Povm) -> Result<EqualityVerdict> {
    let curve = spectral_curve(fam, theta, Gauge::FixedPhase)?;
    let rho_half = sqrt_psd(&curve.state())?;
    let roots: Vec<CMatrix> = povm.elements().iter().map(sqrt_psd).collect::<Result<_>>()?;
    let mut residuals = Vec::new();
    for j in 0..fam.param_count() {
        let lam = sld_score_from_curve(&curve, j).lambda;
        let lam_rho = &lam * &rho_half;
        residuals.push(roots.iter().map(|mh| real_proportionality_residual(&(mh * &lam_rho), &(mh * &rho_half))).collect::<Vec<_>>());
    }
    let satisfied: Vec<Vec<bool>> =
        residuals.iter().map(|r| r.iter().map(|&x| x < tol::EQUALITY_RESIDUAL).collect()).collect();
    let all_satisfied = satisfied.iter().flatten().all(|&b| b);
    Ok(EqualityVerdict { residuals, satisfied, all_satisfied })
}

/// psi(theta) and its partial derivatives by central differences.
pub fn pure_derivatives(fam: &ParametricFamily, theta: &[f64]) -> Result<(CVector, Vec<CVector>)> {
    if !fam.is_pure() {
        return Err(Error::NotPure);
    }
    fam.check_interior(theta, tol::FD_STEP)?;
    let psi = fam.psi(theta)?;
    let h = tol::FD_STEP;
    let derivs = (0..fam.param_count())
        .map(|j| {
            let mut tp = theta.to_vec();
            let mut tm = theta.to_vec();
            tp[j] += h;
            tm[j] -= h;
            let (p, m) = (fam.psi(&tp)?, fam.psi(&tm)?);
            Ok(p.iter().zip(&m).map(|(a, b)| (a - b) / (2.0 * h)).collect())
        })
        .collect::<Result<_>>()?;
    Ok((psi, derivs))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct MatsumotoVerdict {
    pub holds: bool,
    /// max_{j<k} |Im <psi^{(j)}|psi^{(k)}>|
    pub max_imag: f64,
}

pub fn check_matsumoto(fam: &ParametricFamily, theta: &[f64]) -> Result<MatsumotoVerdict> {
    let (_, d) = pure_derivatives(fam, theta)?;
    let mut max_imag = 0.0f64;
    for j in 0..d.len() {
        for k in (j + 1)..d.len() {
            max_imag = max_imag.max(inner(&d[j], &d[k]).im.abs());
        }
    }
    Ok(MatsumotoVerdict { holds: max_imag < tol::MATSUMOTO, max_imag })
}

/// l_j = lambda^j psi = 2(|psi^{(j)}> + |psi><psi^{(j)}|psi>).
fn score_vectors(psi: &[C64], derivs: &[CVector]) -> Vec<CVector> {
    derivs
        .iter()
        .map(|dj| {
            let ov = inner(dj, psi);
            dj.iter().zip(psi).map(|(a, b)| (a + b * ov) * 2.0).collect()
        })
        .collect()
}

/// SLD information of a pure family at theta, Re <l_j|l_k>.
pub fn pure_sld_info(fam: &ParametricFamily, theta: &[f64]) -> Result<InfoMatrix> {
    let (psi, d) = pure_derivatives(fam, theta)?;
    let l = score_vectors(&psi, &d);
    let entries = (0..l.len()).map(|j| (0..l.len()).map(|k| inner(&l[j], &l[k]).re).collect()).collect();
    Ok(InfoMatrix::new(super::InfoKind::Sld, entries))
}

/// n x n orthogonal matrix whose last column is (1, ..., 1)/sqrt(n), built by
/// Gram-Schmidt from the all-ones vector followed by the standard basis.
pub fn default_rotation(n: usize) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = vec![vec![1.0 / (n as f64).sqrt(); n]];
    for k in 0..n {
        if basis.len() == n {
            break;
        }
        let mut v = vec![0.0; n];
        v[k] = 1.0;
        for b in &basis {
            let dot: f64 = b.iter().zip(&v).map(|(x, y)| x * y).sum();
            v.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            basis.push(v.iter().map(|x| x / norm).collect());
        }
    }
    basis.rotate_left(1);
    // basis holds the columns; transpose into rows
    (0..n).map(|i| (0..n).map(|j| basis[j][i]).collect()).collect()
}

fn check_rotation(o: &[Vec<f64>], n: usize) -> Result<()> {
    if o.len() != n || o.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidOrthogonal);
    }
    for i in 0..n {
        for j in 0..n {
            let dot: f64 = (0..n).map(|k| o[k][i] * o[k][j]).sum();
            let want = if i == j { 1.0 } else { 0.0 };
            if (dot - want).abs() > tol::POVM {
                return Err(Error::InvalidOrthogonal);
            }
        }
    }
    if o.iter().any(|r| r[n - 1].abs() < 1e-12) {
        return Err(Error::InvalidOrthogonal);
    }
    Ok(())
}

/// Measurement attaining the SLD bound on a pure family that satisfies the
/// Matsumoto condition: p + 1 rank-one elements |b_m><b_m| plus the
/// complement I - sum_m |b_m><b_m|.
pub fn ballester_povm(fam: &ParametricFamily, theta: &[f64], rotation: Option<&[Vec<f64>]>) -> Result<Povm> {
    let verdict = check_matsumoto(fam, theta)?;
    if !verdict.holds {
        return Err(Error::MatsumotoViolated(verdict.max_imag));
    }
    let p = fam.param_count();
    let default;
    let o = match rotation {
        Some(o) => o,
        None => {
            default = default_rotation(p + 1);
            &default
        }
    };
    check_rotation(o, p + 1)?;
    let (psi, derivs) = pure_derivatives(fam, theta)?;
    let l = score_vectors(&psi, &derivs);
    let h = CMatrix::from_fn(p, p, |j, k| C64::new(inner(&l[j], &l[k]).re, 0.0));
    let h_inv_half = inv_sqrt_psd(&h, tol::NULLSPACE)?;
    let d = psi.len();
    let mut v: Vec<CVector> = (0..p)
        .map(|m| {
            let mut out = vec![C64::new(0.0, 0.0); d];
            for (n, ln) in l.iter().enumerate() {
                let c = h_inv_half[(m, n)];
                out.iter_mut().zip(ln).for_each(|(x, y)| *x += c * y);
            }
            out
        })
        .collect();
    v.push(psi);
    let mut elements = Vec::with_capacity(p + 2);
    let mut sum = CMatrix::zeros(d, d);
    for row in o.iter() {
        let mut b = vec![C64::new(0.0, 0.0); d];
        for (coef, vn) in row.iter().zip(&v) {
            b.iter_mut().zip(vn).for_each(|(x, y)| *x += y * *coef);
        }
        let e = outer(&b, &b);
        sum = &sum + &e;
        elements.push(e);
    }
    elements.push((&CMatrix::identity(d) - &sum).hermitian_part());
    Povm::new(elements)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DimBoundVerdict {
    pub params: usize,
    pub dim: usize,
    pub matsumoto_holds: bool,
    pub max_imag: f64,
    /// Whether the SLD information is nonsingular (R-linearly independent scores).
    pub independent: bool,
    /// False only if the Matsumoto condition holds for independent
    /// derivatives with more than d - 1 parameters.
    pub consistent: bool,
}

pub fn dim_bound_check(fam: &ParametricFamily, theta: &[f64]) -> Result<DimBoundVerdict> {
    let m = check_matsumoto(fam, theta)?;
    let h = pure_sld_info(fam, theta)?;
    let scale = h.trace().max(1e-300);
    let independent = h.min_eigenvalue()? > 1e-8 * scale;
    let (p, d) = (fam.param_count(), fam.dim());
    Ok(DimBoundVerdict {
        params: p,
        dim: d,
        matsumoto_holds: m.holds,
        max_imag: m.max_imag,
        independent,
        consistent: !(m.holds && independent && p > d - 1),
    })
}
