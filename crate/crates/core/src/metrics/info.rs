use serde::{Deserialize, Serialize};

use super::coefficient::CoefficientKind;
use crate::error::{Error, Result};
use crate::linalg::{herm_eig, inner, min_eigenvalue_real, CMatrix};
use crate::models::{d_rho, sld_score_from_curve, spectral_curve, Gauge, ParametricFamily, SpectralCurve};
use crate::quantum::{born, Povm};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InfoKind {
    Fisher,
    #[serde(rename = "SLD")]
    Sld,
    CUpsilon,
    CL,
    #[serde(rename = "KMB")]
    Kmb,
    #[serde(rename = "RLD")]
    Rld,
}

impl InfoKind {
    pub fn label(&self) -> &'static str {
        match self {
            InfoKind::Fisher => "Fisher",
            InfoKind::Sld => "SLD",
            InfoKind::CUpsilon => "CUpsilon",
            InfoKind::CL => "CL",
            InfoKind::Kmb => "KMB",
            InfoKind::Rld => "RLD",
        }
    }
}

/// Real symmetric p x p information matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfoMatrix {
    pub kind: InfoKind,
    pub entries: Vec<Vec<f64>>,
}

impl InfoMatrix {
    pub fn new(kind: InfoKind, entries: Vec<Vec<f64>>) -> Self {
        InfoMatrix { kind, entries }
    }

    pub fn zeros(kind: InfoKind, p: usize) -> Self {
        InfoMatrix { kind, entries: vec![vec![0.0; p]; p] }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.entries[i][i]).sum()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.entries[i][i]).collect()
    }

    pub fn scaled(&self, s: f64) -> Self {
        InfoMatrix { kind: self.kind, entries: self.entries.iter().map(|r| r.iter().map(|x| x * s).collect()).collect() }
    }

    /// Entrywise self - other.
    pub fn minus(&self, other: &InfoMatrix) -> Vec<Vec<f64>> {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect()
    }

    pub fn max_abs_diff(&self, other: &InfoMatrix) -> f64 {
        self.minus(other).iter().flatten().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff_entries(&self, other: &[Vec<f64>]) -> f64 {
        self.entries.iter().flatten().zip(other.iter().flatten()).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Smallest eigenvalue of self - other; nonnegative means self >= other.
    pub fn min_eig_gap(&self, other: &InfoMatrix) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!("{}x{} vs {}x{}", self.dim(), self.dim(), other.dim(), other.dim())));
        }
        min_eigenvalue_real(&self.minus(other))
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        min_eigenvalue_real(&self.entries)
    }

    pub fn symmetry_error(&self) -> f64 {
        let p = self.dim();
        let mut worst = 0.0f64;
        for i in 0..p {
            for j in 0..p {
                worst = worst.max((self.entries[i][j] - self.entries[j][i]).abs());
            }
        }
        worst
    }
}

fn symmetrize(mut m: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let p = m.len();
    for i in 0..p {
        for j in (i + 1)..p {
            let avg = 0.5 * (m[i][j] + m[j][i]);
            m[i][j] = avg;
            m[j][i] = avg;
        }
    }
    m
}

/// sum_m (d_j p_m)(d_k p_m)/p_m over outcomes with p_m >= floor.
pub fn classical_fisher(probs: &[f64], derivs: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let p = derivs.len();
    let mut f = vec![vec![0.0; p]; p];
    for (m, &pm) in probs.iter().enumerate() {
        if pm < tol::PROB_FLOOR {
            continue;
        }
        for j in 0..p {
            for k in 0..p {
                f[j][k] += derivs[j][m] * derivs[k][m] / pm;
            }
        }
    }
    f
}

/// Fisher information of the outcome distribution of `povm` on the family.
pub fn fisher_info(fam: &ParametricFamily, theta: &[f64], povm: &Povm) -> Result<InfoMatrix> {
    let rho = fam.state(theta)?;
    let probs = born(&rho, povm)?;
    let derivs = (0..fam.param_count())
        .map(|j| {
            let dr = d_rho(fam, theta, j)?;
            Ok(povm.elements().iter().map(|m| dr.hs_inner(m).re).collect())
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    Ok(InfoMatrix::new(InfoKind::Fisher, symmetrize(classical_fisher(&probs, &derivs))))
}

/// Fisher information of the eigenvalue distribution p_k(theta).
pub fn eigenvalue_fisher(curve: &SpectralCurve) -> Vec<Vec<f64>> {
    classical_fisher(&curve.probs, &curve.prob_derivs)
}

/// 4 Re sum_{a<b} weight(p_a, p_b) <w_a^{(k)}|w_b><w_b|w_a^{(l)}>.
fn pair_sum(curve: &SpectralCurve, weight: impl Fn(f64, f64) -> f64) -> Vec<Vec<f64>> {
    let p = curve.param_count();
    let d = curve.dim();
    let conns: Vec<CMatrix> = (0..p).map(|j| curve.connection(j)).collect();
    let mut out = vec![vec![0.0; p]; p];
    for a in 0..d {
        for b in (a + 1)..d {
            let (pa, pb) = (curve.probs[a], curve.probs[b]);
            if pa + pb <= tol::PROB_FLOOR {
                continue;
            }
            let w = weight(pa, pb);
            for k in 0..p {
                for l in 0..p {
                    out[k][l] += 4.0 * w * (conns[k][(a, b)] * conns[l][(a, b)].conj()).re;
                }
            }
        }
    }
    out
}

fn add(a: Vec<Vec<f64>>, b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    a.into_iter().zip(b).map(|(ra, rb)| ra.into_iter().zip(rb).map(|(x, y)| x + y).collect()).collect()
}

pub fn sld_info_from_curve(curve: &SpectralCurve) -> InfoMatrix {
    let pairs = pair_sum(curve, |a, b| (a - b).powi(2) / (a + b));
    InfoMatrix::new(InfoKind::Sld, symmetrize(add(eigenvalue_fisher(curve), &pairs)))
}

pub fn c_l_from_curve(curve: &SpectralCurve) -> InfoMatrix {
    let pairs = pair_sum(curve, |a, b| a + b);
    InfoMatrix::new(InfoKind::CL, symmetrize(add(eigenvalue_fisher(curve), &pairs)))
}

/// 4 Re sum_i p_i <w_i^{(k)}|w_i><w_i|w_i^{(l)}>, the gauge-dependent part.
pub fn diagonal_connection_term(curve: &SpectralCurve) -> Vec<Vec<f64>> {
    let p = curve.param_count();
    let diag: Vec<Vec<_>> =
        (0..p).map(|j| (0..curve.dim()).map(|i| inner(&curve.vector_derivs[j][i], &curve.vectors[i])).collect()).collect();
    let mut out = vec![vec![0.0; p]; p];
    for (i, &pi) in curve.probs.iter().enumerate() {
        for k in 0..p {
            for l in 0..p {
                out[k][l] += 4.0 * pi * (diag[k][i] * diag[l][i].conj()).re;
            }
        }
    }
    out
}

pub fn c_upsilon_from_curve(curve: &SpectralCurve) -> InfoMatrix {
    let cl = c_l_from_curve(curve);
    InfoMatrix::new(InfoKind::CUpsilon, symmetrize(add(cl.entries, &diagonal_connection_term(curve))))
}

/// tr{lambda^k rho lambda^l} (real part) from the particular SLD solutions.
pub fn sld_info_via_scores(curve: &SpectralCurve) -> InfoMatrix {
    let p = curve.param_count();
    let rho = curve.state();
    let lams: Vec<CMatrix> = (0..p).map(|j| sld_score_from_curve(curve, j).lambda).collect();
    let entries = (0..p)
        .map(|k| (0..p).map(|l| (&(&lams[k] * &rho) * &lams[l]).trace().re).collect())
        .collect();
    InfoMatrix::new(InfoKind::Sld, symmetrize(entries))
}

pub fn sld_info(fam: &ParametricFamily, theta: &[f64]) -> Result<InfoMatrix> {
    Ok(sld_info_from_curve(&spectral_curve(fam, theta, Gauge::FixedPhase)?))
}

pub fn c_upsilon(fam: &ParametricFamily, theta: &[f64], gauge: Gauge) -> Result<InfoMatrix> {
    Ok(c_upsilon_from_curve(&spectral_curve(fam, theta, gauge)?))
}

pub fn c_l(fam: &ParametricFamily, theta: &[f64]) -> Result<InfoMatrix> {
    Ok(c_l_from_curve(&spectral_curve(fam, theta, Gauge::FixedPhase)?))
}

/// Information in Chentsov-Morozova form,
/// sum_{a,b} c(p_a, p_b) Re[(d_k rho)_{ab} conj((d_l rho)_{ab})], evaluated in
/// the eigenbasis of rho. Pairs with p_a + p_b below the floor are skipped.
pub fn coefficient_info(fam: &ParametricFamily, theta: &[f64], coef: CoefficientKind) -> Result<InfoMatrix> {
    let rho = fam.state_matrix(theta)?;
    let eig = herm_eig(&rho)?;
    let p = fam.param_count();
    let d = eig.dim();
    let v = eig.vector_matrix();
    let vd = v.adjoint();
    let derivs: Vec<CMatrix> = (0..p).map(|j| Ok(&(&vd * &d_rho(fam, theta, j)?) * &v)).collect::<Result<_>>()?;
    let mut entries = vec![vec![0.0; p]; p];
    for a in 0..d {
        for b in 0..d {
            let (x, y) = (eig.values[a].max(0.0), eig.values[b].max(0.0));
            if x + y <= tol::PROB_FLOOR {
                continue;
            }
            let c = coef.c(x, y);
            for k in 0..p {
                for l in 0..p {
                    entries[k][l] += c * (derivs[k][(a, b)] * derivs[l][(a, b)].conj()).re;
                }
            }
        }
    }
    let kind = match coef {
        CoefficientKind::Sld => InfoKind::Sld,
        CoefficientKind::Kmb => InfoKind::Kmb,
        CoefficientKind::Rld => InfoKind::Rld,
        CoefficientKind::CL => InfoKind::CL,
    };
    Ok(InfoMatrix::new(kind, symmetrize(entries)))
}

fn require_full_rank(fam: &ParametricFamily, theta: &[f64]) -> Result<()> {
    let min = herm_eig(&fam.state_matrix(theta)?)?.min_value();
    if min <= tol::PROB_FLOOR {
        return Err(Error::RankDeficient(min));
    }
    Ok(())
}

pub fn kmb_info(fam: &ParametricFamily, theta: &[f64]) -> Result<InfoMatrix> {
    require_full_rank(fam, theta)?;
    coefficient_info(fam, theta, CoefficientKind::Kmb)
}

pub fn rld_info(fam: &ParametricFamily, theta: &[f64]) -> Result<InfoMatrix> {
    require_full_rank(fam, theta)?;
    coefficient_info(fam, theta, CoefficientKind::Rld)
}

/// ||C_L - F(p) - sum_i p_i H(rho_i)||_max with H(rho_i) the pure-state SLD
/// information of each eigenvector curve.
pub fn decomposition_residual(curve: &SpectralCurve) -> f64 {
    let p = curve.param_count();
    let cl = c_l_from_curve(curve);
    let mut rhs = eigenvalue_fisher(curve);
    for (i, &pi) in curve.probs.iter().enumerate() {
        if pi <= tol::PROB_FLOOR {
            continue;
        }
        let w = &curve.vectors[i];
        for k in 0..p {
            for l in 0..p {
                let wk = &curve.vector_derivs[k][i];
                let wl = &curve.vector_derivs[l][i];
                let h = 4.0 * (inner(wk, wl) - inner(wk, w) * inner(w, wl)).re;
                rhs[k][l] += pi * h;
            }
        }
    }
    cl.max_abs_diff_entries(&symmetrize(rhs))
}

pub fn decomposition_identity(fam: &ParametricFamily, theta: &[f64]) -> Result<f64> {
    Ok(decomposition_residual(&spectral_curve(fam, theta, Gauge::FixedPhase)?))
}
