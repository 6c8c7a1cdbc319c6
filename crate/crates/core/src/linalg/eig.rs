use serde::Serialize;

use super::matrix::{outer, CMatrix, CVector, C64, ZERO};
use crate::error::{Error, Result};
use crate::tol;

const MAX_SWEEPS: usize = 64;

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues are sorted in descending order. Each eigenvector is scaled so
/// that its largest-magnitude component is real and positive (the first such
/// component on ties).
#[derive(Debug, Clone, Serialize)]
pub struct EigSystem {
    pub values: Vec<f64>,
    pub vectors: Vec<CVector>,
    /// Smallest gap between consecutive eigenvalues (infinite for d = 1).
    pub min_gap: f64,
    /// Set when some gap is below [`tol::DEGENERACY_FLAG`].
    pub degenerate: bool,
}

impl EigSystem {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Sum_k f(lambda_k) |w_k><w_k|.
    pub fn map(&self, f: impl Fn(f64) -> C64) -> CMatrix {
        let d = self.dim();
        let mut out = CMatrix::zeros(d, d);
        for (lam, w) in self.values.iter().zip(&self.vectors) {
            let fl = f(*lam);
            if fl == ZERO {
                continue;
            }
            out = &out + &outer(w, w).scale(fl);
        }
        out
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.map(|x| C64::new(x, 0.0))
    }

    pub fn vector_matrix(&self) -> CMatrix {
        CMatrix::from_columns(&self.vectors)
    }

    pub fn min_value(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Smallest gap among eigenvalues strictly above `floor`, including the
    /// gap from the smallest such eigenvalue down to the rest of the spectrum.
    pub fn support_gap(&self, floor: f64) -> f64 {
        let mut gap = f64::INFINITY;
        for k in 0..self.values.len().saturating_sub(1) {
            if self.values[k] > floor {
                gap = gap.min(self.values[k] - self.values[k + 1]);
            }
        }
        gap
    }
}

/// Rotates `v` so its largest-magnitude component is real and positive.
pub fn fix_phase(v: &mut [C64]) {
    let max = v.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    let idx = v.iter().position(|x| x.norm() >= max * (1.0 - 1e-12)).unwrap_or(0);
    let phase = v[idx].conj() / v[idx].norm();
    for x in v.iter_mut() {
        *x *= phase;
    }
}

/// Hermitian eigensolver (cyclic complex Jacobi).
pub fn herm_eig(m: &CMatrix) -> Result<EigSystem> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!("{}x{} is not square", m.rows(), m.cols())));
    }
    let herm_err = m.hermiticity_error();
    if herm_err > tol::HERMITICITY * m.max_abs().max(1.0) {
        return Err(Error::NotHermitian(herm_err));
    }
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = CMatrix::identity(n);
    let total: f64 = a.frobenius_norm().powi(2);

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += a[(i, j)].norm_sqr();
                }
            }
        }
        if off <= 1e-32 * total || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let h = a[(p, q)];
                let habs = h.norm();
                if habs <= 1e-300 {
                    continue;
                }
                let phase = h / habs;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * habs);
                let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
                let t = sign / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let g_pq = phase * s;
                let g_qp = -phase.conj() * s;
                // columns: A <- A G, V <- V G
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * c + akq * g_qp;
                    a[(k, q)] = akp * g_pq + akq * c;
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = vkp * c + vkq * g_qp;
                    v[(k, q)] = vkp * g_pq + vkq * c;
                }
                // rows: A <- G^dagger A
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = apk * c + aqk * g_qp.conj();
                    a[(q, k)] = apk * g_pq.conj() + aqk * c;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors: Vec<CVector> = order
        .iter()
        .map(|&i| {
            let mut w = v.column(i);
            fix_phase(&mut w);
            w
        })
        .collect();
    let min_gap = values.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min);
    Ok(EigSystem { values, vectors, min_gap, degenerate: min_gap < tol::DEGENERACY_FLAG })
}

fn psd_eig(m: &CMatrix) -> Result<EigSystem> {
    let eig = herm_eig(m)?;
    let floor = -tol::RECONSTRUCTION * m.max_abs().max(1.0);
    if eig.min_value() < floor {
        return Err(Error::NotPsd(eig.min_value()));
    }
    Ok(eig)
}

/// Principal square root of a positive semidefinite matrix.
pub fn sqrt_psd(m: &CMatrix) -> Result<CMatrix> {
    Ok(psd_eig(m)?.map(|x| C64::new(x.max(0.0).sqrt(), 0.0)))
}

/// Inverse square root on the support; eigenvalues at or below
/// `nullspace_tol` are mapped to zero.
pub fn inv_sqrt_psd(m: &CMatrix, nullspace_tol: f64) -> Result<CMatrix> {
    Ok(psd_eig(m)?.map(|x| if x > nullspace_tol { C64::new(1.0 / x.sqrt(), 0.0) } else { ZERO }))
}

/// exp(i t G) for Hermitian G.
pub fn expi_hermitian(g: &CMatrix, t: f64) -> Result<CMatrix> {
    Ok(herm_eig(g)?.map(|x| C64::from_polar(1.0, t * x)))
}
