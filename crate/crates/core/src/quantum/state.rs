use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{herm_eig, norm, outer, CMatrix, CVector, C64, I, ONE, ZERO};
use crate::tol;

pub fn pauli_x() -> CMatrix {
    CMatrix::from_rows(&[vec![ZERO, ONE], vec![ONE, ZERO]])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_rows(&[vec![ZERO, -I], vec![I, ZERO]])
}

pub fn pauli_z() -> CMatrix {
    CMatrix::diag_real(&[1.0, -1.0])
}

/// Unit vector in C^d.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PureState(CVector);

impl PureState {
    pub fn new(v: CVector) -> Result<Self> {
        let n = norm(&v);
        if (n - 1.0).abs() > tol::RECONSTRUCTION {
            return Err(Error::InvalidState(format!("vector norm {n} is not 1")));
        }
        Ok(PureState(v))
    }

    pub fn normalized(v: &[C64]) -> Result<Self> {
        let n = norm(v);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidState("zero vector".into()));
        }
        Ok(PureState(v.iter().map(|x| x / n).collect()))
    }

    /// (|0> + |1>)/sqrt(2), the probe state for phase estimation.
    pub fn plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        PureState(vec![C64::new(h, 0.0), C64::new(h, 0.0)])
    }

    pub fn basis(d: usize, k: usize) -> Self {
        PureState(crate::linalg::basis_vector(d, k))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn vector(&self) -> &[C64] {
        &self.0
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix(outer(&self.0, &self.0))
    }
}

/// Hermitian, positive semidefinite, unit-trace operator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityMatrix(CMatrix);

impl DensityMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(format!("{}x{} is not square", m.rows(), m.cols())));
        }
        let herm = m.hermiticity_error();
        if herm > tol::HERMITICITY {
            return Err(Error::NotHermitian(herm));
        }
        let tr = m.trace();
        if (tr - ONE).norm() > tol::RECONSTRUCTION {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let min = herm_eig(&m)?.min_value();
        if min < -tol::RECONSTRUCTION {
            return Err(Error::NotPsd(min));
        }
        Ok(DensityMatrix(m.hermitian_part()))
    }

    pub fn maximally_mixed(d: usize) -> Self {
        DensityMatrix(CMatrix::identity(d).scale_real(1.0 / d as f64))
    }

    pub(crate) fn from_matrix_unchecked(m: CMatrix) -> Self {
        DensityMatrix(m)
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn purity(&self) -> f64 {
        (&self.0 * &self.0).trace().re
    }
}

/// Spectral data (p_k, w_k) of a state, restricted to p_k above the
/// probability floor and sorted by descending p_k.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralState {
    pub probs: Vec<f64>,
    pub vectors: Vec<CVector>,
    pub degenerate: bool,
}

pub fn canonical_spectral(rho: &DensityMatrix) -> Result<SpectralState> {
    let eig = herm_eig(rho.matrix())?;
    let keep = eig.values.iter().take_while(|&&p| p > tol::PROB_FLOOR).count();
    Ok(SpectralState {
        probs: eig.values[..keep].to_vec(),
        vectors: eig.vectors[..keep].to_vec(),
        degenerate: eig.support_gap(tol::PROB_FLOOR) < tol::DEGENERACY_FLAG,
    })
}
