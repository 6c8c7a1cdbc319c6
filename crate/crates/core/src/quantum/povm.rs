use serde::{Deserialize, Serialize};

use super::state::{pauli_x, pauli_y, pauli_z, DensityMatrix};
use crate::error::{Error, Result};
use crate::linalg::{herm_eig, CMatrix};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Positive operators summing to the identity.
#[derive(Debug, Clone, Serialize)]
pub struct Povm {
    elements: Vec<CMatrix>,
}

impl Povm {
    pub fn new(elements: Vec<CMatrix>) -> Result<Self> {
        let d = elements.first().map(|m| m.rows()).ok_or_else(|| Error::InvalidPovm("no elements".into()))?;
        let mut sum = CMatrix::zeros(d, d);
        for (k, m) in elements.iter().enumerate() {
            if m.rows() != d || m.cols() != d {
                return Err(Error::DimensionMismatch(format!("POVM element {k} is {}x{}", m.rows(), m.cols())));
            }
            let min = herm_eig(m)?.min_value();
            if min < -tol::POVM {
                return Err(Error::InvalidPovm(format!("element {k} has eigenvalue {min:.3e}")));
            }
            sum = &sum + m;
        }
        let dev = (&sum - &CMatrix::identity(d)).max_abs();
        if dev > tol::POVM {
            return Err(Error::InvalidPovm(format!("elements sum to identity only within {dev:.3e}")));
        }
        Ok(Povm { elements })
    }

    /// Projective measurement onto an orthonormal basis.
    pub fn from_basis(vectors: &[crate::linalg::CVector]) -> Result<Self> {
        Self::new(vectors.iter().map(|v| crate::linalg::outer(v, v)).collect())
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].rows()
    }

    /// Deviation of sum_m M_m from the identity.
    pub fn completeness_error(&self) -> f64 {
        let d = self.dim();
        let sum = self.elements.iter().fold(CMatrix::zeros(d, d), |acc, m| &acc + m);
        (&sum - &CMatrix::identity(d)).max_abs()
    }
}

/// Two-outcome projective measurement with M_0 = (I + sigma)/2.
pub fn measure_basis(axis: Axis) -> Povm {
    let sigma = match axis {
        Axis::X => pauli_x(),
        Axis::Y => pauli_y(),
        Axis::Z => pauli_z(),
    };
    let id = CMatrix::identity(2);
    Povm { elements: vec![(&id + &sigma).scale_real(0.5), (&id - &sigma).scale_real(0.5)] }
}

/// Outcome probabilities tr(rho M_m).
pub fn born(rho: &DensityMatrix, povm: &Povm) -> Result<Vec<f64>> {
    if rho.dim() != povm.dim() {
        return Err(Error::DimensionMismatch(format!("state dim {} vs POVM dim {}", rho.dim(), povm.dim())));
    }
    povm.elements
        .iter()
        .map(|m| {
            let p = rho.matrix().hs_inner(m).re;
            if p >= 0.0 {
                Ok(p)
            } else if p >= -tol::BORN_CLAMP {
                Ok(0.0)
            } else {
                Err(Error::InvalidProbability(format!("Born probability {p:.3e}")))
            }
        })
        .collect()
}
