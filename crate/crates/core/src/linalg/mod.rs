//! Small dense complex linear algebra: matrices, products, partial traces and
//! a Hermitian eigensolver.

mod eig;
mod matrix;

pub use eig::{expi_hermitian, fix_phase, herm_eig, inv_sqrt_psd, sqrt_psd, EigSystem};
pub use matrix::{
    axpy, basis_vector, inner, norm, normalize, outer, partial_trace, scale_vec, tensor, tensor_vec,
    CMatrix, CVector, Subsystem, C64, I, ONE, ZERO,
};

/// Lowest eigenvalue of a real symmetric matrix given as nested rows.
pub fn min_eigenvalue_real(m: &[Vec<f64>]) -> crate::error::Result<f64> {
    if m.is_empty() {
        return Ok(0.0);
    }
    Ok(herm_eig(&CMatrix::from_real_rows(m))?.min_value())
}
