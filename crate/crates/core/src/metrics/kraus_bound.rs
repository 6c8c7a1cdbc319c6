use serde::Serialize;

use super::info::{c_l, c_upsilon};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::models::{Gauge, ParametricFamily};
use crate::quantum::KrausChannel;
use crate::tol;

/// C_E = 4 sum_k tr(E_k' rho_0 E_k'^dagger) for a one-parameter curve of Kraus
/// operators, with E_k' from central differences.
pub fn kraus_bound<F>(kraus: F, rho0: &CMatrix, theta: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<Vec<CMatrix>>,
{
    let h = tol::FD_STEP;
    let (plus, minus) = (kraus(theta + h)?, kraus(theta - h)?);
    if plus.len() != minus.len() {
        return Err(Error::InvalidChannel("Kraus curve changes length".into()));
    }
    let mut total = 0.0;
    for (a, b) in plus.iter().zip(&minus) {
        let de = (a - b).scale_real(0.5 / h);
        total += (&(&de * rho0) * &de.adjoint()).trace().re;
    }
    Ok(4.0 * total)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct KrausBoundComparison {
    pub c_e: f64,
    pub c_upsilon: f64,
    pub c_l: f64,
}

/// Compares C_E for the supplied Kraus curve with C_Upsilon and C_L of the
/// output family theta -> sum_k E_k rho_0 E_k^dagger.
pub fn compare_kraus_bound<F>(kraus: F, rho0: &CMatrix, theta: f64) -> Result<KrausBoundComparison>
where
    F: Fn(f64) -> Result<Vec<CMatrix>> + Send + Sync + Clone + 'static,
{
    let c_e = kraus_bound(kraus.clone(), rho0, theta)?;
    let rho0c = rho0.clone();
    let d = rho0.rows();
    let fam = ParametricFamily::new("kraus_output", d, 1, move |t| {
        let ch = KrausChannel::new("curve", kraus(t[0])?)?;
        ch.apply_operator(&rho0c)
    });
    Ok(KrausBoundComparison {
        c_e,
        c_upsilon: c_upsilon(&fam, &[theta], Gauge::FixedPhase)?.get(0, 0),
        c_l: c_l(&fam, &[theta])?.get(0, 0),
    })
}
