//! Parametric families of states, their spectral curves and SLD scores.

mod builtin;
mod family;
mod spectral;

pub use builtin::{
    bloch_qubit, commuting_ud, commuting_ud_separate, depol_qutrit_rotation, diagonal_generators, family_by_name,
    phase_on_psix, FAMILY_NAMES,
};
pub use family::{product_family, ParametricFamily, SpectralPoint};
pub use spectral::{
    d_rho, d_rho_with_step, sld_score, sld_score_from_curve, spectral_curve, spectral_curve_with_step, Gauge,
    SldScore, SpectralCurve,
};

#[cfg(test)]
mod tests;
