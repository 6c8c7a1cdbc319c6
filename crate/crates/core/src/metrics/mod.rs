//! Information matrices and attainability checks.

mod attainability;
mod coefficient;
mod commuting;
mod info;
mod kraus_bound;
mod report;

pub use attainability::{
    ballester_povm, check_bc, check_bc_equality, check_matsumoto, default_rotation, dim_bound_check, pure_derivatives,
    pure_sld_info, BcVerdict, DimBoundVerdict, EqualityVerdict, MatsumotoVerdict,
};
pub use coefficient::{monotone_f, CoefficientKind};
pub use commuting::{commuting_scheme_info, commuting_scheme_trace, qubit_phase_scheme_info, Scheme};
pub use info::{
    c_l, c_l_from_curve, c_upsilon, c_upsilon_from_curve, classical_fisher, coefficient_info, decomposition_identity,
    decomposition_residual, diagonal_connection_term, eigenvalue_fisher, fisher_info, kmb_info, rld_info, sld_info,
    sld_info_from_curve, sld_info_via_scores, InfoKind, InfoMatrix,
};
pub use kraus_bound::{compare_kraus_bound, kraus_bound, KrausBoundComparison};
pub use report::{metric_report, Gaps, MetricReport, Verdicts};

#[cfg(test)]
mod tests;
