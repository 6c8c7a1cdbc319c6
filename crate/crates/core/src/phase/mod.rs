//! Iterative phase estimation: confidence-arc arithmetic, per-stage
//! estimates, sample-size planning and Monte-Carlo coverage.

mod adaptive;
mod arc;
mod estimator;
mod planning;
mod simulate;

pub use adaptive::{adaptive_demo, adaptive_mse, angle_diff, second_stage_prob, AdaptiveMse, AdaptiveOutcome, AdaptiveSetup};
pub use arc::{arc_from_estimate, circ_dist, iterate_arcs, Arc, ArcChain, ArcIteration, ARC_LENGTH};
pub use estimator::{atan2_quadrant, estimate_from_frequencies, estimate_stage, StageCounts, StageEstimate};
pub use planning::{
    alpha_bound, alpha_bound_check, bernstein_counts, noise_planning, per_use_info, worst_case_fidelity, BernsteinCounts,
    FidelityBound, NoisePlan, PerUseSample, ALPHA,
};
pub use simulate::{
    coverage_ci, coverage_radius, run_exact_trial, run_simulation, run_simulation_with_workers, run_trial, stage_probs,
    trial_rng, NoiseModel, SimConfig, SimReport, StageDiagnostics, TrialOutcome, MAX_STAGES,
};

#[cfg(test)]
mod tests;
