//! Numerical tolerances used across the crate.
//!
//! Every threshold lives here so that tests and callers agree on one set.

/// Maximum entrywise deviation from Hermiticity accepted on input.
pub const HERMITICITY: f64 = 1e-10;
/// Reconstruction residual for eigendecompositions and trace checks.
pub const RECONSTRUCTION: f64 = 1e-9;
/// Eigenvalue gap below which an eigensystem is flagged degenerate.
pub const DEGENERACY_FLAG: f64 = 1e-8;
/// Minimum gap between nonzero eigenvalues for numerical eigenvector tracking.
pub const TRACKING_GAP: f64 = 1e-6;
/// Minimum overlap when pairing eigenvectors at neighbouring parameter points.
pub const TRACKING_OVERLAP: f64 = 0.9;
/// Step for central finite differences.
pub const FD_STEP: f64 = 1e-5;
/// Eigenvalues or outcome probabilities below this are treated as zero.
pub const PROB_FLOOR: f64 = 1e-12;
/// Born probabilities in [-BORN_CLAMP, 0) are clamped to zero.
pub const BORN_CLAMP: f64 = 1e-12;
/// POVM completeness and positivity.
pub const POVM: f64 = 1e-10;
/// Slack allowed in matrix inequalities such as H - F >= 0.
pub const MATRIX_ORDER: f64 = 1e-8;
/// Relative residual for the real-proportionality (equality) test.
pub const EQUALITY_RESIDUAL: f64 = 1e-7;
/// Bound on |Im <d_j psi | d_k psi>| for the Matsumoto condition.
pub const MATSUMOTO: f64 = 1e-8;
/// Default nullspace cutoff for pseudo-inverse square roots.
pub const NULLSPACE: f64 = 1e-12;
