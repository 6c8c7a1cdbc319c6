//! Quantum parameter estimation toolkit.
//!
//! Information matrices for parametric families of quantum states (SLD,
//! gauge-dependent C_Upsilon, C_L, KMB, RLD), attainability checks for
//! classical Fisher information, and a Monte-Carlo harness for iterative
//! phase estimation under depolarizing noise.

pub mod cli;
pub mod error;
pub mod linalg;
pub mod metrics;
pub mod models;
pub mod phase;
pub mod quantum;
pub mod random;
pub mod tol;

pub use error::{Error, Result};
