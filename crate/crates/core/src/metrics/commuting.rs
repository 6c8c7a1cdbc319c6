use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How n commuting channels are used on one probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// Each channel acts on its own copy of the probe.
    Separate,
    /// All channels act one after another on a single probe.
    Sequential,
}

fn check_positive(f: &[f64]) -> Result<()> {
    if f.is_empty() || f.iter().any(|&x| x.is_nan() || x <= 0.0) {
        return Err(Error::InvalidArgument(format!("channel derivatives must all be positive, got {f:?}")));
    }
    Ok(())
}

/// Trace of the SLD information for the uniform-superposition probe on C^d,
/// with per-parameter channel derivatives `per_param[k][j]` = f_j'(theta_k).
/// Separate: (4/d) sum_k sum_j f_j'^2. Sequential: (4/d) sum_k (sum_j f_j')^2.
pub fn commuting_scheme_trace(per_param: &[Vec<f64>], d: usize, scheme: Scheme) -> Result<f64> {
    if d < 2 || per_param.len() != d - 1 {
        return Err(Error::InvalidArgument(format!("expected {} parameter rows for d = {d}", d.saturating_sub(1))));
    }
    let mut total = 0.0;
    for f in per_param {
        check_positive(f)?;
        total += match scheme {
            Scheme::Separate => f.iter().map(|x| x * x).sum::<f64>(),
            Scheme::Sequential => f.iter().sum::<f64>().powi(2),
        };
    }
    Ok(4.0 / d as f64 * total)
}

/// Same as [`commuting_scheme_trace`] with identical derivatives for every parameter.
pub fn commuting_scheme_info(f_derivs: &[f64], d: usize, scheme: Scheme) -> Result<f64> {
    let rows = vec![f_derivs.to_vec(); d.saturating_sub(1)];
    commuting_scheme_trace(&rows, d, scheme)
}

/// Qubit phase channels e^{i f_j(theta)} on (|0> + |1>)/sqrt(2):
/// separate sum_j f_j'^2, sequential (sum_j f_j')^2.
pub fn qubit_phase_scheme_info(f_derivs: &[f64], scheme: Scheme) -> Result<f64> {
    check_positive(f_derivs)?;
    Ok(match scheme {
        Scheme::Separate => f_derivs.iter().map(|x| x * x).sum(),
        Scheme::Sequential => f_derivs.iter().sum::<f64>().powi(2),
    })
}
