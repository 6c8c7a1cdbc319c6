use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Metric coefficient c(x, y) and its generating function f(t) = 1/c(t, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoefficientKind {
    #[serde(rename = "SLD")]
    Sld,
    #[serde(rename = "KMB")]
    Kmb,
    #[serde(rename = "RLD")]
    Rld,
    CL,
}

impl CoefficientKind {
    pub const ALL: [CoefficientKind; 4] = [CoefficientKind::Sld, CoefficientKind::Kmb, CoefficientKind::Rld, CoefficientKind::CL];

    /// c(x, y) for x, y > 0. The CL coefficient diverges on the diagonal.
    pub fn c(&self, x: f64, y: f64) -> f64 {
        match self {
            CoefficientKind::Sld => 2.0 / (x + y),
            CoefficientKind::Kmb => log_mean_inverse(x, y),
            CoefficientKind::Rld => (x + y) / (2.0 * x * y),
            CoefficientKind::CL => 2.0 * (x + y) / ((x - y) * (x - y)),
        }
    }

    pub fn f(&self, t: f64) -> f64 {
        match self {
            CoefficientKind::Sld => (1.0 + t) / 2.0,
            CoefficientKind::Kmb => {
                if t == 0.0 {
                    0.0
                } else if (t - 1.0).abs() < 1e-6 {
                    // (t-1)/ln t = 1 + u/2 - u^2/12 + ..., u = t - 1
                    let u = t - 1.0;
                    1.0 + u / 2.0 - u * u / 12.0
                } else {
                    (t - 1.0) / t.ln()
                }
            }
            CoefficientKind::Rld => 2.0 * t / (1.0 + t),
            CoefficientKind::CL => (t - 1.0).powi(2) / (2.0 * (1.0 + t)),
        }
    }
}

/// (ln x - ln y)/(x - y), continuous at x = y where it equals 1/x.
fn log_mean_inverse(x: f64, y: f64) -> f64 {
    let r = (x - y) / y;
    if r.abs() < 1e-6 {
        (1.0 - r / 2.0 + r * r / 3.0) / y
    } else {
        r.ln_1p() / (x - y)
    }
}

/// f(t) for t >= 0.
pub fn monotone_f(kind: CoefficientKind, t: f64) -> Result<f64> {
    if t.is_nan() || t < 0.0 {
        return Err(Error::InvalidArgument(format!("monotone function needs t >= 0, got {t}")));
    }
    Ok(kind.f(t))
}
