use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Deviation allowed between a sampled frequency and its probability.
pub const ALPHA: f64 = 0.3794;
const BERNSTEIN_PER_BASIS: f64 = 24.437;
const BERNSTEIN_TOTAL: f64 = 48.874;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BernsteinCounts {
    /// Measurements per basis per stage.
    pub n: u64,
    /// Measurements per stage.
    pub n_tot: u64,
}

/// Measurements per stage so that all l stages land within their arcs with
/// probability at least 1 - eps.
pub fn bernstein_counts(l: u32, eps: f64) -> Result<BernsteinCounts> {
    if l == 0 {
        return Err(Error::InvalidArgument("stage count must be at least 1".into()));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!("failure probability {eps} not in (0, 1)")));
    }
    let log = (4.0 * l as f64 / eps).ln();
    Ok(BernsteinCounts { n: (BERNSTEIN_PER_BASIS * log).ceil() as u64, n_tot: (BERNSTEIN_TOTAL * log).ceil() as u64 })
}

/// arcsin(alpha) + arcsin(alpha / (1 - alpha)), for alpha in [0, 1/2].
pub fn alpha_bound(alpha: f64) -> Result<f64> {
    if !(0.0..=0.5).contains(&alpha) {
        return Err(Error::InvalidArgument(format!("alpha {alpha} not in [0, 1/2]")));
    }
    Ok(alpha.asin() + (alpha / (1.0 - alpha)).asin())
}

/// pi/3 minus the angular error bound at ALPHA; positive means the stage arcs
/// of length 1/3 are wide enough.
pub fn alpha_bound_check() -> f64 {
    PI / 3.0 - alpha_bound(ALPHA).unwrap_or(f64::INFINITY)
}

/// SLD information per channel use after m noisy uses, 4 pi^2 m (1-r)^{2m}.
pub fn per_use_info(m: f64, r: f64) -> f64 {
    4.0 * PI * PI * m * (1.0 - r).powf(2.0 * m)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PerUseSample {
    pub stage: u32,
    pub uses: f64,
    pub info_per_use: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoisePlan {
    pub r: f64,
    /// Exact maximizer of per_use_info, -1/(2 ln(1-r)).
    pub m_star: f64,
    /// Small-r approximation 1/(2r).
    pub m_star_approx: f64,
    /// floor(-log2 r).
    pub l_star: u32,
    pub curve: Vec<PerUseSample>,
}

/// Optimal number of uses and stages for depolarizing rate r; the curve
/// samples m = 2^{k-1} for k = 1..=stages.
pub fn noise_planning(r: f64, stages: u32) -> Result<NoisePlan> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidArgument(format!("noise rate {r} not in (0, 1)")));
    }
    let curve = (1..=stages)
        .map(|k| {
            let m = 2f64.powi(k as i32 - 1);
            PerUseSample { stage: k, uses: m, info_per_use: per_use_info(m, r) }
        })
        .collect();
    Ok(NoisePlan {
        r,
        m_star: -1.0 / (2.0 * (1.0 - r).ln()),
        m_star_approx: 1.0 / (2.0 * r),
        l_star: (-r.log2()).floor().max(0.0) as u32,
        curve,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FidelityBound {
    /// Upper bound on 1 - <F>.
    pub exact: f64,
    /// eps + pi^2/(9 4^l) - eps pi^2/(9 4^l).
    pub approx: f64,
}

/// Worst-case infidelity when the final arc has half-width 1/(3 2^l) and the
/// estimate lands in it with probability at least 1 - eps.
pub fn worst_case_fidelity(l: u32, eps: f64) -> Result<FidelityBound> {
    if l == 0 {
        return Err(Error::InvalidArgument("stage count must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::InvalidArgument(format!("failure probability {eps} not in [0, 1]")));
    }
    let scale = 2f64.powi(l as i32);
    let exact = 1.0 - (1.0 - eps) * (1.0 + (2.0 * PI / (scale * 3.0)).cos()) / 2.0;
    let t = PI * PI / (9.0 * scale * scale);
    Ok(FidelityBound { exact, approx: eps + t - eps * t })
}
