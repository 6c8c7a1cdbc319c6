use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Four-quadrant arctangent of the point (x, y), in (-pi, pi].
///
/// x > 0: arctan(y/x); x < 0, y >= 0: arctan(y/x) + pi; x < 0, y < 0:
/// arctan(y/x) - pi; x = 0: +-pi/2 by the sign of y.
pub fn atan2_quadrant(x: f64, y: f64) -> Result<f64> {
    if x > 0.0 {
        Ok((y / x).atan())
    } else if x < 0.0 {
        if y >= 0.0 {
            Ok((y / x).atan() + PI)
        } else {
            Ok((y / x).atan() - PI)
        }
    } else if y > 0.0 {
        Ok(PI / 2.0)
    } else if y < 0.0 {
        Ok(-PI / 2.0)
    } else {
        Err(Error::UndefinedAtan2)
    }
}

/// Zero counts of one stage: N measurements in each of the x and y bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StageCounts {
    pub n: u64,
    pub nx0: u64,
    pub ny0: u64,
}

impl StageCounts {
    pub fn new(n: u64, nx0: u64, ny0: u64) -> Result<Self> {
        if n == 0 || nx0 > n || ny0 > n {
            return Err(Error::InvalidArgument(format!("stage counts ({nx0}, {ny0}) out of {n}")));
        }
        Ok(StageCounts { n, nx0, ny0 })
    }

    pub fn frequencies(&self) -> (f64, f64) {
        (self.nx0 as f64 / self.n as f64, self.ny0 as f64 / self.n as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StageEstimate {
    /// Estimate of (2^{k-1} theta) mod 1, in [0, 1).
    pub value: f64,
    /// Set when both frequencies sit exactly at 1/2; value is then 0.
    pub flagged: bool,
}

/// Stage estimate from zero-outcome frequencies f_x, f_y.
pub fn estimate_from_frequencies(fx: f64, fy: f64) -> StageEstimate {
    match atan2_quadrant(2.0 * fx - 1.0, 2.0 * fy - 1.0) {
        Ok(angle) => {
            let v = (angle / (2.0 * PI)).rem_euclid(1.0);
            StageEstimate { value: if v >= 1.0 { 0.0 } else { v }, flagged: false }
        }
        Err(_) => StageEstimate { value: 0.0, flagged: true },
    }
}

pub fn estimate_stage(counts: &StageCounts) -> StageEstimate {
    let (fx, fy) = counts.frequencies();
    estimate_from_frequencies(fx, fy)
}
