use serde::Serialize;

use crate::error::{Error, Result};

/// Length of the confidence arcs used by the iterative estimator.
pub const ARC_LENGTH: f64 = 1.0 / 3.0;

/// Tolerance for the chain invariant on unreduced lower bounds.
const CHAIN_TOL: f64 = 1e-12;

fn mod1(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    // rem_euclid can round up to exactly 1 for tiny negative inputs
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Distance on the circle of unit circumference, in [0, 1/2].
pub fn circ_dist(a: f64, b: f64) -> f64 {
    let d = mod1(a - b);
    d.min(mod1(b - a))
}

/// Half-open arc [lower, lower + length) on the unit-circumference circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Arc {
    pub lower: f64,
    pub length: f64,
}

impl Arc {
    /// The lower end is reduced mod 1.
    pub fn new(lower: f64, length: f64) -> Result<Self> {
        if !(length > 0.0 && length <= 1.0) {
            return Err(Error::InvalidArgument(format!("arc length {length} not in (0, 1]")));
        }
        if !lower.is_finite() {
            return Err(Error::InvalidArgument(format!("arc lower end {lower} is not finite")));
        }
        Ok(Arc { lower: mod1(lower), length })
    }

    pub fn contains(&self, x: f64) -> bool {
        mod1(x - self.lower) < self.length
    }

    pub fn center(&self) -> f64 {
        mod1(self.lower + self.length / 2.0)
    }

    /// Upper end, not reduced, so it may exceed 1.
    pub fn upper(&self) -> f64 {
        self.lower + self.length
    }
}

/// Arc of length 1/3 centered on a stage estimate.
pub fn arc_from_estimate(estimate: f64) -> Arc {
    Arc { lower: mod1(estimate - ARC_LENGTH / 2.0), length: ARC_LENGTH }
}

/// Unreduced lower bounds z(1..l) of the nested arcs J_k.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArcChain {
    pub z: Vec<f64>,
    pub length: f64,
}

impl ArcChain {
    pub fn stages(&self) -> usize {
        self.z.len()
    }

    /// J_k as an unreduced interval (lower, upper).
    pub fn interval(&self, k: usize) -> (f64, f64) {
        (self.z[k], self.z[k] + self.length)
    }

    /// Checks z(k+1) in [2z(k), 2z(k) + length] for every k.
    pub fn invariant_holds(&self) -> bool {
        self.z.windows(2).all(|w| {
            let off = w[1] - 2.0 * w[0];
            off >= -CHAIN_TOL && off <= self.length + CHAIN_TOL
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArcIteration {
    pub chain: ArcChain,
    /// J_l scaled back by 2^{-(l-1)}, an arc on theta itself.
    pub final_arc: Arc,
    pub estimate: f64,
}

/// Combines stage arcs L_k, where L_k is meant to contain (2^{k-1} theta) mod 1,
/// into a single arc on theta of length L / 2^{l-1}.
pub fn iterate_arcs(arcs: &[Arc]) -> Result<ArcIteration> {
    let first = arcs.first().ok_or(Error::EmptyInput)?;
    let len = first.length;
    if arcs.iter().any(|a| (a.length - len).abs() > 1e-15) {
        return Err(Error::InvalidArgument("stage arcs must share one length".into()));
    }
    let mut z = Vec::with_capacity(arcs.len());
    z.push(first.lower);
    for arc in &arcs[1..] {
        let prev = 2.0 * z.last().copied().unwrap_or_default();
        let d = mod1(arc.lower - prev);
        let next = if d < len {
            prev + d
        } else if d >= 1.0 - len {
            prev
        } else {
            prev + len
        };
        z.push(next);
    }
    let scale = 2f64.powi(arcs.len() as i32 - 1);
    let zl = *z.last().unwrap_or(&0.0);
    let final_arc = Arc::new(zl / scale, len / scale)?;
    let estimate = mod1((zl + len / 2.0) / scale);
    Ok(ArcIteration { chain: ArcChain { z, length: len }, final_arc, estimate })
}
