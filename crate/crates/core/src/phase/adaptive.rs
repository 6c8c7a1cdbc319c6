use rand::Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

use super::estimator::atan2_quadrant;
use super::simulate::trial_rng;
use crate::error::{Error, Result};

/// Qubit with Bloch vector (sin t cos phi, sin t sin phi, cos t); the polar
/// angle t is known and the azimuth phi is estimated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdaptiveSetup {
    pub phi: f64,
    pub polar: f64,
    /// Total copies.
    pub n: u64,
    /// Copies used by the first stage, split evenly between x and y.
    pub n_first: u64,
}

impl AdaptiveSetup {
    fn validate(&self) -> Result<()> {
        if self.n_first == 0 || self.n_first % 2 == 1 || self.n_first > self.n {
            return Err(Error::InvalidArgument(format!(
                "first-stage count {} must be even, positive and at most {}",
                self.n_first, self.n
            )));
        }
        if !(self.polar > 0.0 && self.polar < PI) {
            return Err(Error::InvalidArgument(format!("polar angle {} not in (0, pi)", self.polar)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdaptiveOutcome {
    /// Estimate from the x/y stage alone.
    pub first: f64,
    /// Refined estimate after the rotated measurement.
    pub refined: f64,
    /// The arcsin argument left [-1, 1] and was clamped.
    pub clamped: bool,
}

/// Zero-outcome probability of the second-stage measurement,
/// (1 + sin t sin(phi - phi_hat))/2.
pub fn second_stage_prob(phi: f64, polar: f64, phi_hat: f64) -> f64 {
    (1.0 + polar.sin() * (phi - phi_hat).sin()) / 2.0
}

/// Signed angular difference wrapped to (-pi, pi].
pub fn angle_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    if d > PI {
        d - 2.0 * PI
    } else {
        d
    }
}

fn binomial<R: Rng + ?Sized>(n: u64, p: f64, rng: &mut R) -> Result<u64> {
    Ok(Binomial::new(n, p.clamp(0.0, 1.0)).map_err(|e| Error::InvalidArgument(e.to_string()))?.sample(rng))
}

/// Two-stage adaptive estimate of phi.
pub fn adaptive_demo<R: Rng + ?Sized>(setup: &AdaptiveSetup, rng: &mut R) -> Result<AdaptiveOutcome> {
    setup.validate()?;
    let half = setup.n_first / 2;
    let s = setup.polar.sin();
    let nx = binomial(half, (1.0 + s * setup.phi.cos()) / 2.0, rng)?;
    let ny = binomial(half, (1.0 + s * setup.phi.sin()) / 2.0, rng)?;
    let cx = 2.0 * nx as f64 / half as f64 - 1.0;
    let cy = 2.0 * ny as f64 / half as f64 - 1.0;
    let first = atan2_quadrant(cx, cy).unwrap_or(0.0);
    let rest = setup.n - setup.n_first;
    if rest == 0 {
        return Ok(AdaptiveOutcome { first, refined: first, clamped: false });
    }
    let k = binomial(rest, second_stage_prob(setup.phi, setup.polar, first), rng)?;
    let arg = (2.0 * k as f64 / rest as f64 - 1.0) / s;
    let clamped = arg.abs() > 1.0;
    Ok(AdaptiveOutcome { first, refined: first + arg.clamp(-1.0, 1.0).asin(), clamped })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdaptiveMse {
    pub replicates: u64,
    pub mse_first: f64,
    pub mse_refined: f64,
    pub clamped: u64,
}

/// Mean squared angular error of both estimates over seeded replicates.
pub fn adaptive_mse(setup: &AdaptiveSetup, replicates: u64, seed: u64) -> Result<AdaptiveMse> {
    if replicates == 0 {
        return Err(Error::InvalidArgument("replicate count must be at least 1".into()));
    }
    let outs = (0..replicates)
        .into_par_iter()
        .map(|i| adaptive_demo(setup, &mut trial_rng(seed, i)))
        .collect::<Result<Vec<_>>>()?;
    let mse = |f: fn(&AdaptiveOutcome) -> f64| {
        outs.iter().map(|o| angle_diff(f(o), setup.phi).powi(2)).sum::<f64>() / replicates as f64
    };
    Ok(AdaptiveMse {
        replicates,
        mse_first: mse(|o| o.first),
        mse_refined: mse(|o| o.refined),
        clamped: outs.iter().filter(|o| o.clamped).count() as u64,
    })
}
