use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::arc::{arc_from_estimate, circ_dist, iterate_arcs, ARC_LENGTH};
use super::estimator::{estimate_from_frequencies, estimate_stage, StageCounts, StageEstimate};
use crate::error::{Error, Result};

pub const MAX_STAGES: u32 = 40;

/// Depolarizing rate per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    r: f64,
}

impl NoiseModel {
    pub const NONE: NoiseModel = NoiseModel { r: 0.0 };

    pub fn new(r: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::InvalidArgument(format!("noise rate {r} not in [0, 1)")));
        }
        Ok(NoiseModel { r })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// (1-r)^m after m uses.
    pub fn amplitude(&self, uses: f64) -> f64 {
        (1.0 - self.r).powf(uses)
    }
}

/// Zero-outcome probabilities in the x and y bases at stage k, where the
/// probe has passed through the channel m = 2^{k-1} times.
///
/// m depolarizing uses shrink the off-diagonal element of |+><+| by (1-r)^m,
/// so only the fringe amplitude changes.
pub fn stage_probs(theta: f64, k: u32, noise: NoiseModel) -> (f64, f64) {
    let m = 2f64.powi(k as i32 - 1);
    let a = noise.amplitude(m);
    let phase = 2.0 * PI * (m * theta).rem_euclid(1.0);
    ((1.0 + a * phase.cos()) / 2.0, (1.0 + a * phase.sin()) / 2.0)
}

fn check_stages(l: u32) -> Result<()> {
    if l == 0 || l > MAX_STAGES {
        return Err(Error::InvalidArgument(format!("stage count {l} not in 1..={MAX_STAGES}")));
    }
    Ok(())
}

fn per_basis(n_tot: u64) -> Result<u64> {
    if n_tot % 2 == 1 {
        return Err(Error::OddMeasurementCount(n_tot));
    }
    if n_tot == 0 {
        return Err(Error::InvalidArgument("measurement count must be positive".into()));
    }
    Ok(n_tot / 2)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialOutcome {
    pub theta: f64,
    pub estimate: f64,
    pub distance: f64,
    pub covered: bool,
    /// Some stage hit the atan2 origin.
    pub flagged: bool,
    /// stage_misses[k]: L_k did not contain (2^{k-1} theta) mod 1.
    pub stage_misses: Vec<bool>,
    pub chain_ok: bool,
}

/// Half-width of the final arc, 1/(3 2^l).
pub fn coverage_radius(l: u32) -> f64 {
    ARC_LENGTH / 2f64.powi(l as i32)
}

fn finish_trial(theta: f64, stages: &[StageEstimate]) -> Result<TrialOutcome> {
    let arcs: Vec<_> = stages.iter().map(|s| arc_from_estimate(s.value)).collect();
    let it = iterate_arcs(&arcs)?;
    let flagged = stages.iter().any(|s| s.flagged);
    let distance = circ_dist(it.estimate, theta);
    let stage_misses = arcs
        .iter()
        .enumerate()
        .map(|(k, a)| !a.contains((2f64.powi(k as i32) * theta).rem_euclid(1.0)))
        .collect();
    Ok(TrialOutcome {
        theta,
        estimate: it.estimate,
        distance,
        covered: !flagged && distance <= coverage_radius(stages.len() as u32),
        flagged,
        stage_misses,
        chain_ok: it.chain.invariant_holds(),
    })
}

/// One run of the l-stage estimator with n_tot / 2 binomial samples per basis.
pub fn run_trial<R: Rng + ?Sized>(theta: f64, l: u32, n_tot: u64, noise: NoiseModel, rng: &mut R) -> Result<TrialOutcome> {
    check_stages(l)?;
    let n = per_basis(n_tot)?;
    let stages = (1..=l)
        .map(|k| {
            let (px, py) = stage_probs(theta, k, noise);
            let nx0 = Binomial::new(n, px.clamp(0.0, 1.0)).map_err(|e| Error::InvalidArgument(e.to_string()))?.sample(rng);
            let ny0 = Binomial::new(n, py.clamp(0.0, 1.0)).map_err(|e| Error::InvalidArgument(e.to_string()))?.sample(rng);
            Ok(estimate_stage(&StageCounts::new(n, nx0, ny0)?))
        })
        .collect::<Result<Vec<_>>>()?;
    finish_trial(theta, &stages)
}

/// The estimator with exact probabilities in place of sampled frequencies.
pub fn run_exact_trial(theta: f64, l: u32, noise: NoiseModel) -> Result<TrialOutcome> {
    check_stages(l)?;
    let stages: Vec<_> = (1..=l)
        .map(|k| {
            let (px, py) = stage_probs(theta, k, noise);
            estimate_from_frequencies(px, py)
        })
        .collect();
    finish_trial(theta, &stages)
}

/// The RNG for one trial: a ChaCha stream selected by the trial index, so
/// results do not depend on scheduling.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub l: u32,
    pub n_tot: u64,
    pub trials: u64,
    pub noise: NoiseModel,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageDiagnostics {
    pub stage: u32,
    pub uses: f64,
    pub amplitude: f64,
    /// Trials whose stage arc missed the true phase multiple.
    pub misses: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub l: u32,
    pub n_tot: u64,
    pub r: f64,
    pub trials: u64,
    pub successes: u64,
    pub coverage: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub seed: u64,
    /// Seconds; left at 0 unless the caller records it.
    pub wall_time: f64,
    pub flagged_trials: u64,
    pub chain_violations: u64,
    pub mean_distance: f64,
    pub max_distance: f64,
    pub stages: Vec<StageDiagnostics>,
}

/// Approximate 95% interval m/M +- 1.96 sqrt(p(1-p)/M).
pub fn coverage_ci(m: u64, total: u64) -> Result<(f64, f64)> {
    if total == 0 {
        return Err(Error::InvalidArgument("no trials".into()));
    }
    if m > total {
        return Err(Error::InvalidArgument(format!("{m} successes out of {total} trials")));
    }
    let p = m as f64 / total as f64;
    let half = 1.96 * (p * (1.0 - p) / total as f64).sqrt();
    Ok((p - half, p + half))
}

/// Monte-Carlo coverage of the final arc with theta uniform on [0, 1) per
/// trial. Runs on the current rayon pool; output is the same for any pool size.
pub fn run_simulation(cfg: &SimConfig) -> Result<SimReport> {
    check_stages(cfg.l)?;
    per_basis(cfg.n_tot)?;
    if cfg.trials == 0 {
        return Err(Error::InvalidArgument("trial count must be at least 1".into()));
    }
    let outcomes = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(cfg.seed, t);
            let theta: f64 = rng.gen();
            run_trial(theta, cfg.l, cfg.n_tot, cfg.noise, &mut rng)
        })
        .collect::<Result<Vec<_>>>()?;
    let successes = outcomes.iter().filter(|o| o.covered).count() as u64;
    let (ci_lo, ci_hi) = coverage_ci(successes, cfg.trials)?;
    let stages = (0..cfg.l)
        .map(|k| {
            let uses = 2f64.powi(k as i32);
            StageDiagnostics {
                stage: k + 1,
                uses,
                amplitude: cfg.noise.amplitude(uses),
                misses: outcomes.iter().filter(|o| o.stage_misses[k as usize]).count() as u64,
            }
        })
        .collect();
    Ok(SimReport {
        l: cfg.l,
        n_tot: cfg.n_tot,
        r: cfg.noise.r(),
        trials: cfg.trials,
        successes,
        coverage: successes as f64 / cfg.trials as f64,
        ci_lo,
        ci_hi,
        seed: cfg.seed,
        wall_time: 0.0,
        flagged_trials: outcomes.iter().filter(|o| o.flagged).count() as u64,
        chain_violations: outcomes.iter().filter(|o| !o.chain_ok).count() as u64,
        mean_distance: outcomes.iter().map(|o| o.distance).sum::<f64>() / cfg.trials as f64,
        max_distance: outcomes.iter().map(|o| o.distance).fold(0.0, f64::max),
        stages,
    })
}

/// Runs on a dedicated pool of the given size.
pub fn run_simulation_with_workers(cfg: &SimConfig, workers: usize) -> Result<SimReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(|| run_simulation(cfg))
}
