use serde::Serialize;
use std::collections::BTreeMap;
use std::time::Instant;

use super::format::{fmt_num, to_csv, to_json};
use super::{CommutingArgs, ConfigFile, Format, MetricsArgs, PhasePlanArgs, PhaseSimArgs, Settings};
use crate::error::{Error, Result};
use crate::metrics::{ballester_povm, commuting_scheme_info, metric_report, Scheme};
use crate::models::{family_by_name, Gauge, FAMILY_NAMES};
use crate::phase::{
    alpha_bound_check, bernstein_counts, iterate_arcs, noise_planning, run_simulation, run_simulation_with_workers,
    worst_case_fidelity, Arc, BernsteinCounts, FidelityBound, NoiseModel, NoisePlan, SimConfig, SimReport,
};
use crate::quantum::{measure_basis, Axis};

fn parse_gauge(s: &str) -> Result<Gauge> {
    match s {
        "fixed_phase" | "fixed" => Ok(Gauge::FixedPhase),
        "parallel" => Ok(Gauge::Parallel),
        _ => Err(Error::Unknown { kind: "gauge", name: s.into(), known: "fixed_phase, parallel".into() }),
    }
}

fn pick<T: Clone>(flag: &[T], cfg: &Option<Vec<T>>, default: Vec<T>) -> Vec<T> {
    if !flag.is_empty() {
        flag.to_vec()
    } else {
        cfg.clone().unwrap_or(default)
    }
}

pub fn metrics(a: &MetricsArgs, cfg: &ConfigFile, s: &Settings) -> Result<String> {
    let name = a.family.clone().or_else(|| cfg.family.clone()).ok_or_else(|| {
        Error::InvalidArgument(format!("--family is required, one of: {}", FAMILY_NAMES.join(", ")))
    })?;
    let mut fixed: BTreeMap<String, f64> = cfg.set.clone().unwrap_or_default();
    fixed.extend(a.set.iter().cloned());
    let fam = family_by_name(&name, &fixed)?;
    let theta = pick(&a.params, &cfg.params, Vec::new());
    if theta.is_empty() {
        return Err(Error::InvalidArgument("--params is required".into()));
    }
    let gauge = match a.gauge.as_ref().or(cfg.gauge.as_ref()) {
        Some(g) => parse_gauge(g)?,
        None => Gauge::FixedPhase,
    };
    let povm = match a.povm.as_ref().or(cfg.povm.as_ref()).map(String::as_str) {
        None => None,
        Some("ballester") => Some(ballester_povm(&fam, &theta, None)?),
        Some(axis @ ("x" | "y" | "z")) => {
            if fam.dim() != 2 {
                return Err(Error::InvalidArgument(format!("--povm {axis} needs a qubit family")));
            }
            Some(measure_basis(match axis {
                "x" => Axis::X,
                "y" => Axis::Y,
                _ => Axis::Z,
            }))
        }
        Some(other) => {
            return Err(Error::Unknown { kind: "measurement", name: other.into(), known: "x, y, z, ballester".into() })
        }
    };
    let report = metric_report(&fam, &theta, gauge, povm.as_ref())?;
    match s.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .rows()
                .into_iter()
                .map(|(sec, n, i, j, x)| vec![sec, n, i.to_string(), j.to_string(), fmt_num(x)])
                .collect();
            to_csv(&["section", "name", "i", "j", "value"], &rows)
        }
    }
}

const SIM_HEADER: [&str; 10] = ["l", "n_tot", "r", "trials", "successes", "coverage", "ci_lo", "ci_hi", "seed", "wall_time"];

fn sim_row(r: &SimReport) -> Vec<String> {
    vec![
        r.l.to_string(),
        r.n_tot.to_string(),
        fmt_num(r.r),
        r.trials.to_string(),
        r.successes.to_string(),
        fmt_num(r.coverage),
        fmt_num(r.ci_lo),
        fmt_num(r.ci_hi),
        r.seed.to_string(),
        fmt_num(r.wall_time),
    ]
}

pub fn phase_sim(a: &PhaseSimArgs, cfg: &ConfigFile, s: &Settings) -> Result<String> {
    let ls = pick(&a.l, &cfg.l, vec![6]);
    let ntots = pick(&a.n_tot, &cfg.n_tot, vec![30]);
    let rs = pick(&a.r, &cfg.r, vec![0.0]);
    let trials = a.trials.or(cfg.trials).unwrap_or(100_000);
    let mut reports = Vec::new();
    for &r in &rs {
        let noise = NoiseModel::new(r)?;
        for &n_tot in &ntots {
            for &l in &ls {
                let sc = SimConfig { l, n_tot, trials, noise, seed: s.seed };
                let start = Instant::now();
                let mut rep = match s.workers {
                    Some(w) => run_simulation_with_workers(&sc, w)?,
                    None => run_simulation(&sc)?,
                };
                if s.timing {
                    rep.wall_time = start.elapsed().as_secs_f64();
                }
                reports.push(rep);
            }
        }
    }
    match s.format {
        Format::Json => to_json(&reports),
        Format::Csv => to_csv(&SIM_HEADER, &reports.iter().map(sim_row).collect::<Vec<_>>()),
    }
}

#[derive(Serialize)]
struct Plan {
    l: u32,
    eps: f64,
    counts: BernsteinCounts,
    alpha_margin: f64,
    fidelity: FidelityBound,
    noise: Option<NoisePlan>,
}

pub fn phase_plan(a: &PhasePlanArgs, cfg: &ConfigFile, s: &Settings) -> Result<String> {
    let l = a.l.or_else(|| cfg.l.as_ref().and_then(|v| v.first().copied())).unwrap_or(6);
    let eps = a.eps.or(cfg.eps).unwrap_or(2f64.powi(-12));
    let r = a.r.or_else(|| cfg.r.as_ref().and_then(|v| v.first().copied()));
    let noise = match r {
        Some(r) => {
            let probe = noise_planning(r, 1)?;
            Some(noise_planning(r, l.max(probe.l_star + 2))?)
        }
        None => None,
    };
    let plan = Plan {
        l,
        eps,
        counts: bernstein_counts(l, eps)?,
        alpha_margin: alpha_bound_check(),
        fidelity: worst_case_fidelity(l, eps)?,
        noise,
    };
    match s.format {
        Format::Json => to_json(&plan),
        Format::Csv => {
            let mut rows = vec![
                vec!["l".into(), String::new(), plan.l.to_string()],
                vec!["eps".into(), String::new(), fmt_num(eps)],
                vec!["n_per_basis".into(), String::new(), plan.counts.n.to_string()],
                vec!["n_tot".into(), String::new(), plan.counts.n_tot.to_string()],
                vec!["alpha_margin".into(), String::new(), fmt_num(plan.alpha_margin)],
                vec!["fidelity_exact".into(), String::new(), fmt_num(plan.fidelity.exact)],
                vec!["fidelity_approx".into(), String::new(), fmt_num(plan.fidelity.approx)],
            ];
            if let Some(n) = &plan.noise {
                rows.push(vec!["r".into(), String::new(), fmt_num(n.r)]);
                rows.push(vec!["m_star".into(), String::new(), fmt_num(n.m_star)]);
                rows.push(vec!["m_star_approx".into(), String::new(), fmt_num(n.m_star_approx)]);
                rows.push(vec!["l_star".into(), String::new(), n.l_star.to_string()]);
                for c in &n.curve {
                    rows.push(vec!["info_per_use".into(), c.stage.to_string(), fmt_num(c.info_per_use)]);
                }
            }
            to_csv(&["quantity", "stage", "value"], &rows)
        }
    }
}

#[derive(Serialize)]
struct ArcStage {
    stage: usize,
    l_lower: f64,
    l_upper: f64,
    j_lower: f64,
    j_upper: f64,
}

#[derive(Serialize)]
struct ArcExample {
    example: usize,
    stages: Vec<ArcStage>,
    final_lower: f64,
    final_upper: f64,
    estimate: f64,
}

/// Stage arcs (lower ends) of the two worked examples, length 0.3.
pub const ARC_EXAMPLES: [[f64; 3]; 2] = [[0.6, 0.3, 0.8], [0.1, 0.7, 0.9]];
pub const ARC_EXAMPLE_LENGTH: f64 = 0.3;

pub fn arc_demo(s: &Settings) -> Result<String> {
    let mut out = Vec::new();
    for (e, lowers) in ARC_EXAMPLES.iter().enumerate() {
        let arcs = lowers.iter().map(|&x| Arc::new(x, ARC_EXAMPLE_LENGTH)).collect::<Result<Vec<_>>>()?;
        let it = iterate_arcs(&arcs)?;
        let stages = arcs
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let (lo, hi) = it.chain.interval(k);
                ArcStage { stage: k + 1, l_lower: a.lower, l_upper: a.upper(), j_lower: lo, j_upper: hi }
            })
            .collect();
        out.push(ArcExample {
            example: e + 1,
            stages,
            final_lower: it.final_arc.lower,
            final_upper: it.final_arc.upper(),
            estimate: it.estimate,
        });
    }
    match s.format {
        Format::Json => to_json(&out),
        Format::Csv => {
            let mut rows = Vec::new();
            for ex in &out {
                for st in &ex.stages {
                    rows.push(vec![
                        ex.example.to_string(),
                        st.stage.to_string(),
                        fmt_num(st.l_lower),
                        fmt_num(st.l_upper),
                        fmt_num(st.j_lower),
                        fmt_num(st.j_upper),
                        String::new(),
                    ]);
                }
                rows.push(vec![
                    ex.example.to_string(),
                    "final".into(),
                    String::new(),
                    String::new(),
                    fmt_num(ex.final_lower),
                    fmt_num(ex.final_upper),
                    fmt_num(ex.estimate),
                ]);
            }
            to_csv(&["example", "stage", "l_lower", "l_upper", "j_lower", "j_upper", "estimate"], &rows)
        }
    }
}

#[derive(Serialize)]
struct CommutingOut {
    n: usize,
    d: usize,
    slopes: Vec<f64>,
    separate: f64,
    sequential: f64,
    ratio: f64,
}

pub fn commuting(a: &CommutingArgs, cfg: &ConfigFile, s: &Settings) -> Result<String> {
    let d = a.d.or(cfg.d).unwrap_or(2);
    let given = pick(&a.slopes, &cfg.slopes, Vec::new());
    let n = a.n.or(cfg.n);
    let slopes = match (n, given.is_empty()) {
        (Some(n), true) => vec![1.0; n],
        (None, true) => vec![1.0; 2],
        (Some(n), false) if n != given.len() => {
            return Err(Error::InvalidArgument(format!("--n {n} disagrees with {} slopes", given.len())))
        }
        _ => given,
    };
    let separate = commuting_scheme_info(&slopes, d, Scheme::Separate)?;
    let sequential = commuting_scheme_info(&slopes, d, Scheme::Sequential)?;
    let out = CommutingOut { n: slopes.len(), d, slopes, separate, sequential, ratio: sequential / separate };
    match s.format {
        Format::Json => to_json(&out),
        Format::Csv => to_csv(
            &["n", "d", "separate", "sequential", "ratio"],
            &[vec![out.n.to_string(), d.to_string(), fmt_num(separate), fmt_num(sequential), fmt_num(out.ratio)]],
        ),
    }
}
