use std::collections::BTreeMap;

use serde::Serialize;

use super::attainability::{check_bc, check_matsumoto, dim_bound_check, BcVerdict, DimBoundVerdict, MatsumotoVerdict};
use super::info::{
    c_l_from_curve, c_upsilon_from_curve, decomposition_residual, fisher_info, kmb_info, rld_info, sld_info_from_curve,
    InfoMatrix,
};
use crate::error::Result;
use crate::models::{spectral_curve, Gauge, ParametricFamily};
use crate::quantum::Povm;
use crate::tol;

#[derive(Debug, Clone, Serialize)]
pub struct Gaps {
    /// min eigenvalue of C_L - H
    pub cl_minus_sld: f64,
    /// min eigenvalue of C_Upsilon - C_L
    pub cupsilon_minus_cl: f64,
    /// min eigenvalue of H - F, when a measurement was supplied
    pub sld_minus_fisher: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdicts {
    /// H <= C_L <= C_Upsilon within the matrix-order slack
    pub ordering_holds: bool,
    pub decomposition_residual: f64,
    pub braunstein_caves: Option<BcVerdict>,
    pub matsumoto: Option<MatsumotoVerdict>,
    pub dim_bound: Option<DimBoundVerdict>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MetricReport {
    pub family: String,
    pub theta: Vec<f64>,
    pub gauge: Gauge,
    pub gauge_description: &'static str,
    pub matrices: BTreeMap<String, Vec<Vec<f64>>>,
    /// Quantities that could not be evaluated, with the reason.
    pub unavailable: BTreeMap<String, String>,
    pub gaps: Gaps,
    pub verdicts: Verdicts,
}

impl MetricReport {
    /// Flat (section, name, i, j, value) rows carrying every number in the report.
    pub fn rows(&self) -> Vec<(String, String, usize, usize, f64)> {
        let mut rows = Vec::new();
        for (k, t) in self.theta.iter().enumerate() {
            rows.push(("theta".into(), "theta".into(), k, 0, *t));
        }
        for (name, m) in &self.matrices {
            for (i, r) in m.iter().enumerate() {
                for (j, x) in r.iter().enumerate() {
                    rows.push(("matrix".into(), name.clone(), i, j, *x));
                }
            }
        }
        let g = &self.gaps;
        rows.push(("gap".into(), "cl_minus_sld".into(), 0, 0, g.cl_minus_sld));
        rows.push(("gap".into(), "cupsilon_minus_cl".into(), 0, 0, g.cupsilon_minus_cl));
        if let Some(x) = g.sld_minus_fisher {
            rows.push(("gap".into(), "sld_minus_fisher".into(), 0, 0, x));
        }
        let v = &self.verdicts;
        let flag = |b: bool| if b { 1.0 } else { 0.0 };
        rows.push(("verdict".into(), "ordering_holds".into(), 0, 0, flag(v.ordering_holds)));
        rows.push(("verdict".into(), "decomposition_residual".into(), 0, 0, v.decomposition_residual));
        if let Some(bc) = v.braunstein_caves {
            rows.push(("verdict".into(), "braunstein_caves".into(), 0, 0, flag(bc.holds)));
        }
        if let Some(m) = v.matsumoto {
            rows.push(("verdict".into(), "matsumoto".into(), 0, 0, flag(m.holds)));
            rows.push(("verdict".into(), "matsumoto_max_imag".into(), 0, 0, m.max_imag));
        }
        if let Some(d) = v.dim_bound {
            rows.push(("verdict".into(), "dim_bound_consistent".into(), 0, 0, flag(d.consistent)));
        }
        rows
    }
}

fn insert(map: &mut BTreeMap<String, Vec<Vec<f64>>>, m: &InfoMatrix) {
    map.insert(m.kind.label().to_string(), m.entries.clone());
}

/// Evaluates every information quantity available for the family at theta.
pub fn metric_report(fam: &ParametricFamily, theta: &[f64], gauge: Gauge, povm: Option<&Povm>) -> Result<MetricReport> {
    let curve = spectral_curve(fam, theta, gauge)?;
    let h = sld_info_from_curve(&curve);
    let cl = c_l_from_curve(&curve);
    let cu = c_upsilon_from_curve(&curve);
    let mut matrices = BTreeMap::new();
    let mut unavailable = BTreeMap::new();
    for m in [&h, &cl, &cu] {
        insert(&mut matrices, m);
    }
    for (label, r) in [("KMB", kmb_info(fam, theta)), ("RLD", rld_info(fam, theta))] {
        match r {
            Ok(m) => insert(&mut matrices, &m),
            Err(e) => {
                unavailable.insert(label.to_string(), e.to_string());
            }
        }
    }
    let cl_minus_sld = cl.min_eig_gap(&h)?;
    let cupsilon_minus_cl = cu.min_eig_gap(&cl)?;
    let slack = tol::MATRIX_ORDER * cu.trace().abs().max(1.0);
    let (bc, sld_minus_fisher) = match povm {
        Some(p) => {
            let f = fisher_info(fam, theta, p)?;
            insert(&mut matrices, &f);
            let v = check_bc(&f, &h)?;
            (Some(v), Some(v.min_eigenvalue))
        }
        None => (None, None),
    };
    let (matsumoto, dim_bound) = if fam.is_pure() {
        (Some(check_matsumoto(fam, theta)?), Some(dim_bound_check(fam, theta)?))
    } else {
        (None, None)
    };
    Ok(MetricReport {
        family: fam.name().to_string(),
        theta: theta.to_vec(),
        gauge,
        gauge_description: gauge.description(),
        matrices,
        unavailable,
        gaps: Gaps { cl_minus_sld, cupsilon_minus_cl, sld_minus_fisher },
        verdicts: Verdicts {
            ordering_holds: cl_minus_sld >= -slack && cupsilon_minus_cl >= -slack,
            decomposition_residual: decomposition_residual(&curve),
            braunstein_caves: bc,
            matsumoto,
            dim_bound,
        },
    })
}
