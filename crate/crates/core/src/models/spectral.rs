use serde::{Deserialize, Serialize};

use super::family::{zero_vector, ParametricFamily, SpectralPoint};
use crate::error::{Error, Result};
use crate::linalg::{inner, outer, CMatrix, CVector, C64, ZERO};
use crate::tol;

/// How eigenvector phases are fixed along the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gauge {
    /// Analytic eigenvectors as supplied; on the numerical path the component
    /// that is largest at theta is held real and positive.
    #[default]
    FixedPhase,
    /// <w_k | w_k'> = 0 (one-parameter families only).
    Parallel,
}

impl Gauge {
    pub fn description(&self) -> &'static str {
        match self {
            Gauge::FixedPhase => "eigenvector phases fixed by the family (or by a reference component)",
            Gauge::Parallel => "parallel transport: <w_k|w_k'> = 0",
        }
    }
}

/// Eigen-data (p_k, w_k) at theta together with first derivatives.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralCurve {
    pub theta: Vec<f64>,
    pub probs: Vec<f64>,
    pub vectors: Vec<CVector>,
    /// prob_derivs[j][k] = d p_k / d theta^j
    pub prob_derivs: Vec<Vec<f64>>,
    /// vector_derivs[j][k] = d w_k / d theta^j
    pub vector_derivs: Vec<Vec<CVector>>,
    pub gauge: Gauge,
}

impl SpectralCurve {
    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn param_count(&self) -> usize {
        self.prob_derivs.len()
    }

    pub fn in_support(&self, k: usize) -> bool {
        self.probs[k] > tol::PROB_FLOOR
    }

    /// A[a][b] = <w_a^{(j)} | w_b>.
    pub fn connection(&self, j: usize) -> CMatrix {
        let d = self.dim();
        CMatrix::from_fn(d, d, |a, b| inner(&self.vector_derivs[j][a], &self.vectors[b]))
    }

    pub fn state(&self) -> CMatrix {
        SpectralPoint { probs: self.probs.clone(), vectors: self.vectors.clone() }.state()
    }

    /// Largest violation of the curve invariants: orthonormality,
    /// Re <w_k^{(j)}|w_k> = 0 and <w_a^{(j)}|w_b> = -<w_a|w_b^{(j)}>.
    pub fn invariant_residuals(&self) -> (f64, f64, f64) {
        let d = self.dim();
        let mut ortho = 0.0f64;
        for a in 0..d {
            for b in 0..d {
                let want = if a == b { 1.0 } else { 0.0 };
                ortho = ortho.max((inner(&self.vectors[a], &self.vectors[b]) - C64::new(want, 0.0)).norm());
            }
        }
        let mut real_part = 0.0f64;
        let mut anti = 0.0f64;
        for j in 0..self.param_count() {
            for a in 0..d {
                real_part = real_part.max(inner(&self.vector_derivs[j][a], &self.vectors[a]).re.abs());
                for b in 0..d {
                    let lhs = inner(&self.vector_derivs[j][a], &self.vectors[b]);
                    let rhs = -inner(&self.vectors[a], &self.vector_derivs[j][b]);
                    anti = anti.max((lhs - rhs).norm());
                }
            }
        }
        (ortho, real_part, anti)
    }
}

fn displaced(theta: &[f64], j: usize, delta: f64) -> Vec<f64> {
    let mut t = theta.to_vec();
    t[j] += delta;
    t
}

/// Numerical derivative d rho / d theta^j (analytic when the family has one),
/// symmetrized to be Hermitian.
pub fn d_rho(fam: &ParametricFamily, theta: &[f64], j: usize) -> Result<CMatrix> {
    d_rho_with_step(fam, theta, j, tol::FD_STEP)
}

pub fn d_rho_with_step(fam: &ParametricFamily, theta: &[f64], j: usize, step: f64) -> Result<CMatrix> {
    fam.check_params(theta)?;
    if j >= fam.param_count() {
        return Err(Error::InvalidArgument(format!("parameter index {j} out of range")));
    }
    if let Some(d) = fam.analytic_derivative(theta, j) {
        return Ok(d?.hermitian_part());
    }
    fam.check_interior(theta, step)?;
    let plus = fam.state_matrix(&displaced(theta, j, step))?;
    let minus = fam.state_matrix(&displaced(theta, j, -step))?;
    Ok((&plus - &minus).scale_real(0.5 / step).hermitian_part())
}

pub fn spectral_curve(fam: &ParametricFamily, theta: &[f64], gauge: Gauge) -> Result<SpectralCurve> {
    spectral_curve_with_step(fam, theta, gauge, tol::FD_STEP)
}

/// Rotates `v` by a unit phase so that `<reference|v>` is real and positive.
fn align_overlap(v: &mut CVector, reference: &[C64]) {
    let ov = inner(reference, v);
    if ov.norm() > 0.0 {
        let ph = ov.conj() / ov.norm();
        v.iter_mut().for_each(|x| *x *= ph);
    }
}

/// Rotates `v` so that component `idx` is real and positive.
fn align_component(v: &mut CVector, idx: usize) {
    let c = v[idx];
    if c.norm() > 0.0 {
        let ph = c.conj() / c.norm();
        v.iter_mut().for_each(|x| *x *= ph);
    }
}

fn largest_component(v: &[C64]) -> usize {
    let max = v.iter().map(|x| x.norm()).fold(0.0, f64::max);
    v.iter().position(|x| x.norm() >= max * (1.0 - 1e-12)).unwrap_or(0)
}

pub fn spectral_curve_with_step(
    fam: &ParametricFamily,
    theta: &[f64],
    gauge: Gauge,
    step: f64,
) -> Result<SpectralCurve> {
    fam.check_interior(theta, step)?;
    let p = fam.param_count();
    if gauge == Gauge::Parallel && p != 1 {
        return Err(Error::GaugeUnsupported(p));
    }
    let analytic = fam.has_analytic_spectral();
    let center = fam.spectral_point(theta)?;
    let d = center.vectors.len();
    let support: Vec<usize> = (0..d).filter(|&k| center.probs[k] > tol::PROB_FLOOR).collect();

    if !analytic {
        // nonzero eigenvalues must be separated from each other and from the rest
        let mut gap = f64::INFINITY;
        for &k in &support {
            for m in 0..d {
                if m != k {
                    gap = gap.min((center.probs[k] - center.probs[m]).abs());
                }
            }
        }
        if gap <= tol::TRACKING_GAP {
            return Err(Error::DegenerateSpectrum { gap, threshold: tol::TRACKING_GAP });
        }
    }

    let mut prob_derivs = vec![vec![0.0; d]; p];
    let mut vector_derivs = vec![vec![zero_vector(d); d]; p];

    for j in 0..p {
        let mut sides: [(Vec<f64>, Vec<CVector>); 2] = Default::default();
        for (slot, sign) in [1.0, -1.0].into_iter().enumerate() {
            let pt = fam.spectral_point(&displaced(theta, j, sign * step))?;
            let (mut probs, mut vectors) = (Vec::with_capacity(support.len()), Vec::with_capacity(support.len()));
            for &k in &support {
                let idx = if analytic {
                    k
                } else {
                    let (best, ov) = pt
                        .vectors
                        .iter()
                        .enumerate()
                        .map(|(i, v)| (i, inner(&center.vectors[k], v).norm()))
                        .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
                    if ov < tol::TRACKING_OVERLAP {
                        return Err(Error::EigenTracking(ov));
                    }
                    best
                };
                let mut v = pt.vectors[idx].clone();
                match (gauge, analytic) {
                    (Gauge::Parallel, _) => align_overlap(&mut v, &center.vectors[k]),
                    (Gauge::FixedPhase, false) => align_component(&mut v, largest_component(&center.vectors[k])),
                    (Gauge::FixedPhase, true) => {}
                }
                probs.push(pt.probs[idx]);
                vectors.push(v);
            }
            sides[slot] = (probs, vectors);
        }
        let [(pp, vp), (pm, vm)] = &sides;
        for (s, &k) in support.iter().enumerate() {
            prob_derivs[j][k] = (pp[s] - pm[s]) / (2.0 * step);
            vector_derivs[j][k] = vp[s].iter().zip(&vm[s]).map(|(a, b)| (a - b) / (2.0 * step)).collect();
        }
        // zero-probability vectors: only their overlaps with the support matter;
        // rebuild them from <w_i'|w_k> = -<w_i|w_k'>
        for k in (0..d).filter(|k| !support.contains(k)) {
            let mut dv = zero_vector(d);
            for &s in &support {
                let coeff = -inner(&vector_derivs[j][s], &center.vectors[k]);
                for (x, w) in dv.iter_mut().zip(&center.vectors[s]) {
                    *x += coeff * w;
                }
            }
            vector_derivs[j][k] = dv;
        }
    }

    Ok(SpectralCurve { theta: theta.to_vec(), probs: center.probs, vectors: center.vectors, prob_derivs, vector_derivs, gauge })
}

/// Symmetric logarithmic derivative for parameter j.
#[derive(Debug, Clone, Serialize)]
pub struct SldScore {
    pub lambda: CMatrix,
    pub param: usize,
}

impl SldScore {
    /// || d rho - (rho lambda + lambda rho)/2 ||_max
    pub fn residual(&self, rho: &CMatrix, drho: &CMatrix) -> f64 {
        let anti = (&(rho * &self.lambda) + &(&self.lambda * rho)).scale_real(0.5);
        (drho - &anti).max_abs()
    }
}

/// The particular SLD solution built from spectral data, with zero entries
/// on pairs where both eigenvalues vanish.
pub fn sld_score_from_curve(curve: &SpectralCurve, j: usize) -> SldScore {
    let d = curve.dim();
    let conn = curve.connection(j);
    let mut lambda = CMatrix::zeros(d, d);
    for a in 0..d {
        if curve.in_support(a) {
            let w = &curve.vectors[a];
            lambda = &lambda + &outer(w, w).scale_real(curve.prob_derivs[j][a] / curve.probs[a]);
        }
        for b in 0..d {
            let (pa, pb) = (curve.probs[a], curve.probs[b]);
            if a == b || pa + pb <= tol::PROB_FLOOR {
                continue;
            }
            let coeff = conn[(a, b)] * (2.0 * (pa - pb) / (pa + pb));
            if coeff != ZERO {
                lambda = &lambda + &outer(&curve.vectors[a], &curve.vectors[b]).scale(coeff);
            }
        }
    }
    SldScore { lambda: lambda.hermitian_part(), param: j }
}

pub fn sld_score(fam: &ParametricFamily, theta: &[f64], j: usize) -> Result<SldScore> {
    let curve = spectral_curve(fam, theta, Gauge::FixedPhase)?;
    if j >= curve.param_count() {
        return Err(Error::InvalidArgument(format!("parameter index {j} out of range")));
    }
    Ok(sld_score_from_curve(&curve, j))
}
