use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{herm_eig, inner, norm, outer, scale_vec, tensor, tensor_vec, CMatrix, CVector, C64, ZERO};
use crate::quantum::{DensityMatrix, KrausChannel};

pub type StateFn = Arc<dyn Fn(&[f64]) -> Result<CMatrix> + Send + Sync>;
pub type SpectralFn = Arc<dyn Fn(&[f64]) -> Result<SpectralPoint> + Send + Sync>;
pub type DerivativeFn = Arc<dyn Fn(&[f64], usize) -> Result<CMatrix> + Send + Sync>;
pub type PureFn = Arc<dyn Fn(&[f64]) -> Result<CVector> + Send + Sync>;

/// Eigenvalues and eigenvectors at one parameter point, in a labelling that
/// is smooth in the parameters.
#[derive(Debug, Clone)]
pub struct SpectralPoint {
    pub probs: Vec<f64>,
    pub vectors: Vec<CVector>,
}

impl SpectralPoint {
    pub fn state(&self) -> CMatrix {
        let d = self.vectors[0].len();
        self.probs
            .iter()
            .zip(&self.vectors)
            .fold(CMatrix::zeros(d, d), |acc, (p, w)| &acc + &outer(w, w).scale_real(*p))
    }

    /// Pads the vector list to a full orthonormal basis, giving the new
    /// vectors probability zero.
    pub fn completed(mut self) -> Self {
        let d = self.vectors[0].len();
        let mut k = 0;
        while self.vectors.len() < d && k < d {
            let mut v = crate::linalg::basis_vector(d, k);
            for w in &self.vectors {
                let c = inner(w, &v);
                for (vi, wi) in v.iter_mut().zip(w) {
                    *vi -= c * wi;
                }
            }
            let n = norm(&v);
            if n > 1e-6 {
                self.vectors.push(scale_vec(C64::new(1.0 / n, 0.0), &v));
                self.probs.push(0.0);
            }
            k += 1;
        }
        self
    }
}

/// A smooth family theta -> rho_theta of density matrices on C^d.
#[derive(Clone)]
pub struct ParametricFamily {
    name: String,
    dim: usize,
    param_count: usize,
    domain: Vec<(f64, f64)>,
    state: StateFn,
    spectral: Option<SpectralFn>,
    derivative: Option<DerivativeFn>,
    pure: Option<PureFn>,
}

impl fmt::Debug for ParametricFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParametricFamily")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("param_count", &self.param_count)
            .field("analytic_spectral", &self.spectral.is_some())
            .field("analytic_derivative", &self.derivative.is_some())
            .field("pure", &self.pure.is_some())
            .finish()
    }
}

impl ParametricFamily {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        param_count: usize,
        state: impl Fn(&[f64]) -> Result<CMatrix> + Send + Sync + 'static,
    ) -> Self {
        ParametricFamily {
            name: name.into(),
            dim,
            param_count,
            domain: vec![(f64::NEG_INFINITY, f64::INFINITY); param_count],
            state: Arc::new(state),
            spectral: None,
            derivative: None,
            pure: None,
        }
    }

    /// Family given by its spectral data; the labelling must be smooth.
    /// Degenerate eigenvalues are allowed on this path.
    pub fn from_spectral(
        name: impl Into<String>,
        dim: usize,
        param_count: usize,
        spectral: impl Fn(&[f64]) -> Result<SpectralPoint> + Send + Sync + 'static,
    ) -> Self {
        let spectral: SpectralFn = Arc::new(spectral);
        let s = spectral.clone();
        let mut fam = Self::new(name, dim, param_count, move |t| Ok(s(t)?.state()));
        fam.spectral = Some(spectral);
        fam
    }

    /// Pure family theta -> |psi_theta><psi_theta|.
    pub fn pure(
        name: impl Into<String>,
        dim: usize,
        param_count: usize,
        psi: impl Fn(&[f64]) -> Result<CVector> + Send + Sync + 'static,
    ) -> Self {
        let psi: PureFn = Arc::new(psi);
        let p = psi.clone();
        let mut fam = Self::from_spectral(name, dim, param_count, move |t| {
            Ok(SpectralPoint { probs: vec![1.0], vectors: vec![p(t)?] })
        });
        fam.pure = Some(psi);
        fam
    }

    pub fn with_derivative(mut self, d: impl Fn(&[f64], usize) -> Result<CMatrix> + Send + Sync + 'static) -> Self {
        self.derivative = Some(Arc::new(d));
        self
    }

    /// Open box domain, one (low, high) pair per parameter.
    pub fn with_domain(mut self, domain: Vec<(f64, f64)>) -> Self {
        assert_eq!(domain.len(), self.param_count, "one interval per parameter");
        self.domain = domain;
        self
    }

    /// Drops any analytic spectral and derivative data, forcing the numerical
    /// eigen-tracking path.
    pub fn numerical(&self) -> Self {
        let mut f = self.clone();
        f.spectral = None;
        f.derivative = None;
        f.name = format!("{}[numerical]", self.name);
        f
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn param_count(&self) -> usize {
        self.param_count
    }

    pub fn domain(&self) -> &[(f64, f64)] {
        &self.domain
    }

    pub fn has_analytic_spectral(&self) -> bool {
        self.spectral.is_some()
    }

    pub fn is_pure(&self) -> bool {
        self.pure.is_some()
    }

    pub(crate) fn check_params(&self, theta: &[f64]) -> Result<()> {
        if theta.len() != self.param_count {
            return Err(Error::DimensionMismatch(format!(
                "family '{}' takes {} parameters, got {}",
                self.name,
                self.param_count,
                theta.len()
            )));
        }
        Ok(())
    }

    /// Checks that theta +- step along every axis stays inside the domain.
    pub(crate) fn check_interior(&self, theta: &[f64], step: f64) -> Result<()> {
        self.check_params(theta)?;
        let inside = theta.iter().zip(&self.domain).all(|(t, (lo, hi))| t - step > *lo && t + step < *hi);
        if inside {
            Ok(())
        } else {
            Err(Error::DomainBoundary(theta.to_vec()))
        }
    }

    pub fn state_matrix(&self, theta: &[f64]) -> Result<CMatrix> {
        self.check_params(theta)?;
        let m = (self.state)(theta)?;
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "family '{}' produced a {}x{} matrix, declared dim {}",
                self.name,
                m.rows(),
                m.cols(),
                self.dim
            )));
        }
        Ok(m)
    }

    /// Validated density matrix at theta.
    pub fn state(&self, theta: &[f64]) -> Result<DensityMatrix> {
        DensityMatrix::new(self.state_matrix(theta)?)
    }

    pub fn psi(&self, theta: &[f64]) -> Result<CVector> {
        self.check_params(theta)?;
        let f = self.pure.as_ref().ok_or(Error::NotPure)?;
        f(theta)
    }

    pub(crate) fn analytic_derivative(&self, theta: &[f64], j: usize) -> Option<Result<CMatrix>> {
        self.derivative.as_ref().map(|d| d(theta, j))
    }

    /// Spectral data at theta, padded to a full basis. Uses the analytic
    /// evaluator when present, otherwise the eigensolver.
    pub fn spectral_point(&self, theta: &[f64]) -> Result<SpectralPoint> {
        self.check_params(theta)?;
        match &self.spectral {
            Some(s) => Ok(s(theta)?.completed()),
            None => {
                let eig = herm_eig(&self.state_matrix(theta)?)?;
                Ok(SpectralPoint { probs: eig.values, vectors: eig.vectors })
            }
        }
    }

    /// Linear reparameterization theta = factor * phi.
    pub fn rescaled(&self, factor: f64) -> Self {
        let scale = move |phi: &[f64]| phi.iter().map(|x| x * factor).collect::<Vec<_>>();
        let state = self.state.clone();
        let mut f = Self::new(format!("{}[x{factor}]", self.name), self.dim, self.param_count, move |phi| {
            state(&scale(phi))
        });
        f.domain = self
            .domain
            .iter()
            .map(|(lo, hi)| if factor > 0.0 { (lo / factor, hi / factor) } else { (hi / factor, lo / factor) })
            .collect();
        if let Some(s) = self.spectral.clone() {
            f.spectral = Some(Arc::new(move |phi: &[f64]| s(&scale(phi))));
        }
        if let Some(p) = self.pure.clone() {
            f.pure = Some(Arc::new(move |phi: &[f64]| p(&scale(phi))));
        }
        if let Some(d) = self.derivative.clone() {
            f.derivative = Some(Arc::new(move |phi: &[f64], j| Ok(d(&scale(phi), j)?.scale_real(factor))));
        }
        f
    }

    /// Family theta -> rho_theta (x) rho_theta.
    pub fn tensor_square(&self) -> Self {
        let base = self.clone();
        let spectral = move |t: &[f64]| {
            let s = base.spectral_point(t)?;
            let mut probs = Vec::new();
            let mut vectors = Vec::new();
            for (pa, wa) in s.probs.iter().zip(&s.vectors) {
                for (pb, wb) in s.probs.iter().zip(&s.vectors) {
                    probs.push(pa * pb);
                    vectors.push(tensor_vec(wa, wb));
                }
            }
            Ok(SpectralPoint { probs, vectors })
        };
        let d = self.dim * self.dim;
        let mut f = Self::from_spectral(format!("{}^2", self.name), d, self.param_count, spectral);
        f.domain = self.domain.clone();
        f
    }

    /// Output family of a fixed channel applied to this family.
    pub fn through_channel(&self, ch: &KrausChannel) -> Result<Self> {
        if ch.dim_in() != self.dim {
            return Err(Error::DimensionMismatch("channel input vs family dimension".into()));
        }
        let state = self.state.clone();
        let ch2 = ch.clone();
        let mut f = Self::new(format!("{}>{}", self.name, ch.name()), ch.dim_out(), self.param_count, move |t| {
            ch2.apply_operator(&state(t)?)
        });
        f.domain = self.domain.clone();
        if let Some(d) = self.derivative.clone() {
            let ch3 = ch.clone();
            f.derivative = Some(Arc::new(move |t: &[f64], j| ch3.apply_operator(&d(t, j)?)));
        }
        Ok(f)
    }

    /// Composes with rho -> (1 - eps) rho + eps I/d, keeping the analytic
    /// eigenvectors (they are unchanged by depolarizing noise).
    pub fn depolarized(&self, eps: f64) -> Result<Self> {
        let ch = crate::quantum::make_depolarizing(self.dim, eps)?;
        let mut f = self.through_channel(&ch)?;
        if let Some(s) = self.spectral.clone() {
            let d = self.dim as f64;
            f.spectral = Some(Arc::new(move |t: &[f64]| {
                let sp = s(t)?.completed();
                Ok(SpectralPoint { probs: sp.probs.iter().map(|p| (1.0 - eps) * p + eps / d).collect(), vectors: sp.vectors })
            }));
        }
        Ok(f)
    }
}

/// Joins two families into rho_1(theta) (x) rho_2(theta) over shared parameters.
pub fn product_family(a: &ParametricFamily, b: &ParametricFamily) -> Result<ParametricFamily> {
    if a.param_count != b.param_count {
        return Err(Error::DimensionMismatch("product of families with different parameter counts".into()));
    }
    let (fa, fb) = (a.clone(), b.clone());
    let name = format!("{}(x){}", a.name, b.name);
    if let (Some(pa), Some(pb)) = (a.pure.clone(), b.pure.clone()) {
        let mut f = ParametricFamily::pure(name, a.dim * b.dim, a.param_count, move |t| Ok(tensor_vec(&pa(t)?, &pb(t)?)));
        f.domain = a.domain.clone();
        return Ok(f);
    }
    let mut f = ParametricFamily::new(name, a.dim * b.dim, a.param_count, move |t| {
        Ok(tensor(&fa.state_matrix(t)?, &fb.state_matrix(t)?))
    });
    f.domain = a.domain.clone();
    Ok(f)
}

pub(crate) fn zero_vector(d: usize) -> CVector {
    vec![ZERO; d]
}
