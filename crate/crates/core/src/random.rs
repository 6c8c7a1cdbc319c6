//! Seeded random ensembles of families, states and measurements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{expi_hermitian, herm_eig, inv_sqrt_psd, CMatrix, C64};
use crate::models::{ParametricFamily, SpectralPoint};
use crate::quantum::Povm;

fn gaussian_matrix(rng: &mut impl Rng, d: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |_, _| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
}

pub fn random_hermitian(rng: &mut impl Rng, d: usize) -> CMatrix {
    gaussian_matrix(rng, d).hermitian_part()
}

pub fn random_unitary(rng: &mut impl Rng, d: usize) -> CMatrix {
    let h = random_hermitian(rng, d);
    herm_eig(&h).expect("Hermitian by construction").vector_matrix()
}

/// POVM with `outcomes` elements of full rank, S^{-1/2} A_m^dagger A_m S^{-1/2}.
pub fn random_povm(rng: &mut impl Rng, d: usize, outcomes: usize) -> Povm {
    let raw: Vec<CMatrix> = (0..outcomes)
        .map(|_| {
            let a = gaussian_matrix(rng, d);
            &a.adjoint() * &a
        })
        .collect();
    let sum = raw.iter().fold(CMatrix::zeros(d, d), |acc, m| &acc + m);
    let s = inv_sqrt_psd(&sum, 1e-14).expect("positive by construction");
    let elems = raw.iter().map(|m| (&(&s * m) * &s).hermitian_part()).collect();
    Povm::new(elems).expect("valid by construction")
}

/// Mixed family U(theta) diag(p(theta)) U(theta)^dagger with
/// U(theta) = exp(i sum_j theta_j G_j) U_0 and softmax eigenvalues.
/// Eigenvalues are generically distinct.
pub fn random_family(seed: u64, d: usize, params: usize) -> ParametricFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u0 = random_unitary(&mut rng, d);
    let gens: Vec<CMatrix> = (0..params).map(|_| random_hermitian(&mut rng, d).scale_real(0.5)).collect();
    let base: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.5..1.5)).collect();
    let slopes: Vec<Vec<f64>> = (0..params).map(|_| (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
    let spectral = move |t: &[f64]| {
        let mut g = CMatrix::zeros(d, d);
        for (tj, gj) in t.iter().zip(&gens) {
            g = &g + &gj.scale_real(*tj);
        }
        let u = &expi_hermitian(&g, 1.0)? * &u0;
        let logits: Vec<f64> = (0..d).map(|k| base[k] + t.iter().zip(&slopes).map(|(tj, s)| tj * s[k]).sum::<f64>()).collect();
        let z: f64 = logits.iter().map(|x| x.exp()).sum();
        Ok(SpectralPoint { probs: logits.iter().map(|x| x.exp() / z).collect(), vectors: (0..d).map(|k| u.column(k)).collect() })
    };
    ParametricFamily::from_spectral(format!("random(seed={seed},d={d},p={params})"), d, params, spectral)
}

/// Pure family exp(i sum_j theta_j G_j) psi_0.
pub fn random_pure_family(seed: u64, d: usize, params: usize) -> ParametricFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let psi0 = random_unitary(&mut rng, d).column(0);
    let gens: Vec<CMatrix> = (0..params).map(|_| random_hermitian(&mut rng, d).scale_real(0.5)).collect();
    ParametricFamily::pure(format!("random_pure(seed={seed},d={d},p={params})"), d, params, move |t| {
        let mut g = CMatrix::zeros(d, d);
        for (tj, gj) in t.iter().zip(&gens) {
            g = &g + &gj.scale_real(*tj);
        }
        Ok(expi_hermitian(&g, 1.0)?.mul_vec(&psi0))
    })
}

/// Parameter point with entries drawn uniformly from [-0.5, 0.5].
pub fn random_point(rng: &mut impl Rng, params: usize) -> Vec<f64> {
    (0..params).map(|_| rng.gen_range(-0.5..0.5)).collect()
}
