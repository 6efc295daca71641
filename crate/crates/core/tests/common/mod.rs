#![allow(dead_code)]

use bdry_ext_core::scalar::{CMatrix, CVector, Cplx};
use bdry_ext_core::{linalg, BoundaryVector, Param64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> Cplx<f64> {
    Cplx::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> CMatrix<f64> {
    CMatrix::from_fn(r, c, |_, _| gaussian(rng))
}

pub fn random_vector(rng: &mut ChaCha8Rng, d: usize) -> BoundaryVector<f64> {
    BoundaryVector::new(CVector::from_fn(d, |_, _| gaussian(rng)))
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, d: usize, scale: f64) -> CMatrix<f64> {
    let a = random_matrix(rng, d, d);
    (&a + a.adjoint()).scale(scale / 2.0)
}

/// Random subspace of dimension `r` of C^d together with a Hermitian M on it.
pub fn random_param(rng: &mut ChaCha8Rng, d: usize, r: usize) -> Param64 {
    let span = random_matrix(rng, d, r);
    let m = random_hermitian(rng, r, 2.0);
    Param64::from_span(&span, m).unwrap()
}

pub fn sorted_eigenvalues(m: &CMatrix<f64>) -> Vec<f64> {
    let (mut ev, _) = linalg::hermitian_eigen(m);
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}
