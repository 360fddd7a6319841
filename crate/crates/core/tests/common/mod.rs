#![allow(dead_code)]

use nalgebra::DMatrix;
use opineq::{Matrix, SymMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_symmetric(n: usize, rng: &mut impl Rng) -> SymMatrix {
    SymMatrix::from_fn(n, |_, _| rng.random_range(-1.0..1.0)).unwrap()
}

/// A well-conditioned general matrix `I + 0.3 G` with `G` uniform in `[-1, 1]`.
pub fn random_invertible(n: usize, rng: &mut impl Rng) -> Matrix {
    let data = (0..n * n)
        .map(|k| if k % (n + 1) == 0 { 1.0 } else { 0.0 } + 0.3 * rng.random_range(-1.0..1.0) / n as f64)
        .collect();
    Matrix::from_row_major(n, data).unwrap()
}

pub fn to_na(a: &SymMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(a.n(), a.n(), a.row_major())
}

pub fn from_na(m: &DMatrix<f64>) -> SymMatrix {
    let n = m.nrows();
    let data: Vec<f64> = (0..n * n).map(|k| m[(k / n, k % n)]).collect();
    SymMatrix::from_row_major_tol(n, data, 1e-9 * m.amax().max(1.0)).unwrap()
}

pub fn rel_diff(a: &SymMatrix, b: &SymMatrix) -> f64 {
    (a - b).frobenius_norm() / b.frobenius_norm()
}
