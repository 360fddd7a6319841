use super::func::EigenDecomp;
use super::{Matrix, SymMatrix};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 30;
/// Stop once the off-diagonal Frobenius norm is at most this times `||A||_F`.
const OFF_TOL: f64 = 1e-14;

fn off_norm(w: &[f64], n: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += w[i * n + j] * w[i * n + j];
            }
        }
    }
    acc.sqrt()
}

/// Cyclic (row-by-row) Jacobi with two-sided plane rotations.
///
/// Returns the unsorted diagonal and, if requested, the accumulated rotation
/// product whose columns are the eigenvectors.
fn cyclic_jacobi(a: &SymMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<Vec<f64>>)> {
    let n = a.n();
    let mut w = a.row_major().to_vec();
    let mut v = want_vectors.then(|| {
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
        v
    });
    let threshold = OFF_TOL * a.frobenius_norm();

    for sweep in 0..=MAX_SWEEPS {
        let off = off_norm(&w, n);
        if off <= threshold {
            let diag = (0..n).map(|i| w[i * n + i]).collect();
            return Ok((diag, v));
        }
        if sweep == MAX_SWEEPS {
            return Err(Error::Convergence {
                sweeps: MAX_SWEEPS,
                off_norm: off,
            });
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = w[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = w[p * n + p];
                let aqq = w[q * n + q];
                // After a few sweeps, entries below the diagonal's ulp are
                // annihilated outright.
                let g = 100.0 * apq.abs();
                if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    w[p * n + q] = 0.0;
                    w[q * n + p] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = w[k * n + p];
                    let akq = w[k * n + q];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    w[k * n + p] = new_kp;
                    w[p * n + k] = new_kp;
                    w[k * n + q] = new_kq;
                    w[q * n + k] = new_kq;
                }
                w[p * n + p] = app - t * apq;
                w[q * n + q] = aqq + t * apq;
                w[p * n + q] = 0.0;
                w[q * n + p] = 0.0;

                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    unreachable!("loop returns on the final sweep")
}

fn ascending_order(diag: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..diag.len()).collect();
    idx.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    idx
}

/// Full eigendecomposition `A = Q diag(lambda) Q^T`, eigenvalues ascending.
pub fn jacobi_eigen(a: &SymMatrix) -> Result<EigenDecomp> {
    let n = a.n();
    let (diag, v) = cyclic_jacobi(a, true)?;
    let v = v.expect("vectors requested");
    let order = ascending_order(&diag);
    let lambda = order.iter().map(|&k| diag[k]).collect();
    let mut q = vec![0.0; n * n];
    for (col, &k) in order.iter().enumerate() {
        for i in 0..n {
            q[i * n + col] = v[i * n + k];
        }
    }
    Ok(EigenDecomp::new(Matrix::from_raw(n, q), lambda))
}

/// Eigenvalues only, ascending. Skips accumulating the rotations.
pub fn jacobi_eigenvalues(a: &SymMatrix) -> Result<Vec<f64>> {
    let (mut diag, _) = cyclic_jacobi(a, false)?;
    diag.sort_by(f64::total_cmp);
    Ok(diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn identity() {
        let e = jacobi_eigen(&SymMatrix::identity(4).unwrap()).unwrap();
        assert_eq!(e.eigenvalues(), &[1.0; 4]);
        assert_eq!(e.eigenvectors(), &Matrix::identity(4).unwrap());
    }

    #[test]
    fn already_diagonal_is_sorted() {
        let e = jacobi_eigen(&SymMatrix::from_diag(&[3.0, 1.0]).unwrap()).unwrap();
        assert_eq!(e.eigenvalues(), &[1.0, 3.0]);
        assert_eq!(e.eigenvectors().row_major(), &[0.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn two_by_two() {
        // lambda^2 - 4 lambda + 3 = 0
        let a = SymMatrix::from_row_major(2, vec![2.0, 1.0, 1.0, 2.0]).unwrap();
        let e = jacobi_eigen(&a).unwrap();
        assert_abs_diff_eq!(e.eigenvalues()[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.eigenvalues()[1], 3.0, epsilon = 1e-15);
        assert!(e.eigenvectors().orthogonality_defect() < 1e-15);
        let vals = jacobi_eigenvalues(&a).unwrap();
        assert_eq!(vals, e.eigenvalues());
    }

    #[test]
    fn zero_matrix() {
        let e = jacobi_eigen(&SymMatrix::zeros(3).unwrap()).unwrap();
        assert_eq!(e.eigenvalues(), &[0.0; 3]);
    }

    #[test]
    fn scalar_matrix() {
        let e = jacobi_eigen(&SymMatrix::from_diag(&[-2.5]).unwrap()).unwrap();
        assert_eq!(e.eigenvalues(), &[-2.5]);
    }

    #[test]
    fn repeated_eigenvalues() {
        // J - I has eigenvalues -1 (x3) and 3
        let a = SymMatrix::from_fn(4, |i, j| if i == j { 0.0 } else { 1.0 }).unwrap();
        let e = jacobi_eigen(&a).unwrap();
        for (l, want) in e.eigenvalues().iter().zip([-1.0, -1.0, -1.0, 3.0]) {
            assert_abs_diff_eq!(*l, want, epsilon = 1e-14);
        }
        let back = e.reconstruct();
        assert!((&back - &a).frobenius_norm() <= 1e-14 * a.frobenius_norm());
    }

    #[test]
    fn deterministic() {
        let a =
            SymMatrix::from_fn(6, |i, j| ((i + 1) as f64 * 0.37 + (j * j) as f64).sin()).unwrap();
        assert_eq!(jacobi_eigen(&a).unwrap(), jacobi_eigen(&a).unwrap());
    }
}
