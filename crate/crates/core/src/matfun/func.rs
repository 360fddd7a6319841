use super::jacobi::{jacobi_eigen, jacobi_eigenvalues};
use super::{Matrix, SymMatrix};
use crate::error::{Error, Result};

/// Eigenvalues within `[-TOL_EIG * ||A||_2, 0)` are treated as zero by
/// fractional powers.
pub const TOL_EIG: f64 = 1e-10;
/// Inversion and negative powers need every eigenvalue `>= LAMBDA_FLOOR * ||A||_2`.
pub const LAMBDA_FLOOR: f64 = 1e-12;

/// Scalar function applied to the spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixFn {
    Power(f64),
    Sqrt,
    Inverse,
}

impl MatrixFn {
    fn exponent(self) -> f64 {
        match self {
            MatrixFn::Power(p) => p,
            MatrixFn::Sqrt => 0.5,
            MatrixFn::Inverse => -1.0,
        }
    }

    #[inline]
    fn eval(self, x: f64) -> f64 {
        match self {
            MatrixFn::Sqrt => x.sqrt(),
            MatrixFn::Inverse => 1.0 / x,
            MatrixFn::Power(p) if p.fract() == 0.0 && p.abs() <= i32::MAX as f64 => {
                x.powi(p as i32)
            }
            MatrixFn::Power(p) => x.powf(p),
        }
    }
}

/// `A = Q diag(lambda) Q^T` with ascending eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomp {
    q: Matrix,
    lambda: Vec<f64>,
}

impl EigenDecomp {
    pub(crate) fn new(q: Matrix, lambda: Vec<f64>) -> Self {
        EigenDecomp { q, lambda }
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.lambda
    }

    /// Columns are eigenvectors.
    pub fn eigenvectors(&self) -> &Matrix {
        &self.q
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.lambda[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.lambda[self.lambda.len() - 1]
    }

    /// Spectral norm `max |lambda_i|`.
    pub fn norm2(&self) -> f64 {
        self.min_eigenvalue().abs().max(self.max_eigenvalue().abs())
    }

    pub fn reconstruct(&self) -> SymMatrix {
        SymMatrix::from_spectral(&self.q, &self.lambda).expect("consistent decomposition")
    }

    /// Spectrum after applying `f`, with the clamping and floor rules.
    pub fn mapped_spectrum(&self, f: MatrixFn) -> Result<Vec<f64>> {
        let norm = self.norm2();
        let p = f.exponent();
        let lo = self.min_eigenvalue();
        if p < 0.0 {
            let floor = LAMBDA_FLOOR * norm;
            if !(lo > 0.0 && lo >= floor) {
                return Err(Error::Singular {
                    eigenvalue: lo,
                    floor,
                });
            }
            return Ok(self.lambda.iter().map(|&l| f.eval(l)).collect());
        }
        if p.fract() == 0.0 {
            return Ok(self.lambda.iter().map(|&l| f.eval(l)).collect());
        }
        let tol = TOL_EIG * norm;
        if lo < -tol {
            return Err(Error::NotPositiveSemidefinite {
                eigenvalue: lo,
                tol,
            });
        }
        Ok(self.lambda.iter().map(|&l| f.eval(l.max(0.0))).collect())
    }

    /// `Q f(Lambda) Q^T`.
    pub fn apply(&self, f: MatrixFn) -> Result<SymMatrix> {
        SymMatrix::from_spectral(&self.q, &self.mapped_spectrum(f)?)
    }

    /// `<x| f(A) |x>` evaluated in the eigenbasis.
    pub fn quadratic_form(&self, f: MatrixFn, x: &[f64]) -> Result<f64> {
        if x.len() != self.n() {
            return Err(Error::Shape(format!(
                "vector of length {} for n = {}",
                x.len(),
                self.n()
            )));
        }
        let spectrum = self.mapped_spectrum(f)?;
        Ok(spectrum
            .iter()
            .enumerate()
            .map(|(k, &fl)| {
                let y: f64 = (0..self.n()).map(|i| self.q.get(i, k) * x[i]).sum();
                fl * y * y
            })
            .sum())
    }
}

/// `f(A)` through a fresh eigendecomposition.
pub fn matrix_function(a: &SymMatrix, f: MatrixFn) -> Result<SymMatrix> {
    jacobi_eigen(a)?.apply(f)
}

/// `lambda_min(A - B)`; `A >= B` in the Loewner order iff this is `>= 0`.
pub fn loewner_margin(a: &SymMatrix, b: &SymMatrix) -> Result<f64> {
    let diff = a.lincomb(1.0, b, -1.0)?;
    Ok(jacobi_eigenvalues(&diff)?[0])
}

/// `(lambda_min, lambda_max)`.
pub fn spectral_bounds(a: &SymMatrix) -> Result<(f64, f64)> {
    let l = jacobi_eigenvalues(a)?;
    Ok((l[0], l[l.len() - 1]))
}

pub fn operator_norm(a: &SymMatrix) -> Result<f64> {
    let (lo, hi) = spectral_bounds(a)?;
    Ok(lo.abs().max(hi.abs()))
}

pub fn frobenius_norm(a: &SymMatrix) -> f64 {
    a.frobenius_norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn m2(a: f64, b: f64, c: f64) -> SymMatrix {
        SymMatrix::from_row_major(2, vec![a, b, b, c]).unwrap()
    }

    #[test]
    fn power_one_reproduces_input() {
        let a = m2(2.0, 1.0, 2.0);
        let p = matrix_function(&a, MatrixFn::Power(1.0)).unwrap();
        assert!((&p - &a).frobenius_norm() <= 1e-12 * a.frobenius_norm());
    }

    #[test]
    fn sqrt_of_diagonal() {
        let a = SymMatrix::from_diag(&[4.0, 9.0]).unwrap();
        let s = matrix_function(&a, MatrixFn::Sqrt).unwrap();
        assert_eq!(s, SymMatrix::from_diag(&[2.0, 3.0]).unwrap());
    }

    #[test]
    fn half_power_of_two_by_two() {
        // rank-one spectral form: ((sqrt3 + 1)/2, (sqrt3 - 1)/2)
        let a = m2(2.0, 1.0, 2.0);
        let s = matrix_function(&a, MatrixFn::Power(0.5)).unwrap();
        let r3 = 3.0f64.sqrt();
        assert_abs_diff_eq!(s.get(0, 0), (r3 + 1.0) / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.get(0, 1), (r3 - 1.0) / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.get(1, 1), (r3 + 1.0) / 2.0, epsilon = 1e-15);
        let sq = s.congruence(&SymMatrix::identity(2).unwrap()).unwrap();
        assert!((&sq - &a).frobenius_norm() < 1e-14);
    }

    #[test]
    fn inverse() {
        let a = m2(2.0, 1.0, 2.0);
        let inv = matrix_function(&a, MatrixFn::Inverse).unwrap();
        // (1/3) [[2, -1], [-1, 2]]
        assert_abs_diff_eq!(inv.get(0, 0), 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(inv.get(0, 1), -1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn clamping_and_errors() {
        let tiny_negative = SymMatrix::from_diag(&[1.0, -1e-12]).unwrap();
        let s = matrix_function(&tiny_negative, MatrixFn::Sqrt).unwrap();
        assert_eq!(s.get(1, 1), 0.0);
        let negative = SymMatrix::from_diag(&[1.0, -1e-6]).unwrap();
        assert!(matches!(
            matrix_function(&negative, MatrixFn::Power(0.3)),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
        // integer powers don't care about the sign
        let sq = matrix_function(&negative, MatrixFn::Power(2.0)).unwrap();
        assert_eq!(sq.get(1, 1), 1e-12);
        let near_singular = SymMatrix::from_diag(&[1.0, 1e-13]).unwrap();
        assert!(matches!(
            matrix_function(&near_singular, MatrixFn::Inverse),
            Err(Error::Singular { .. })
        ));
        assert!(matrix_function(&near_singular, MatrixFn::Power(-0.5)).is_err());
        assert!(matrix_function(&SymMatrix::zeros(2).unwrap(), MatrixFn::Inverse).is_err());
    }

    #[test]
    fn loewner_examples() {
        let d = |x: &[f64]| SymMatrix::from_diag(x).unwrap();
        assert_eq!(
            loewner_margin(&d(&[2.0, 3.0]), &d(&[1.0, 3.0])).unwrap(),
            0.0
        );
        let a = m2(2.0, 1.0, 2.0);
        assert_eq!(loewner_margin(&a, &a).unwrap(), 0.0);
        assert_eq!(
            loewner_margin(&d(&[2.0, 1.0]), &d(&[1.0, 2.0])).unwrap(),
            -1.0
        );
        assert!(matches!(
            loewner_margin(&d(&[1.0, 2.0]), &d(&[1.0, 2.0, 3.0])),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn bounds_and_norms() {
        let d = SymMatrix::from_diag(&[1.0, 5.0, 3.0]).unwrap();
        assert_eq!(spectral_bounds(&d).unwrap(), (1.0, 5.0));
        assert_eq!(
            spectral_bounds(&SymMatrix::identity(3).unwrap()).unwrap(),
            (1.0, 1.0)
        );
        let (lo, hi) = spectral_bounds(&m2(2.0, 1.0, 2.0)).unwrap();
        assert_abs_diff_eq!(lo, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(hi, 3.0, epsilon = 1e-15);

        let i3 = SymMatrix::identity(3).unwrap();
        assert_eq!(operator_norm(&i3).unwrap(), 1.0);
        assert_eq!(frobenius_norm(&i3), 3.0f64.sqrt());
        assert_eq!(
            operator_norm(&SymMatrix::from_diag(&[-2.0, 1.0]).unwrap()).unwrap(),
            2.0
        );
        let z = SymMatrix::zeros(2).unwrap();
        assert_eq!(operator_norm(&z).unwrap(), 0.0);
        assert_eq!(frobenius_norm(&z), 0.0);
    }

    #[test]
    fn quadratic_form_in_eigenbasis() {
        let a = m2(2.0, 1.0, 2.0);
        let e = jacobi_eigen(&a).unwrap();
        let x = [0.6, 0.8];
        let direct = matrix_function(&a, MatrixFn::Power(0.3))
            .unwrap()
            .quadratic_form(&x)
            .unwrap();
        assert_abs_diff_eq!(
            e.quadratic_form(MatrixFn::Power(0.3), &x).unwrap(),
            direct,
            epsilon = 1e-15
        );
    }
}
