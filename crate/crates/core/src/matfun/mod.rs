//! Dense real symmetric matrices and their spectral calculus.
//!
//! [`SymMatrix`] can only be built through symmetric constructors, so the
//! invariant `a[i][j] == a[j][i]` holds bit-for-bit. General square matrices
//! ([`Matrix`]) appear only as eigenvector bases and congruence factors.

mod func;
mod io;
mod jacobi;

pub use func::{
    frobenius_norm, loewner_margin, matrix_function, operator_norm, spectral_bounds, EigenDecomp,
    MatrixFn,
};
pub use io::{parse_matrix_json, to_matrix_json, MatrixFile};
pub use jacobi::{jacobi_eigen, jacobi_eigenvalues};

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 64;

fn check_dim(n: usize) -> Result<()> {
    if (1..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Error::Dimension(n))
    }
}

/// Row-major product of two `n x n` buffers.
fn matmul(n: usize, x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        let row = &mut out[i * n..(i + 1) * n];
        for k in 0..n {
            let xik = x[i * n + k];
            if xik == 0.0 {
                continue;
            }
            let yk = &y[k * n..(k + 1) * n];
            for (o, &ykj) in row.iter_mut().zip(yk) {
                *o += xik * ykj;
            }
        }
    }
    out
}

/// General square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn identity(n: usize) -> Result<Self> {
        check_dim(n)?;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Ok(Matrix { n, data })
    }

    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        check_dim(n)?;
        if data.len() != n * n {
            return Err(Error::Shape(format!(
                "expected {} entries for n = {n}, got {}",
                n * n,
                data.len()
            )));
        }
        Ok(Matrix { n, data })
    }

    pub(crate) fn from_raw(n: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        Matrix { n, data }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row_major(&self) -> &[f64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        Matrix { n, data }
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.n != other.n {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.n, self.n, other.n, other.n
            )));
        }
        Ok(Matrix {
            n: self.n,
            data: matmul(self.n, &self.data, &other.data),
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// `||Q^T Q - I||_F`
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.n;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = (0..n).map(|k| self.get(k, i) * self.get(k, j)).sum();
                let d = dot - if i == j { 1.0 } else { 0.0 };
                acc += d * d;
            }
        }
        acc.sqrt()
    }
}

/// Dense real symmetric `n x n` matrix, `1 <= n <= 64`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(SymMatrix {
            n,
            data: vec![0.0; n * n],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_diag(&vec![1.0; n])
    }

    pub fn from_diag(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        let mut m = Self::zeros(n)?;
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        Ok(m)
    }

    /// Builds from `f(i, j)` evaluated on the upper triangle only.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m.data[i * n + j] = v;
                m.data[j * n + i] = v;
            }
        }
        Ok(m)
    }

    /// Requires exact symmetry of `data`.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        Self::from_row_major_tol(n, data, 0.0)
    }

    /// Accepts entries with `|a_ij - a_ji| <= tol` and averages the pair.
    pub fn from_row_major_tol(n: usize, mut data: Vec<f64>, tol: f64) -> Result<Self> {
        check_dim(n)?;
        if data.len() != n * n {
            return Err(Error::Shape(format!(
                "expected {} entries for n = {n}, got {}",
                n * n,
                data.len()
            )));
        }
        if let Some(&v) = data.iter().find(|v| !v.is_finite()) {
            return Err(Error::domain("matrix entry", v, "finite"));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let (x, y) = (data[i * n + j], data[j * n + i]);
                let diff = (x - y).abs();
                if diff > tol {
                    return Err(Error::NotSymmetric { i, j, diff });
                }
                let avg = 0.5 * (x + y);
                data[i * n + j] = avg;
                data[j * n + i] = avg;
            }
        }
        Ok(SymMatrix { n, data })
    }

    /// Symmetric part `(M + M^T)/2` of a general square buffer.
    pub(crate) fn symmetrize_raw(n: usize, raw: &[f64]) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = raw[i * n + i];
            for j in (i + 1)..n {
                let v = 0.5 * (raw[i * n + j] + raw[j * n + i]);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        SymMatrix { n, data }
    }

    /// `Q diag(lambda) Q^T`.
    pub fn from_spectral(q: &Matrix, lambda: &[f64]) -> Result<Self> {
        if q.n() != lambda.len() {
            return Err(Error::Shape(format!(
                "basis of size {} with {} eigenvalues",
                q.n(),
                lambda.len()
            )));
        }
        Self::from_fn(q.n(), |i, j| {
            lambda
                .iter()
                .enumerate()
                .map(|(k, &l)| q.get(i, k) * l * q.get(j, k))
                .sum()
        })
    }

    pub fn symmetric_part(m: &Matrix) -> SymMatrix {
        Self::symmetrize_raw(m.n(), m.row_major())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row_major(&self) -> &[f64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j) == 0.0))
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_raw(self.n, self.data.clone())
    }

    fn check_same(&self, other: &SymMatrix) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.n, self.n, other.n, other.n
            )))
        }
    }

    /// `alpha * self + beta * other`
    pub fn lincomb(&self, alpha: f64, other: &SymMatrix, beta: f64) -> Result<SymMatrix> {
        self.check_same(other)?;
        Ok(SymMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(x, y)| alpha * x + beta * y)
                .collect(),
        })
    }

    pub fn scale(&self, alpha: f64) -> SymMatrix {
        SymMatrix {
            n: self.n,
            data: self.data.iter().map(|x| alpha * x).collect(),
        }
    }

    /// `self + c I`
    pub fn shift(&self, c: f64) -> SymMatrix {
        let mut m = self.clone();
        for i in 0..self.n {
            m.data[i * self.n + i] += c;
        }
        m
    }

    /// `self * inner * self`, symmetrized.
    pub fn congruence(&self, inner: &SymMatrix) -> Result<SymMatrix> {
        self.check_same(inner)?;
        let left = matmul(self.n, &self.data, &inner.data);
        let full = matmul(self.n, &left, &self.data);
        Ok(Self::symmetrize_raw(self.n, &full))
    }

    /// `c * self * c^T`, symmetrized.
    pub fn congruence_by(&self, c: &Matrix) -> Result<SymMatrix> {
        if c.n() != self.n {
            return Err(Error::Shape(format!(
                "{}x{} factor for n = {}",
                c.n(),
                c.n(),
                self.n
            )));
        }
        let left = matmul(self.n, c.row_major(), &self.data);
        let full = matmul(self.n, &left, c.transpose().row_major());
        Ok(Self::symmetrize_raw(self.n, &full))
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::Shape(format!(
                "vector of length {} for n = {}",
                x.len(),
                self.n
            )));
        }
        Ok((0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// `x^T self x`
    pub fn quadratic_form(&self, x: &[f64]) -> Result<f64> {
        Ok(self.matvec(x)?.iter().zip(x).map(|(a, b)| a * b).sum())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

impl Add for &SymMatrix {
    type Output = SymMatrix;

    /// Panics on a dimension mismatch; use [`SymMatrix::lincomb`] for a
    /// checked version.
    fn add(self, rhs: &SymMatrix) -> SymMatrix {
        self.lincomb(1.0, rhs, 1.0)
            .expect("dimension mismatch in SymMatrix addition")
    }
}

impl Sub for &SymMatrix {
    type Output = SymMatrix;

    fn sub(self, rhs: &SymMatrix) -> SymMatrix {
        self.lincomb(1.0, rhs, -1.0)
            .expect("dimension mismatch in SymMatrix subtraction")
    }
}

impl Mul<&SymMatrix> for f64 {
    type Output = SymMatrix;

    fn mul(self, rhs: &SymMatrix) -> SymMatrix {
        rhs.scale(self)
    }
}
