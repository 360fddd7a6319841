//! Weighted two-operator means on an SPD pair.
//!
//! `A #_nu B = A^{1/2} (A^{-1/2} B A^{-1/2})^nu A^{1/2}` is evaluated from its
//! defining formula. [`SpdPair`] decomposes `A`, `B` and the inner congruence
//! once, so evaluating a mean at many weights only re-maps a spectrum.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::matfun::{jacobi_eigen, EigenDecomp, MatrixFn, SymMatrix};
use crate::scalar::Weight;

/// Relative slack allowed when validating caller-supplied spectral bounds.
const BOUND_SLACK: f64 = 1e-12;

/// Two SPD matrices with spectral bounds `0 < m I <= A, B <= M I`.
#[derive(Debug, Clone)]
pub struct SpdPair {
    a: SymMatrix,
    b: SymMatrix,
    m: f64,
    big_m: f64,
    a_eig: EigenDecomp,
    b_eig: EigenDecomp,
    a_half: SymMatrix,
    a_inv: SymMatrix,
    b_inv: SymMatrix,
    /// Decomposition of `A^{-1/2} B A^{-1/2}`.
    inner: EigenDecomp,
    inverse: OnceLock<Result<Box<SpdPair>>>,
    bridge: OnceLock<Result<SymMatrix>>,
}

impl SpdPair {
    /// Certifies `m` and `M` from the spectra of both matrices.
    pub fn new(a: SymMatrix, b: SymMatrix) -> Result<Self> {
        Self::build(a, b, None)
    }

    /// Uses caller-supplied bounds after checking they contain both spectra.
    pub fn with_bounds(a: SymMatrix, b: SymMatrix, m: f64, big_m: f64) -> Result<Self> {
        if !(m.is_finite() && m > 0.0 && big_m.is_finite() && big_m >= m) {
            return Err(Error::config(
                "bounds",
                format!("need 0 < m <= M, got m = {m}, M = {big_m}"),
            ));
        }
        Self::build(a, b, Some((m, big_m)))
    }

    fn build(a: SymMatrix, b: SymMatrix, bounds: Option<(f64, f64)>) -> Result<Self> {
        if a.n() != b.n() {
            return Err(Error::Shape(format!(
                "pair of sizes {} and {}",
                a.n(),
                b.n()
            )));
        }
        let a_eig = jacobi_eigen(&a)?;
        let b_eig = jacobi_eigen(&b)?;
        let lo = a_eig.min_eigenvalue().min(b_eig.min_eigenvalue());
        let hi = a_eig.max_eigenvalue().max(b_eig.max_eigenvalue());
        if lo <= 0.0 {
            return Err(Error::NotPositiveSemidefinite {
                eigenvalue: lo,
                tol: 0.0,
            });
        }
        let (m, big_m) = match bounds {
            None => (lo, hi),
            Some((m, big_m)) => {
                let slack = BOUND_SLACK * big_m;
                if lo < m - slack || hi > big_m + slack {
                    return Err(Error::Bounds { m, big_m, lo, hi });
                }
                (m, big_m)
            }
        };
        let a_half = a_eig.apply(MatrixFn::Sqrt)?;
        let a_neg_half = a_eig.apply(MatrixFn::Power(-0.5))?;
        let a_inv = a_eig.apply(MatrixFn::Inverse)?;
        let b_inv = b_eig.apply(MatrixFn::Inverse)?;
        let inner = jacobi_eigen(&a_neg_half.congruence(&b)?)?;
        Ok(SpdPair {
            a,
            b,
            m,
            big_m,
            a_eig,
            b_eig,
            a_half,
            a_inv,
            b_inv,
            inner,
            inverse: OnceLock::new(),
            bridge: OnceLock::new(),
        })
    }

    pub fn a(&self) -> &SymMatrix {
        &self.a
    }

    pub fn b(&self) -> &SymMatrix {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn big_m(&self) -> f64 {
        self.big_m
    }

    /// Condition ratio `M / m >= 1`.
    pub fn h(&self) -> f64 {
        self.big_m / self.m
    }

    pub fn a_eigen(&self) -> &EigenDecomp {
        &self.a_eig
    }

    pub fn b_eigen(&self) -> &EigenDecomp {
        &self.b_eig
    }

    pub fn a_inv(&self) -> &SymMatrix {
        &self.a_inv
    }

    pub fn b_inv(&self) -> &SymMatrix {
        &self.b_inv
    }

    /// Spectrum of `A^{-1/2} B A^{-1/2}`.
    pub fn inner_spectrum(&self) -> &[f64] {
        self.inner.eigenvalues()
    }

    /// `max(||A||_2, ||B||_2)`
    pub fn scale(&self) -> f64 {
        self.a_eig.norm2().max(self.b_eig.norm2())
    }

    /// The pair `(A^{-1}, B^{-1})` with bounds `(1/M, 1/m)`, built on first use.
    pub fn inverse(&self) -> Result<&SpdPair> {
        self.inverse
            .get_or_init(|| {
                SpdPair::with_bounds(
                    self.a_inv.clone(),
                    self.b_inv.clone(),
                    1.0 / self.big_m,
                    1.0 / self.m,
                )
                .map(Box::new)
            })
            .as_ref()
            .map(|b| b.as_ref())
            .map_err(Clone::clone)
    }

    /// `B`-first view of the same pair, `(B, A)`.
    pub fn swapped(&self) -> Result<SpdPair> {
        SpdPair::with_bounds(self.b.clone(), self.a.clone(), self.m, self.big_m)
    }
}

/// `(1 - nu) A + nu B`
pub fn weighted_arithmetic(p: &SpdPair, w: Weight) -> SymMatrix {
    if w.nu() == 0.0 {
        return p.a.clone();
    }
    if w.nu() == 1.0 {
        return p.b.clone();
    }
    p.a.lincomb(1.0 - w.nu(), &p.b, w.nu())
        .expect("pair dimensions agree")
}

/// `A #_nu B = A^{1/2} (A^{-1/2} B A^{-1/2})^nu A^{1/2}`
pub fn weighted_geometric(p: &SpdPair, w: Weight) -> Result<SymMatrix> {
    let inner_pow = p.inner.apply(MatrixFn::Power(w.nu()))?;
    p.a_half.congruence(&inner_pow)
}

/// `((1 - nu) A^{-1} + nu B^{-1})^{-1}`
pub fn weighted_harmonic(p: &SpdPair, w: Weight) -> Result<SymMatrix> {
    let sum = p.a_inv.lincomb(1.0 - w.nu(), &p.b_inv, w.nu())?;
    jacobi_eigen(&sum)?.apply(MatrixFn::Inverse)
}

/// The midpoint gap `(A + B)/2 - A #_{1/2} B`, positive semidefinite.
pub fn refinement_bridge(p: &SpdPair) -> Result<SymMatrix> {
    p.bridge_ref().cloned()
}

impl SpdPair {
    pub(crate) fn bridge_ref(&self) -> Result<&SymMatrix> {
        self.bridge
            .get_or_init(|| {
                let mid = weighted_arithmetic(self, Weight::HALF);
                let g = weighted_geometric(self, Weight::HALF)?;
                mid.lincomb(1.0, &g, -1.0)
            })
            .as_ref()
            .map_err(Clone::clone)
    }
}

/// Relative Frobenius residual of
/// `(X + Y)^{-1} = X^{-1} - X^{-1} (X^{-1} + Y^{-1})^{-1} X^{-1}`.
///
/// Both sides are formed in the eigenbasis of `X`, where `X^{-1}` is an exact
/// diagonal scaling. The Frobenius norm does not see the change of basis, and
/// the inverse of `X` no longer feeds its eigenvector error into the inner sum.
pub fn resolvent_identity_residual(x: &SymMatrix, y: &SymMatrix) -> Result<f64> {
    let inverse = |m: &SymMatrix| jacobi_eigen(m)?.apply(MatrixFn::Inverse);
    let ex = jacobi_eigen(x)?;
    let d = SymMatrix::from_diag(&ex.mapped_spectrum(MatrixFn::Inverse)?)?;
    let yt = y.congruence_by(&ex.eigenvectors().transpose())?;
    let lambda = SymMatrix::from_diag(ex.eigenvalues())?;
    let lhs = inverse(&lambda.lincomb(1.0, &yt, 1.0)?)?;
    let parallel = inverse(&d.lincomb(1.0, &inverse(&yt)?, 1.0)?)?;
    let rhs = d.lincomb(1.0, &d.congruence(&parallel)?, -1.0)?;
    Ok(lhs.lincomb(1.0, &rhs, -1.0)?.frobenius_norm() / lhs.frobenius_norm())
}
