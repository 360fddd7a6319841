//! Two-operator means on symmetric positive-definite matrices, together with
//! seeded numerical checks of the refined Young inequality family.
//!
//! The crate is organised bottom-up:
//!
//! - [`scalar`]: Specht's ratio, the logarithmic mean, and the scalar
//!   Young-type margins and their extremal weights.
//! - [`matfun`]: a small dense symmetric matrix type, a cyclic Jacobi
//!   eigensolver, spectral matrix functions and Loewner margins.
//! - [`means`]: weighted arithmetic, geometric and harmonic means of an SPD
//!   pair and the midpoint bridge term.
//! - [`verifier`]: random instance generation and the operator-level checks.
//! - [`explorer`]: grid scans and extremizer verification on scalar families.

#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod error;
pub mod explorer;
pub mod matfun;
pub mod means;
pub mod scalar;
pub mod verifier;

pub use error::{Error, Result};
pub use matfun::{EigenDecomp, Matrix, MatrixFn, SymMatrix};
pub use means::SpdPair;

pub use scalar::{PositivePair, Weight, WeightedTuple};
