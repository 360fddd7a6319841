//! Scalar functions and scalar inequalities.
//!
//! Everything here is a pure function of `f64` inputs. The margin functions
//! return `rhs_bound - lhs` style differences that are nonnegative whenever
//! the corresponding inequality holds, so callers can compare them against a
//! roundoff tolerance instead of a boolean.

mod amgm;
mod critical;
mod special;
mod young;

pub use amgm::{refined_weighted_amgm_margin, weighted_amgm_gap, WeightedTuple};
pub use critical::{
    critical_nu_diff, critical_nu_ratio, diff_family, diff_family_mirror, ratio_family,
    ratio_family_mirror,
};
pub use special::{ln_specht, log_mean, specht_ratio};
pub use young::{
    refined_young_margin, reverse_diff_margin, reverse_ratio_margin, tominaga_diff_bound,
    tominaga_diff_margin, tominaga_ratio_margin, young_gap,
};

use crate::error::{Error, Result};

/// A weight `nu` in `[0, 1]` together with `r = min(nu, 1 - nu)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Weight {
    nu: f64,
    r: f64,
}

impl Weight {
    pub fn new(nu: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&nu) {
            return Err(Error::domain("weight", nu, "0 <= nu <= 1"));
        }
        Ok(Weight {
            nu,
            r: nu.min(1.0 - nu),
        })
    }

    pub const HALF: Weight = Weight { nu: 0.5, r: 0.5 };

    #[inline]
    pub fn nu(self) -> f64 {
        self.nu
    }

    /// `min(nu, 1 - nu)`, the coefficient of the refinement remainder.
    #[inline]
    pub fn r(self) -> f64 {
        self.r
    }

    /// The weight `1 - nu`.
    pub fn reversed(self) -> Weight {
        Weight {
            nu: 1.0 - self.nu,
            r: self.r,
        }
    }
}

/// Two strictly positive reals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivePair {
    a: f64,
    b: f64,
}

impl PositivePair {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        check_positive("pair.a", a)?;
        check_positive("pair.b", b)?;
        Ok(PositivePair { a, b })
    }

    #[inline]
    pub fn a(self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(self) -> f64 {
        self.b
    }

    pub fn swapped(self) -> PositivePair {
        PositivePair {
            a: self.b,
            b: self.a,
        }
    }
}

/// Two nonnegative reals; the boundary `a = 0` or `b = 0` is allowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonNegativePair {
    a: f64,
    b: f64,
}

impl NonNegativePair {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        for (what, v) in [("pair.a", a), ("pair.b", b)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::domain(what, v, "finite and >= 0"));
            }
        }
        Ok(NonNegativePair { a, b })
    }

    #[inline]
    pub fn a(self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(self) -> f64 {
        self.b
    }
}

impl From<PositivePair> for NonNegativePair {
    fn from(p: PositivePair) -> Self {
        NonNegativePair { a: p.a, b: p.b }
    }
}

pub(crate) fn check_positive(what: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(what, v, "finite and > 0"))
    }
}
