//! One-parameter weight families whose maxima are the reverse-bound constants,
//! with their closed-form maximizers.
//!
//! For `b > 0` the ratio family is
//! `g_b(nu) = (nu b + (1 - nu) - nu (sqrt b - 1)^2) / b^nu` on `[0, 1/2]`,
//! maximized at `critical_nu_ratio(b)` with value `S(sqrt b)`. The difference
//! family is `g_b(nu) = nu b + (1 - nu) - b^nu - nu (sqrt b - 1)^2`, maximized
//! at `critical_nu_diff(b)` with value `L(1, sqrt b) ln S(sqrt b)`. The
//! mirror families live on `[1/2, 1]` and peak at `1 -` the same formulas.

use super::check_positive;
use super::special::log_mean;
use crate::error::{Error, Result};

fn check_not_one(what: &'static str, b: f64) -> Result<()> {
    check_positive(what, b)?;
    if b == 1.0 {
        return Err(Error::domain(what, b, "b != 1"));
    }
    Ok(())
}

/// `1/ln b - 1/(2 (sqrt b - 1))`, in `[0, 1/2]` for every `b != 1`.
pub fn critical_nu_ratio(b: f64) -> Result<f64> {
    check_not_one("critical_nu_ratio", b)?;
    Ok(1.0 / b.ln() - 0.5 / (b.sqrt() - 1.0))
}

/// `ln((sqrt b - 1) / ln sqrt b) / ln b`, in `[0, 1/2]` for every `b != 1`.
pub fn critical_nu_diff(b: f64) -> Result<f64> {
    check_not_one("critical_nu_diff", b)?;
    // (sqrt b - 1) / ln sqrt b is L(1, sqrt b)
    Ok(log_mean(1.0, b.sqrt())?.ln() / b.ln())
}

pub fn ratio_family(b: f64, nu: f64) -> f64 {
    let s = b.sqrt() - 1.0;
    (nu * b + (1.0 - nu) - nu * s * s) / b.powf(nu)
}

pub fn ratio_family_mirror(a: f64, nu: f64) -> f64 {
    let s = 1.0 - a.sqrt();
    (nu + (1.0 - nu) * a - (1.0 - nu) * s * s) / a.powf(1.0 - nu)
}

pub fn diff_family(b: f64, nu: f64) -> f64 {
    let s = b.sqrt() - 1.0;
    nu * b + (1.0 - nu) - b.powf(nu) - nu * s * s
}

pub fn diff_family_mirror(a: f64, nu: f64) -> f64 {
    let s = 1.0 - a.sqrt();
    nu + (1.0 - nu) * a - a.powf(1.0 - nu) - (1.0 - nu) * s * s
}
