use super::check_positive;
use crate::error::Result;

/// `t(h) = ln(h) / (h - 1)`. Near `h = 1` the logarithm is taken of
/// `1 + d` with `d = h - 1`; elsewhere forming `d` would round away low bits
/// of a small `h`, so `ln h` is used directly.
#[inline]
fn specht_exponent(h: f64) -> f64 {
    let d = h - 1.0;
    if d.abs() < 1e-15 {
        return 1.0;
    }
    if d.abs() < 0.5 {
        d.ln_1p() / d
    } else {
        h.ln() / d
    }
}

/// Specht's ratio `S(h) = h^(1/(h-1)) / (e ln h^(1/(h-1)))`, with `S(1) = 1`.
///
/// With `t = ln(h)/(h-1)` this is `exp(t - 1) / t`.
pub fn specht_ratio(h: f64) -> Result<f64> {
    check_positive("specht_ratio", h)?;
    if (h - 1.0).abs() < 1e-15 {
        return Ok(1.0);
    }
    let t = specht_exponent(h);
    Ok(((t - 1.0).exp() / t).max(1.0))
}

/// `ln S(h) = t - 1 - ln t`, evaluated without forming `S` first.
pub fn ln_specht(h: f64) -> Result<f64> {
    check_positive("ln_specht", h)?;
    if (h - 1.0).abs() < 1e-15 {
        return Ok(0.0);
    }
    let t = specht_exponent(h);
    let v = if t > 0.5 {
        // t - 1 is exact here
        let u = t - 1.0;
        u - u.ln_1p()
    } else {
        (t - 1.0) - t.ln()
    };
    Ok(v.max(0.0))
}

/// Logarithmic mean `(y - x) / (ln y - ln x)`, with `L(x, x) = x`.
pub fn log_mean(x: f64, y: f64) -> Result<f64> {
    check_positive("log_mean.x", x)?;
    check_positive("log_mean.y", y)?;
    let ratio = y / x;
    let l = if (0.5..=2.0).contains(&ratio) {
        // y - x is exact here, so ln(y/x) keeps full relative precision
        ((y - x) / x).ln_1p()
    } else if ratio.is_finite() && ratio > 0.0 {
        ratio.ln()
    } else {
        y.ln() - x.ln()
    };
    if l.abs() < 1e-8 {
        return Ok(0.5 * (x + y));
    }
    Ok((y - x) / l)
}
