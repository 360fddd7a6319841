const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes a unimodal `f` on `[lo, hi]` until the bracket is narrower than
/// `tol`. Returns the best point seen and its value.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let mut best = if fc >= fd { (c, fc) } else { (d, fd) };
    for x in [lo, hi] {
        let fx = f(x);
        if fx > best.1 {
            best = (x, fx);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabola() {
        let (x, v) = golden_section_max(|x| 1.0 - (x - 0.3) * (x - 0.3), 0.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((v - 1.0).abs() < 1e-14);
    }

    #[test]
    fn endpoint_maximum() {
        let (x, _) = golden_section_max(|x| x, 0.0, 0.5, 1e-10);
        assert_eq!(x, 0.5);
    }
}
