use super::special::{ln_specht, log_mean, specht_ratio};
use super::{NonNegativePair, PositivePair, Weight};
use crate::error::Result;

#[inline]
fn arithmetic(a: f64, b: f64, w: Weight) -> f64 {
    (1.0 - w.nu()) * a + w.nu() * b
}

/// `a^(1-nu) b^nu`, with `0^0 = 1`.
#[inline]
fn geometric(a: f64, b: f64, w: Weight) -> f64 {
    a.powf(1.0 - w.nu()) * b.powf(w.nu())
}

/// `r (sqrt(a) - sqrt(b))^2`
#[inline]
fn remainder(a: f64, b: f64, w: Weight) -> f64 {
    let d = a.sqrt() - b.sqrt();
    w.r() * d * d
}

/// The plain Young gap `(1-nu) a + nu b - a^(1-nu) b^nu`.
pub fn young_gap(pair: impl Into<NonNegativePair>, w: Weight) -> f64 {
    let p = pair.into();
    arithmetic(p.a(), p.b(), w) - geometric(p.a(), p.b(), w)
}

/// Young gap minus the refinement remainder `r (sqrt(a) - sqrt(b))^2`.
///
/// Nonnegative for all `a, b >= 0`.
pub fn refined_young_margin(pair: impl Into<NonNegativePair>, w: Weight) -> f64 {
    let p = pair.into();
    young_gap(p, w) - remainder(p.a(), p.b(), w)
}

/// `S(a/b) a^(1-nu) b^nu - ((1-nu) a + nu b)`.
pub fn tominaga_ratio_margin(pair: PositivePair, w: Weight) -> Result<f64> {
    let (a, b) = (pair.a(), pair.b());
    Ok(specht_ratio(a / b)? * geometric(a, b, w) - arithmetic(a, b, w))
}

/// `L(a, b) ln S(a/b)`, an upper bound on the Young gap for every weight.
pub fn tominaga_diff_bound(pair: PositivePair) -> Result<f64> {
    let (a, b) = (pair.a(), pair.b());
    Ok(log_mean(a, b)? * ln_specht(a / b)?)
}

/// `L(a, b) ln S(a/b)` minus the Young gap.
pub fn tominaga_diff_margin(pair: PositivePair, w: Weight) -> Result<f64> {
    Ok(tominaga_diff_bound(pair)? - young_gap(pair, w))
}

/// `S(sqrt(a/b)) a^(1-nu) b^nu - [(1-nu) a + nu b - r (sqrt(a) - sqrt(b))^2]`.
pub fn reverse_ratio_margin(pair: PositivePair, w: Weight) -> Result<f64> {
    let (a, b) = (pair.a(), pair.b());
    let s = specht_ratio((a / b).sqrt())?;
    Ok(s * geometric(a, b, w) - (arithmetic(a, b, w) - remainder(a, b, w)))
}

/// `max(sqrt a, sqrt b) L(sqrt a, sqrt b) ln S(sqrt(a/b))` minus the refined
/// Young margin.
pub fn reverse_diff_margin(pair: PositivePair, w: Weight) -> Result<f64> {
    let (sa, sb) = (pair.a().sqrt(), pair.b().sqrt());
    let omega = sa.max(sb);
    let bound = omega * log_mean(sa, sb)? * ln_specht(sa / sb)?;
    Ok(bound - refined_young_margin(pair, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pp(a: f64, b: f64) -> PositivePair {
        PositivePair::new(a, b).unwrap()
    }

    fn w(nu: f64) -> Weight {
        Weight::new(nu).unwrap()
    }

    // Expected values below come from 50-digit mpmath evaluations.

    #[test]
    fn refined_young_examples() {
        for nu in [0.0, 0.1, 0.5, 0.77, 1.0] {
            assert_abs_diff_eq!(
                refined_young_margin(pp(5.0, 5.0), w(nu)),
                0.0,
                epsilon = 1e-14
            );
        }
        assert_abs_diff_eq!(
            refined_young_margin(pp(4.0, 1.0), w(0.25)),
            0.17157287525380990,
            epsilon = 1e-15
        );
        for (a, b) in [(3.0, 9.0), (1e-3, 2.0), (40.0, 0.5)] {
            assert_eq!(refined_young_margin(pp(a, b), w(0.0)), 0.0);
        }
    }

    #[test]
    fn refined_young_boundary() {
        let z = NonNegativePair::new(0.0, 4.0).unwrap();
        // a = 0: nu*b - 0 - r*b
        assert_abs_diff_eq!(refined_young_margin(z, w(0.25)), 0.25 * 4.0 - 0.25 * 4.0);
        assert_abs_diff_eq!(refined_young_margin(z, w(0.0)), 0.0);
        // 0^0 = 1 at nu = 1: b - b
        assert_abs_diff_eq!(refined_young_margin(z, w(1.0)), 0.0);
        assert!(refined_young_margin(NonNegativePair::new(3.0, 0.0).unwrap(), w(0.7)) >= 0.0);
    }

    #[test]
    fn tominaga_ratio_examples() {
        assert_abs_diff_eq!(
            tominaga_ratio_margin(pp(2.0, 2.0), w(0.4)).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        let m = tominaga_ratio_margin(pp(1.0, 10.0), w(0.9)).unwrap();
        assert_abs_diff_eq!(m, 5.6517468147638276, epsilon = 1e-12);
        assert!(m >= reverse_ratio_margin(pp(1.0, 10.0), w(0.9)).unwrap() - 1.0);
        assert!(tominaga_ratio_margin(pp(0.3, 7.0), w(0.0)).unwrap() >= 0.0);
    }

    #[test]
    fn tominaga_diff_examples() {
        assert_eq!(tominaga_diff_bound(pp(6.0, 6.0)).unwrap(), 0.0);
        let bound = tominaga_diff_bound(pp(1.0, 10.0)).unwrap();
        assert_abs_diff_eq!(bound, 2.4195910495294885, epsilon = 1e-13);
        assert!(bound > young_gap(pp(1.0, 10.0), w(0.5)));
        assert_abs_diff_eq!(
            young_gap(pp(1.0, 10.0), w(0.5)),
            2.3377223398316207,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            tominaga_diff_bound(pp(2.0, 8.0)).unwrap(),
            tominaga_diff_bound(pp(8.0, 2.0)).unwrap(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            tominaga_diff_bound(pp(2.0, 8.0)).unwrap(),
            1.0131014983312712,
            epsilon = 1e-14
        );
    }

    #[test]
    fn reverse_ratio_examples() {
        assert_abs_diff_eq!(
            reverse_ratio_margin(pp(3.0, 3.0), w(0.2)).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            reverse_ratio_margin(pp(1.0, 10.0), w(0.9)).unwrap(),
            0.71447326251762058,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            reverse_ratio_margin(pp(4.0, 1.0), w(0.5)).unwrap(),
            0.12295138169217195,
            epsilon = 1e-14
        );
    }

    #[test]
    fn reverse_diff_examples() {
        assert_abs_diff_eq!(
            reverse_diff_margin(pp(2.5, 2.5), w(0.3)).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        let m = reverse_diff_margin(pp(1.0, 10.0), w(0.9)).unwrap();
        assert_abs_diff_eq!(
            m,
            0.96642910051864309 - 0.68917318479086085,
            epsilon = 1e-13
        );
        for nu in [0.0, 1.0] {
            let m = reverse_diff_margin(pp(1.0, 10.0), w(nu)).unwrap();
            assert_abs_diff_eq!(m, 0.96642910051864309, epsilon = 1e-13);
        }
    }

    #[test]
    fn domain_errors() {
        // PositivePair construction is the gate for S and L based margins.
        assert!(PositivePair::new(0.0, 1.0).is_err());
    }
}
