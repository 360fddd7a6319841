use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::matfun::{Matrix, SymMatrix};
use crate::means::SpdPair;

/// Purpose tag mixed into every random stream key.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Pair = 1,
    UnitVector = 2,
    Scalar = 3,
    Tuple = 4,
    Aux = 5,
}

/// Independent stream keyed by `(seed, purpose, dim, index)`. Instances can be
/// generated in any order, on any thread, with identical results.
pub fn stream_rng(seed: u64, stream: Stream, dim: usize, index: usize) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(stream as u64).to_le_bytes());
    key[16..24].copy_from_slice(&(dim as u64).to_le_bytes());
    key[24..32].copy_from_slice(&(index as u64).to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Haar-distributed orthogonal matrix from modified Gram–Schmidt (applied
/// twice) on a standard normal matrix. Keeping `R` with a positive diagonal
/// makes the factor a deterministic function of the draws.
pub fn random_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Matrix> {
    if n == 0 || n > crate::matfun::MAX_DIM {
        return Err(Error::Dimension(n));
    }
    let mut cols: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| rng.sample::<f64, _>(StandardNormal))
                .collect()
        })
        .collect();
    for j in 0..n {
        for _pass in 0..2 {
            for k in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let qk = &done[k];
                let v = &mut rest[0];
                let dot: f64 = qk.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
                for (vi, qi) in v.iter_mut().zip(qk) {
                    *vi -= dot * qi;
                }
            }
        }
        let norm = cols[j].iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::config(
                "random_orthogonal",
                "degenerate Gaussian draw",
            ));
        }
        cols[j].iter_mut().for_each(|x| *x /= norm);
    }
    let mut data = vec![0.0; n * n];
    for (j, col) in cols.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            data[i * n + j] = x;
        }
    }
    Matrix::from_row_major(n, data)
}

fn pinned_spectrum<R: Rng + ?Sized>(dim: usize, m: f64, big_m: f64, rng: &mut R) -> Vec<f64> {
    let mut d = Vec::with_capacity(dim);
    d.push(m);
    d.push(big_m);
    d.extend((2..dim).map(|_| rng.random_range(m..=big_m)));
    d
}

/// `A = Q1 D1 Q1^T`, `B = Q2 D2 Q2^T` with each spectrum containing `m` and
/// `M` exactly and the rest uniform in `[m, M]`.
pub fn gen_spd_pair<R: Rng + ?Sized>(
    dim: usize,
    m: f64,
    big_m: f64,
    rng: &mut R,
) -> Result<SpdPair> {
    if !(2..=crate::matfun::MAX_DIM).contains(&dim) {
        return Err(Error::config("dim", format!("{dim} is outside [2, 64]")));
    }
    if !(m.is_finite() && m > 0.0 && big_m.is_finite() && big_m > m) {
        return Err(Error::config(
            "bounds",
            format!("need 0 < m < M, got m = {m}, M = {big_m}"),
        ));
    }
    let d1 = pinned_spectrum(dim, m, big_m, rng);
    let q1 = random_orthogonal(dim, rng)?;
    let d2 = pinned_spectrum(dim, m, big_m, rng);
    let q2 = random_orthogonal(dim, rng)?;
    let a = SymMatrix::from_spectral(&q1, &d1)?;
    let b = SymMatrix::from_spectral(&q2, &d2)?;
    SpdPair::with_bounds(a, b, m, big_m)
}

/// A vector with Euclidean norm 1 within `1e-12`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitVector(Vec<f64>);

impl UnitVector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        let norm = coords.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !((norm - 1.0).abs() <= 1e-12) {
            return Err(Error::domain(
                "unit vector norm",
                norm,
                "|norm - 1| <= 1e-12",
            ));
        }
        Ok(UnitVector(coords))
    }

    pub fn normalized(mut coords: Vec<f64>) -> Result<Self> {
        let norm = coords.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::domain("vector norm", norm, "finite and > 0"));
        }
        coords.iter_mut().for_each(|x| *x /= norm);
        Ok(UnitVector(coords))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }
}

/// Uniform on the sphere.
pub fn random_unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<UnitVector> {
    UnitVector::normalized(
        (0..n)
            .map(|_| rng.sample::<f64, _>(StandardNormal))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matfun::spectral_bounds;

    #[test]
    fn orthogonal_factor_is_orthogonal() {
        let mut rng = stream_rng(7, Stream::Aux, 8, 0);
        for n in [1, 2, 5, 16, 64] {
            let q = random_orthogonal(n, &mut rng).unwrap();
            assert!(
                q.orthogonality_defect() <= 1e-13 * (n as f64).sqrt(),
                "n={n}"
            );
        }
    }

    #[test]
    fn streams_are_keyed() {
        let draw = |s, st, d, i| stream_rng(s, st, d, i).random::<u64>();
        assert_eq!(draw(1, Stream::Pair, 2, 3), draw(1, Stream::Pair, 2, 3));
        assert_ne!(draw(1, Stream::Pair, 2, 3), draw(1, Stream::Pair, 2, 4));
        assert_ne!(
            draw(1, Stream::Pair, 2, 3),
            draw(1, Stream::UnitVector, 2, 3)
        );
        assert_ne!(draw(1, Stream::Pair, 2, 3), draw(2, Stream::Pair, 2, 3));
        assert_ne!(draw(1, Stream::Pair, 2, 3), draw(1, Stream::Pair, 3, 3));
    }

    #[test]
    fn generated_pair_respects_bounds() {
        let p = gen_spd_pair(2, 1.0, 2.0, &mut stream_rng(42, Stream::Pair, 2, 0)).unwrap();
        for mat in [p.a(), p.b()] {
            let (lo, hi) = spectral_bounds(mat).unwrap();
            assert!(lo >= 1.0 - 1e-12 && hi <= 2.0 + 1e-12, "{lo} {hi}");
        }
        let again = gen_spd_pair(2, 1.0, 2.0, &mut stream_rng(42, Stream::Pair, 2, 0)).unwrap();
        assert_eq!(p.a(), again.a());
        assert_eq!(p.b(), again.b());
        assert_eq!(p.h(), 2.0);
    }

    #[test]
    fn inner_congruence_within_condition_ratio() {
        for k in 0..20 {
            let p = gen_spd_pair(5, 1.0, 10.0, &mut stream_rng(3, Stream::Pair, 5, k)).unwrap();
            let h = p.h();
            let s = p.inner_spectrum();
            assert!(s[0] >= 1.0 / h * (1.0 - 1e-12) && s[s.len() - 1] <= h * (1.0 + 1e-12));
        }
    }

    #[test]
    fn precondition_errors() {
        let mut rng = stream_rng(0, Stream::Pair, 2, 0);
        assert!(gen_spd_pair(2, 1.0, 1.0, &mut rng).is_err());
        assert!(gen_spd_pair(1, 1.0, 2.0, &mut rng).is_err());
        assert!(gen_spd_pair(2, 0.0, 2.0, &mut rng).is_err());
    }

    #[test]
    fn unit_vectors() {
        let x = random_unit_vector(6, &mut stream_rng(0, Stream::UnitVector, 6, 0)).unwrap();
        assert!(UnitVector::new(x.coords().to_vec()).is_ok());
        assert!(UnitVector::new(vec![1.0, 1.0]).is_err());
        assert!(UnitVector::normalized(vec![0.0, 0.0]).is_err());
    }
}
