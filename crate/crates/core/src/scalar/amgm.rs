use crate::error::{Error, Result};

/// Nonnegative values with strictly positive weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedTuple {
    values: Vec<f64>,
    weights: Vec<f64>,
    lambda_min: f64,
    min_weight_multiplicity: usize,
}

impl WeightedTuple {
    /// Weights must sum to one within `1e-12`; they are renormalized after
    /// validation.
    pub fn new(values: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::config("values", "need at least two values"));
        }
        if values.len() != weights.len() {
            return Err(Error::Shape(format!(
                "{} values but {} weights",
                values.len(),
                weights.len()
            )));
        }
        if let Some(&v) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::domain("tuple value", v, "finite and >= 0"));
        }
        if let Some(&p) = weights.iter().find(|p| !(p.is_finite() && **p > 0.0)) {
            return Err(Error::domain("tuple weight", p, "finite and > 0"));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::config(
                "weights",
                format!("sum to {total}, not 1 within 1e-12"),
            ));
        }
        let weights: Vec<f64> = weights.into_iter().map(|p| p / total).collect();
        let lambda_min = weights.iter().copied().fold(f64::INFINITY, f64::min);
        let min_weight_multiplicity = weights.iter().filter(|&&p| p == lambda_min).count();
        Ok(WeightedTuple {
            values,
            weights,
            lambda_min,
            min_weight_multiplicity,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    pub fn min_weight_multiplicity(&self) -> usize {
        self.min_weight_multiplicity
    }
}

/// `prod a_i^{p_i}`, zero as soon as one value is zero.
fn weighted_geometric<'a>(values: &[f64], weights: impl Iterator<Item = &'a f64>) -> f64 {
    if values.contains(&0.0) {
        return 0.0;
    }
    let log_sum: f64 = values.iter().zip(weights).map(|(a, p)| p * a.ln()).sum();
    log_sum.exp()
}

/// `sum p_i a_i - prod a_i^{p_i}`.
pub fn weighted_amgm_gap(t: &WeightedTuple) -> f64 {
    let am: f64 = t.values.iter().zip(&t.weights).map(|(a, p)| p * a).sum();
    am - weighted_geometric(&t.values, t.weights.iter())
}

/// Weighted AM-GM gap minus `n lambda (mean - geometric mean)`.
pub fn refined_weighted_amgm_margin(t: &WeightedTuple) -> f64 {
    let n = t.len() as f64;
    let uniform = vec![1.0 / n; t.len()];
    let mean = t.values.iter().sum::<f64>() / n;
    let unweighted_gap = mean - weighted_geometric(&t.values, uniform.iter());
    weighted_amgm_gap(t) - n * t.lambda_min * unweighted_gap
}
