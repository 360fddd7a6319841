//! Seeded random instances and Loewner-margin checks of the operator
//! inequalities.
//!
//! Every check returns a [`CheckResult`] holding named margins. A margin is
//! the smallest eigenvalue of `rhs - lhs` (or a scalar difference for the
//! Hölder–McCarthy check); it passes when it is at least `-rel_tol * scale`.

mod checks;
mod gen;
mod report;
mod suite;

pub use checks::{
    check_hm_refined, check_hm_refined_eigen, check_refined_chain, check_reverse_difference,
    check_reverse_ratio, check_tominaga_baselines, MeanSet,
};
pub use gen::{
    gen_spd_pair, random_orthogonal, random_unit_vector, stream_rng, Stream, UnitVector,
};
pub use report::{CheckAggregate, MarginAggregate, SuiteReport};
pub use suite::{augmented_nu_grid, run_pair, run_suite};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_REL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Instances per dimension.
    pub trials: usize,
    pub dims: Vec<usize>,
    pub m: f64,
    #[serde(rename = "M")]
    pub big_m: f64,
    pub nu_grid: Vec<f64>,
    pub rel_tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            trials: 1000,
            dims: vec![2, 3, 4, 8],
            m: 1.0,
            big_m: 10.0,
            nu_grid: default_nu_grid(),
            rel_tol: DEFAULT_REL_TOL,
        }
    }
}

/// `0, 0.05, ..., 1`
pub fn default_nu_grid() -> Vec<f64> {
    (0..=20).map(|i| i as f64 / 20.0).collect()
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::config("trials", "must be at least 1"));
        }
        if self.dims.is_empty() {
            return Err(Error::config("dims", "must list at least one dimension"));
        }
        if let Some(d) = self.dims.iter().find(|d| !(2..=64).contains(*d)) {
            return Err(Error::config("dims", format!("{d} is outside [2, 64]")));
        }
        if !(self.m.is_finite() && self.m > 0.0) {
            return Err(Error::config(
                "m",
                format!("{} is not a positive number", self.m),
            ));
        }
        if !(self.big_m.is_finite() && self.big_m > self.m) {
            return Err(Error::config(
                "M",
                format!("{} must exceed m = {}", self.big_m, self.m),
            ));
        }
        if self.nu_grid.is_empty() {
            return Err(Error::config("nu_grid", "must contain at least one weight"));
        }
        if let Some(nu) = self.nu_grid.iter().find(|nu| !(0.0..=1.0).contains(*nu)) {
            return Err(Error::config("nu_grid", format!("{nu} is outside [0, 1]")));
        }
        if !(self.rel_tol.is_finite() && self.rel_tol >= 0.0) {
            return Err(Error::config(
                "rel_tol",
                format!("{} is not a nonnegative number", self.rel_tol),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    RefinedChain,
    ReverseRatio,
    ReverseDifference,
    TominagaBaselines,
    HolderMccarthy,
}

impl CheckKind {
    pub const ALL: [CheckKind; 5] = [
        CheckKind::RefinedChain,
        CheckKind::ReverseRatio,
        CheckKind::ReverseDifference,
        CheckKind::TominagaBaselines,
        CheckKind::HolderMccarthy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::RefinedChain => "refined_chain",
            CheckKind::ReverseRatio => "reverse_ratio",
            CheckKind::ReverseDifference => "reverse_difference",
            CheckKind::TominagaBaselines => "tominaga_baselines",
            CheckKind::HolderMccarthy => "holder_mccarthy",
        }
    }

    /// Margin names in the order the check reports them.
    pub fn margin_names(self) -> &'static [&'static str] {
        match self {
            CheckKind::RefinedChain => &[
                "m1_am_ge_gm_plus_bridge",
                "m2_bridge_psd",
                "m3_gm_ge_refined_hm",
                "m4_refined_hm_ge_hm",
                "am_ge_gm",
                "gm_ge_hm",
            ],
            CheckKind::ReverseRatio => &["specht_gm_ge_refined_am"],
            CheckKind::ReverseDifference => {
                &["constant_bound", "lambda_max_bound", "operator_bound"]
            }
            CheckKind::TominagaBaselines => &["ratio", "difference"],
            CheckKind::HolderMccarthy => &["refined", "baseline"],
        }
    }
}

/// Where an instance came from: suite seed, trial index, dimension, weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InstanceId {
    pub seed: u64,
    pub index: usize,
    pub dim: usize,
    pub nu: f64,
}

impl std::fmt::Display for InstanceId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "seed={} index={} dim={} nu={}",
            self.seed, self.index, self.dim, self.nu
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NamedMargin {
    pub name: &'static str,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub check: CheckKind,
    pub instance: InstanceId,
    pub margins: Vec<NamedMargin>,
    pub scale: f64,
    pub rel_tol: f64,
    pub passed: bool,
}

impl CheckResult {
    pub(crate) fn new(check: CheckKind, instance: InstanceId, values: &[f64], scale: f64) -> Self {
        let margins = check
            .margin_names()
            .iter()
            .zip(values)
            .map(|(&name, &value)| NamedMargin { name, value })
            .collect();
        let mut r = CheckResult {
            check,
            instance,
            margins,
            scale,
            rel_tol: DEFAULT_REL_TOL,
            passed: false,
        };
        r.passed = r.evaluate_pass();
        r
    }

    fn evaluate_pass(&self) -> bool {
        // NaN margins never pass
        self.margins
            .iter()
            .all(|m| m.value >= -self.rel_tol * self.scale)
    }

    pub fn with_tolerance(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self.passed = self.evaluate_pass();
        self
    }

    pub fn with_instance(mut self, id: InstanceId) -> Self {
        self.instance = id;
        self
    }

    pub fn min_margin(&self) -> f64 {
        self.margins
            .iter()
            .map(|m| m.value)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn margin(&self, name: &str) -> Option<f64> {
        self.margins
            .iter()
            .find(|m| m.name == name)
            .map(|m| m.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        let cfg = SuiteConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.nu_grid.len(), 21);
        assert_eq!(cfg.nu_grid[20], 1.0);
    }

    #[test]
    fn config_errors_name_the_field() {
        let bad = |f: fn(&mut SuiteConfig)| {
            let mut c = SuiteConfig::default();
            f(&mut c);
            match c.validate() {
                Err(Error::Config { field, .. }) => field,
                other => panic!("expected config error, got {other:?}"),
            }
        };
        assert_eq!(bad(|c| c.trials = 0), "trials");
        assert_eq!(bad(|c| c.dims = vec![1]), "dims");
        assert_eq!(bad(|c| c.dims = vec![65]), "dims");
        assert_eq!(bad(|c| c.big_m = c.m), "M");
        assert_eq!(bad(|c| c.m = -1.0), "m");
        assert_eq!(bad(|c| c.nu_grid = vec![1.5]), "nu_grid");
        assert_eq!(bad(|c| c.rel_tol = f64::NAN), "rel_tol");
    }

    #[test]
    fn pass_flag_follows_tolerance() {
        let id = InstanceId {
            seed: 0,
            index: 0,
            dim: 2,
            nu: 0.5,
        };
        let r = CheckResult::new(CheckKind::ReverseRatio, id, &[-5e-9], 1.0);
        assert!(r.passed);
        assert!(!r.clone().with_tolerance(1e-9).passed);
        assert!(!CheckResult::new(CheckKind::ReverseRatio, id, &[f64::NAN], 1.0).passed);
    }
}
