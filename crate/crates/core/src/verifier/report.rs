use serde::Serialize;

use super::{CheckKind, CheckResult, InstanceId, SuiteConfig};

/// NaN ranks below every number so it always becomes the worst case.
fn rank(x: f64) -> f64 {
    if x.is_nan() {
        f64::NEG_INFINITY
    } else {
        x
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarginAggregate {
    pub name: &'static str,
    /// Raw margin of the instance with the smallest `margin / scale`.
    pub worst_margin: Option<f64>,
    pub worst_instance: Option<InstanceId>,
    pub violations: usize,
    #[serde(skip)]
    worst_normalized: f64,
}

impl MarginAggregate {
    fn new(name: &'static str) -> Self {
        MarginAggregate {
            name,
            worst_margin: None,
            worst_instance: None,
            violations: 0,
            worst_normalized: f64::INFINITY,
        }
    }

    fn offer(&mut self, value: f64, scale: f64, id: InstanceId) {
        let normalized = rank(value / scale);
        if self.worst_margin.is_none() || normalized < self.worst_normalized {
            self.worst_normalized = normalized;
            self.worst_margin = Some(value);
            self.worst_instance = Some(id);
        }
    }

    fn merge(&mut self, other: &MarginAggregate) {
        if let (Some(v), Some(id)) = (other.worst_margin, other.worst_instance) {
            if self.worst_margin.is_none() || other.worst_normalized < self.worst_normalized {
                self.worst_normalized = other.worst_normalized;
                self.worst_margin = Some(v);
                self.worst_instance = Some(id);
            }
        }
        self.violations += other.violations;
    }
}

/// Per-check summary. `violations` counts failing [`CheckResult`]s.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckAggregate {
    pub name: &'static str,
    pub worst_margin: Option<f64>,
    pub worst_instance: Option<InstanceId>,
    pub violations: usize,
    pub evaluated: usize,
    pub margins: Vec<MarginAggregate>,
    #[serde(skip)]
    kind: CheckKind,
    #[serde(skip)]
    worst_normalized: f64,
}

impl CheckAggregate {
    pub fn new(kind: CheckKind) -> Self {
        CheckAggregate {
            name: kind.name(),
            worst_margin: None,
            worst_instance: None,
            violations: 0,
            evaluated: 0,
            margins: kind
                .margin_names()
                .iter()
                .map(|&n| MarginAggregate::new(n))
                .collect(),
            kind,
            worst_normalized: f64::INFINITY,
        }
    }

    pub fn kind(&self) -> CheckKind {
        self.kind
    }

    pub fn record(&mut self, r: &CheckResult) {
        debug_assert_eq!(r.check, self.kind);
        self.evaluated += 1;
        if !r.passed {
            self.violations += 1;
        }
        let worst = r
            .margins
            .iter()
            .map(|m| m.value)
            .fold(f64::INFINITY, |a, b| if rank(b) < rank(a) { b } else { a });
        let normalized = rank(worst / r.scale);
        if self.worst_margin.is_none() || normalized < self.worst_normalized {
            self.worst_normalized = normalized;
            self.worst_margin = Some(worst);
            self.worst_instance = Some(r.instance);
        }
        for (agg, m) in self.margins.iter_mut().zip(&r.margins) {
            agg.offer(m.value, r.scale, r.instance);
            if !(m.value >= -r.rel_tol * r.scale) {
                agg.violations += 1;
            }
        }
    }

    /// Folds in a later partial aggregate; ties keep the earlier instance.
    pub fn merge(&mut self, other: &CheckAggregate) {
        if let (Some(v), Some(id)) = (other.worst_margin, other.worst_instance) {
            if self.worst_margin.is_none() || other.worst_normalized < self.worst_normalized {
                self.worst_normalized = other.worst_normalized;
                self.worst_margin = Some(v);
                self.worst_instance = Some(id);
            }
        }
        self.violations += other.violations;
        self.evaluated += other.evaluated;
        for (a, b) in self.margins.iter_mut().zip(&other.margins) {
            a.merge(b);
        }
    }

    pub fn margin(&self, name: &str) -> Option<&MarginAggregate> {
        self.margins.iter().find(|m| m.name == name)
    }
}

pub(crate) fn empty_aggregates() -> Vec<CheckAggregate> {
    CheckKind::ALL
        .iter()
        .map(|&k| CheckAggregate::new(k))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub tool_version: String,
    pub config: SuiteConfig,
    pub checks: Vec<CheckAggregate>,
    pub passed: bool,
    pub errors: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_seconds: Option<f64>,
}

impl SuiteReport {
    pub(crate) fn new(config: SuiteConfig) -> Self {
        SuiteReport {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            checks: empty_aggregates(),
            passed: false,
            errors: Vec::new(),
            runtime_seconds: None,
        }
    }

    pub(crate) fn absorb(&mut self, partial: &[CheckAggregate], errors: Vec<String>) {
        for (a, b) in self.checks.iter_mut().zip(partial) {
            a.merge(b);
        }
        self.errors.extend(errors);
    }

    pub(crate) fn finish(mut self, runtime_seconds: f64) -> Self {
        self.passed = self.errors.is_empty() && self.total_violations() == 0;
        self.runtime_seconds = Some(runtime_seconds);
        self
    }

    pub fn total_violations(&self) -> usize {
        self.checks.iter().map(|c| c.violations).sum()
    }

    pub fn check(&self, kind: CheckKind) -> &CheckAggregate {
        self.checks
            .iter()
            .find(|c| c.kind == kind)
            .expect("every kind is aggregated")
    }

    /// The report without its runtime; identical configs give identical bodies.
    pub fn body(&self) -> SuiteReport {
        SuiteReport {
            runtime_seconds: None,
            ..self.clone()
        }
    }
}
