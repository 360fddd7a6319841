//! Grid scans over the scalar margins and numeric checks of the closed-form
//! extremal weights.

mod golden;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{
    critical_nu_diff, critical_nu_ratio, diff_family, diff_family_mirror, ln_specht, log_mean,
    ratio_family, ratio_family_mirror, specht_ratio,
};

pub use golden::golden_section_max;

/// Witnesses must re-evaluate to their recorded value within this relative error.
pub const WITNESS_REL_TOL: f64 = 1e-10;
/// Golden-section bracket width.
pub const GOLDEN_TOL: f64 = 1e-10;
pub const ARGMAX_TOL: f64 = 1e-6;
pub const MAX_REL_TOL: f64 = 1e-9;
/// Slack allowed on the asserted component inequalities, relative to their sides.
pub const COMPONENT_REL_SLACK: f64 = 1e-14;
/// Negative points of the conjecture scan kept as witnesses.
const MAX_NEGATIVE_WITNESSES: usize = 16;

/// `count` log-spaced points from `lo` to `hi`, both included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LogRange {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl LogRange {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        let r = LogRange { lo, hi, count };
        r.validate("range")?;
        Ok(r)
    }

    fn validate(&self, field: &'static str) -> Result<()> {
        if !(self.lo.is_finite() && self.lo > 0.0 && self.hi.is_finite() && self.hi > 0.0) {
            return Err(Error::config(
                field,
                format!(
                    "endpoints must be positive and finite, got [{}, {}]",
                    self.lo, self.hi
                ),
            ));
        }
        if self.lo > self.hi {
            return Err(Error::config(
                field,
                format!("lo {} exceeds hi {}", self.lo, self.hi),
            ));
        }
        if self.count < 2 {
            return Err(Error::config(
                field,
                format!("count must be at least 2, got {}", self.count),
            ));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        let (l0, l1) = (self.lo.ln(), self.hi.ln());
        let last = self.count - 1;
        (0..self.count)
            .map(|i| match i {
                0 => self.lo,
                i if i == last => self.hi,
                i => (l0 + (l1 - l0) * i as f64 / last as f64).exp(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub a_range: LogRange,
    pub b_range: LogRange,
    pub nu_points: Vec<f64>,
}

pub fn default_nu_points() -> Vec<f64> {
    (1..=19).map(|k| k as f64 * 0.05).collect()
}

impl Default for GridSpec {
    fn default() -> Self {
        let r = LogRange {
            lo: 1e-2,
            hi: 1e2,
            count: 200,
        };
        GridSpec {
            a_range: r,
            b_range: r,
            nu_points: default_nu_points(),
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        self.a_range.validate("a_range")?;
        self.b_range.validate("b_range")?;
        if self.nu_points.is_empty() {
            return Err(Error::config("nu_points", "must not be empty"));
        }
        if let Some(v) = self.nu_points.iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::config("nu_points", format!("{v} is outside [0, 1]")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanKind {
    Reference,
    NoOrderingRatio,
    NoOrderingDifference,
    Conjecture,
    Extremizers,
}

impl ScanKind {
    pub const ALL: [ScanKind; 5] = [
        ScanKind::Reference,
        ScanKind::NoOrderingRatio,
        ScanKind::NoOrderingDifference,
        ScanKind::Conjecture,
        ScanKind::Extremizers,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScanKind::Reference => "reference",
            ScanKind::NoOrderingRatio => "no-ordering-ratio",
            ScanKind::NoOrderingDifference => "no-ordering-difference",
            ScanKind::Conjecture => "conjecture",
            ScanKind::Extremizers => "extremizers",
        }
    }
}

/// Which pair of bounds a no-ordering scan compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    Ratio,
    Difference,
}

impl Comparison {
    fn scan(self) -> ScanKind {
        match self {
            Comparison::Ratio => ScanKind::NoOrderingRatio,
            Comparison::Difference => ScanKind::NoOrderingDifference,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub a: f64,
    pub b: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Extremum {
    pub value: f64,
    pub at: GridPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub at: GridPoint,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReferenceValue {
    pub a: f64,
    pub b: f64,
    pub nu: f64,
    pub computed: f64,
    pub reference: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Ratio,
    RatioMirror,
    Difference,
    DifferenceMirror,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Ratio,
        Family::RatioMirror,
        Family::Difference,
        Family::DifferenceMirror,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Ratio => "ratio",
            Family::RatioMirror => "ratio-mirror",
            Family::Difference => "difference",
            Family::DifferenceMirror => "difference-mirror",
        }
    }

    fn eval(self, b: f64, nu: f64) -> f64 {
        match self {
            Family::Ratio => ratio_family(b, nu),
            Family::RatioMirror => ratio_family_mirror(b, nu),
            Family::Difference => diff_family(b, nu),
            Family::DifferenceMirror => diff_family_mirror(b, nu),
        }
    }

    fn interval(self) -> (f64, f64) {
        match self {
            Family::Ratio | Family::Difference => (0.0, 0.5),
            Family::RatioMirror | Family::DifferenceMirror => (0.5, 1.0),
        }
    }

    fn expected(self, b: f64) -> Result<(f64, f64)> {
        let sb = b.sqrt();
        Ok(match self {
            Family::Ratio => (critical_nu_ratio(b)?, specht_ratio(sb)?),
            Family::RatioMirror => (1.0 - critical_nu_ratio(b)?, specht_ratio(sb)?),
            Family::Difference => (critical_nu_diff(b)?, log_mean(1.0, sb)? * ln_specht(sb)?),
            Family::DifferenceMirror => (
                1.0 - critical_nu_diff(b)?,
                log_mean(1.0, sb)? * ln_specht(sb)?,
            ),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremizerRow {
    pub b: f64,
    pub family: Family,
    pub argmax: f64,
    pub expected_argmax: f64,
    pub argmax_error: f64,
    pub max: f64,
    pub expected_max: f64,
    pub max_rel_error: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExplorationReport {
    pub scan: ScanKind,
    pub points_evaluated: usize,
    pub min: Option<Extremum>,
    pub max: Option<Extremum>,
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    pub witnesses: Vec<Witness>,
    /// Failed asserted properties: component inequalities, reference
    /// deviations or extremizer mismatches, depending on the scan.
    pub violations: usize,
    /// Set when the conjecture scan meets a negative value.
    pub counterexample_found: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub reference: Vec<ReferenceValue>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub extremizers: Vec<ExtremizerRow>,
}

impl ExplorationReport {
    fn empty(scan: ScanKind) -> Self {
        ExplorationReport {
            scan,
            points_evaluated: 0,
            min: None,
            max: None,
            positive: 0,
            negative: 0,
            zero: 0,
            witnesses: Vec::new(),
            violations: 0,
            counterexample_found: false,
            reference: Vec::new(),
            extremizers: Vec::new(),
        }
    }

    pub fn has_both_signs(&self) -> bool {
        self.positive > 0 && self.negative > 0
    }

    /// Re-evaluates every witness; true when each matches its recorded value.
    pub fn reverify(&self) -> bool {
        self.witnesses
            .iter()
            .all(|w| match evaluate(self.scan, w.at) {
                Ok(v) => (v - w.value).abs() <= WITNESS_REL_TOL * w.value.abs(),
                Err(_) => false,
            })
    }
}

/// `(1-nu) a + nu b - S(sqrt(a/b)) a^(1-nu) b^nu`
pub fn ratio_comparison(a: f64, b: f64, nu: f64) -> Result<f64> {
    let s = specht_ratio((a / b).sqrt())?;
    // both means written so that they coincide exactly when a == b
    Ok(a + nu * (b - a) - s * a * (b / a).powf(nu))
}

/// `L(a,b) ln S(a/b) - [max(sqrt a, sqrt b) L(sqrt a, sqrt b) ln S(sqrt(a/b)) + r (sqrt a - sqrt b)^2]`
pub fn difference_comparison(a: f64, b: f64, nu: f64) -> Result<f64> {
    let (sa, sb) = (a.sqrt(), b.sqrt());
    let r = nu.min(1.0 - nu);
    let outer = log_mean(a, b)? * ln_specht(a / b)?;
    let inner = sa.max(sb) * log_mean(sa, sb)? * ln_specht(sa / sb)?;
    Ok(outer - (inner + r * (sa - sb) * (sa - sb)))
}

/// `L(a,b) ln S(a/b) - max(sqrt a, sqrt b) L(sqrt a, sqrt b) ln S(sqrt(a/b))`,
/// conjectured nonnegative.
pub fn conjecture_gap(a: f64, b: f64) -> Result<f64> {
    let (sa, sb) = (a.sqrt(), b.sqrt());
    Ok(log_mean(a, b)? * ln_specht(a / b)? - sa.max(sb) * log_mean(sa, sb)? * ln_specht(sa / sb)?)
}

fn evaluate(scan: ScanKind, p: GridPoint) -> Result<f64> {
    let nu = || {
        p.nu.ok_or_else(|| Error::config("nu", "weight missing from witness"))
    };
    match scan {
        ScanKind::NoOrderingRatio => ratio_comparison(p.a, p.b, nu()?),
        ScanKind::NoOrderingDifference => difference_comparison(p.a, p.b, nu()?),
        ScanKind::Conjecture => conjecture_gap(p.a, p.b),
        _ => Err(Error::config("scan", "scan has no pointwise quantity")),
    }
}

/// The two values `(1-nu) a + nu b - S(sqrt(a/b)) a^(1-nu) b^nu` at
/// `a = 1, b = 10, nu in {0.9, 0.6}`, both of which have reference figures.
pub const REFERENCE_POINTS: [(f64, f64, f64, f64); 2] =
    [(1.0, 10.0, 0.9, -0.246929), (1.0, 10.0, 0.6, 1.71544)];
pub const REFERENCE_TOL: f64 = 1e-4;

pub fn reproduce_reference_values() -> ExplorationReport {
    let mut rep = ExplorationReport::empty(ScanKind::Reference);
    for (a, b, nu, reference) in REFERENCE_POINTS {
        let computed = ratio_comparison(a, b, nu).expect("reference points are in the domain");
        let deviation = (computed - reference).abs();
        if !(deviation <= REFERENCE_TOL) {
            rep.violations += 1;
        }
        rep.points_evaluated += 1;
        rep.reference.push(ReferenceValue {
            a,
            b,
            nu,
            computed,
            reference,
            deviation,
        });
    }
    rep
}

/// Running reduction over grid values in index order.
#[derive(Default)]
struct Acc {
    evaluated: usize,
    min: Option<Extremum>,
    max: Option<Extremum>,
    positive: usize,
    negative: usize,
    zero: usize,
    violations: usize,
    negatives: Vec<Witness>,
}

impl Acc {
    fn push(&mut self, value: f64, at: GridPoint) {
        self.evaluated += 1;
        if value > 0.0 {
            self.positive += 1;
        } else if value < 0.0 {
            self.negative += 1;
            if self.negatives.len() < MAX_NEGATIVE_WITNESSES {
                self.negatives.push(Witness { at, value });
            }
        } else if value == 0.0 {
            self.zero += 1;
        } else {
            // NaN
            self.violations += 1;
            return;
        }
        if self.min.is_none_or(|m| value < m.value) {
            self.min = Some(Extremum { value, at });
        }
        if self.max.is_none_or(|m| value > m.value) {
            self.max = Some(Extremum { value, at });
        }
    }

    fn merge(mut self, o: Acc) -> Acc {
        self.evaluated += o.evaluated;
        self.positive += o.positive;
        self.negative += o.negative;
        self.zero += o.zero;
        self.violations += o.violations;
        if let Some(m) = o.min {
            if self.min.is_none_or(|s| m.value < s.value) {
                self.min = Some(m);
            }
        }
        if let Some(m) = o.max {
            if self.max.is_none_or(|s| m.value > s.value) {
                self.max = Some(m);
            }
        }
        let room = MAX_NEGATIVE_WITNESSES - self.negatives.len();
        self.negatives.extend(o.negatives.into_iter().take(room));
        self
    }

    fn into_report(self, scan: ScanKind) -> ExplorationReport {
        let mut rep = ExplorationReport::empty(scan);
        rep.points_evaluated = self.evaluated;
        rep.min = self.min;
        rep.max = self.max;
        rep.positive = self.positive;
        rep.negative = self.negative;
        rep.zero = self.zero;
        rep.violations = self.violations;
        rep.witnesses = self.negatives;
        rep
    }
}

/// Evaluates `row(a, acc)` for every `a` in parallel and folds the rows in order.
fn scan_rows<F>(a_points: &[f64], row: F) -> Acc
where
    F: Fn(f64, &mut Acc) + Sync,
{
    a_points
        .par_iter()
        .map(|&a| {
            let mut acc = Acc::default();
            row(a, &mut acc);
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Acc::default(), Acc::merge)
}

/// Scans the difference of two bounds that are not ordered in general and
/// reports the most positive and most negative grid points as witnesses.
pub fn no_ordering_scan(cmp: Comparison, g: &GridSpec) -> Result<ExplorationReport> {
    g.validate()?;
    let bs = g.b_range.points();
    let f = match cmp {
        Comparison::Ratio => ratio_comparison,
        Comparison::Difference => difference_comparison,
    };
    let acc = scan_rows(&g.a_range.points(), |a, acc| {
        for &b in &bs {
            for &nu in &g.nu_points {
                let at = GridPoint { a, b, nu: Some(nu) };
                acc.push(f(a, b, nu).unwrap_or(f64::NAN), at);
            }
        }
    });
    let mut rep = acc.into_report(cmp.scan());
    rep.witnesses.clear();
    if let Some(m) = rep.max.filter(|m| m.value > 0.0) {
        rep.witnesses.push(Witness {
            at: m.at,
            value: m.value,
        });
    }
    if let Some(m) = rep.min.filter(|m| m.value < 0.0) {
        rep.witnesses.push(Witness {
            at: m.at,
            value: m.value,
        });
    }
    Ok(rep)
}

/// `L(a,b) <= max(sqrt a, sqrt b) L(sqrt a, sqrt b)` and
/// `ln S(a/b) >= ln S(sqrt(a/b))`, which hold for every `a, b > 0`.
pub fn component_inequalities_hold(a: f64, b: f64) -> Result<bool> {
    let (sa, sb) = (a.sqrt(), b.sqrt());
    let lhs = log_mean(a, b)?;
    let rhs = sa.max(sb) * log_mean(sa, sb)?;
    let big = ln_specht(a / b)?;
    let small = ln_specht(sa / sb)?;
    Ok(lhs <= rhs * (1.0 + COMPONENT_REL_SLACK) && big >= small * (1.0 - COMPONENT_REL_SLACK))
}

/// Scans the conjectured gap over `a != b` grid points. A negative value is
/// flagged as a counterexample; only the component inequalities count as
/// violations.
pub fn conjecture_scan(g: &GridSpec) -> Result<ExplorationReport> {
    g.validate()?;
    let bs = g.b_range.points();
    let acc = scan_rows(&g.a_range.points(), |a, acc| {
        for &b in &bs {
            if a == b {
                continue;
            }
            let at = GridPoint { a, b, nu: None };
            acc.push(conjecture_gap(a, b).unwrap_or(f64::NAN), at);
            if !component_inequalities_hold(a, b).unwrap_or(false) {
                acc.violations += 1;
            }
        }
    });
    let mut rep = acc.into_report(ScanKind::Conjecture);
    rep.counterexample_found = rep.negative > 0;
    if let Some(m) = rep.min {
        if m.value >= 0.0 {
            rep.witnesses.push(Witness {
                at: m.at,
                value: m.value,
            });
        }
    }
    Ok(rep)
}

pub const DEFAULT_EXTREMIZER_SAMPLES: [f64; 6] = [0.1, 0.5, 2.0, 4.0, 10.0, 100.0];

/// Maximizes every weight family of the reverse bounds numerically and compares the
/// result with the closed-form maximizer and maximum.
pub fn verify_extremizers(b_samples: &[f64]) -> Result<ExplorationReport> {
    for &b in b_samples {
        critical_nu_ratio(b)?;
    }
    let mut rep = ExplorationReport::empty(ScanKind::Extremizers);
    for &b in b_samples {
        for fam in Family::ALL {
            let (lo, hi) = fam.interval();
            let (argmax, max) = golden_section_max(|nu| fam.eval(b, nu), lo, hi, GOLDEN_TOL);
            let (expected_argmax, expected_max) = fam.expected(b)?;
            let argmax_error = (argmax - expected_argmax).abs();
            let max_rel_error = (max - expected_max).abs() / expected_max.abs();
            let passed = argmax_error <= ARGMAX_TOL && max_rel_error <= MAX_REL_TOL;
            if !passed {
                rep.violations += 1;
            }
            rep.points_evaluated += 1;
            rep.extremizers.push(ExtremizerRow {
                b,
                family: fam,
                argmax,
                expected_argmax,
                argmax_error,
                max,
                expected_max,
                max_rel_error,
                passed,
            });
        }
    }
    Ok(rep)
}
