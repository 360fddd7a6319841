use opineq::explorer::{ExplorationReport, GridSpec, ScanKind};
use opineq::verifier::{InstanceId, SuiteReport};
use serde::Serialize;

fn num(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn instance_cells(id: Option<InstanceId>) -> [String; 4] {
    match id {
        Some(id) => [
            id.seed.to_string(),
            id.index.to_string(),
            id.dim.to_string(),
            id.nu.to_string(),
        ],
        None => Default::default(),
    }
}

pub fn suite_json(report: &SuiteReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

/// One row per check followed by one row per margin of that check.
pub fn suite_csv(report: &SuiteReport) -> csv::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "tool_version",
        "check",
        "margin",
        "worst_margin",
        "worst_seed",
        "worst_index",
        "worst_dim",
        "worst_nu",
        "violations",
        "evaluated",
        "passed",
        "runtime_seconds",
    ])?;
    let passed = report.passed.to_string();
    let runtime = num(report.runtime_seconds);
    for c in &report.checks {
        let [seed, index, dim, nu] = instance_cells(c.worst_instance);
        w.write_record([
            &report.tool_version,
            c.name,
            "",
            &num(c.worst_margin),
            &seed,
            &index,
            &dim,
            &nu,
            &c.violations.to_string(),
            &c.evaluated.to_string(),
            &passed,
            &runtime,
        ])?;
        for m in &c.margins {
            let [seed, index, dim, nu] = instance_cells(m.worst_instance);
            w.write_record([
                &report.tool_version,
                c.name,
                m.name,
                &num(m.worst_margin),
                &seed,
                &index,
                &dim,
                &nu,
                &m.violations.to_string(),
                &c.evaluated.to_string(),
                &passed,
                &runtime,
            ])?;
        }
    }
    Ok(String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8"))
}

#[derive(Serialize)]
pub struct ExploreOutput<'a> {
    pub tool_version: &'static str,
    pub grid: &'a GridSpec,
    pub b_samples: &'a [f64],
    pub scans: &'a [ExplorationReport],
    pub violations: usize,
    pub counterexample_found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_seconds: Option<f64>,
}

pub fn explore_json(out: &ExploreOutput) -> String {
    let mut s = serde_json::to_string_pretty(out).expect("reports serialize");
    s.push('\n');
    s
}

/// A single reference or extremizer scan is written as its own table; any
/// other selection is written as one summary row per scan.
pub fn explore_csv(out: &ExploreOutput) -> csv::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match out.scans {
        [r] if r.scan == ScanKind::Reference => {
            w.write_record(["a", "b", "nu", "computed", "reference", "deviation"])?;
            for v in &r.reference {
                w.write_record(
                    [v.a, v.b, v.nu, v.computed, v.reference, v.deviation].map(|x| x.to_string()),
                )?;
            }
        }
        [r] if r.scan == ScanKind::Extremizers => {
            w.write_record([
                "b",
                "family",
                "argmax",
                "expected_argmax",
                "argmax_error",
                "max",
                "expected_max",
                "max_rel_error",
                "passed",
            ])?;
            for e in &r.extremizers {
                w.write_record([
                    e.b.to_string(),
                    e.family.name().to_string(),
                    e.argmax.to_string(),
                    e.expected_argmax.to_string(),
                    e.argmax_error.to_string(),
                    e.max.to_string(),
                    e.expected_max.to_string(),
                    e.max_rel_error.to_string(),
                    e.passed.to_string(),
                ])?;
            }
        }
        scans => {
            w.write_record([
                "scan",
                "points_evaluated",
                "min",
                "min_a",
                "min_b",
                "min_nu",
                "max",
                "max_a",
                "max_b",
                "max_nu",
                "positive",
                "negative",
                "zero",
                "witnesses",
                "violations",
                "counterexample_found",
            ])?;
            for r in scans {
                let ext = |e: Option<opineq::explorer::Extremum>| match e {
                    Some(e) => [
                        e.value.to_string(),
                        e.at.a.to_string(),
                        e.at.b.to_string(),
                        num(e.at.nu),
                    ],
                    None => Default::default(),
                };
                let [min, min_a, min_b, min_nu] = ext(r.min);
                let [max, max_a, max_b, max_nu] = ext(r.max);
                w.write_record([
                    r.scan.name().to_string(),
                    r.points_evaluated.to_string(),
                    min,
                    min_a,
                    min_b,
                    min_nu,
                    max,
                    max_a,
                    max_b,
                    max_nu,
                    r.positive.to_string(),
                    r.negative.to_string(),
                    r.zero.to_string(),
                    r.witnesses.len().to_string(),
                    r.violations.to_string(),
                    r.counterexample_found.to_string(),
                ])?;
            }
        }
    }
    Ok(String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8"))
}
