mod args;
mod report;

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use opineq::explorer::{
    conjecture_scan, no_ordering_scan, reproduce_reference_values, verify_extremizers, Comparison,
    ExplorationReport, REFERENCE_TOL,
};
use opineq::matfun::parse_matrix_json;
use opineq::verifier::{run_pair, run_suite, SuiteReport};
use opineq::{Error, SpdPair};

use args::{
    Cli, Command, ExploreArgs, Format, Output, ReproArgs, ReproFormat, ScanArg, VerifyArgs,
};
use report::ExploreOutput;

const EXIT_OK: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;
const EXIT_COUNTEREXAMPLE: u8 = 10;

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_usage() {
                EXIT_USAGE
            } else {
                EXIT_NUMERICAL
            },
            message: e.to_string(),
        }
    }
}

fn usage(message: String) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message,
    }
}

fn emit(out: &Output, body: &str) -> Result<(), Failure> {
    match &out.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn read_matrix(path: &Path) -> Result<opineq::SymMatrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn verify(args: &VerifyArgs) -> Result<u8, Failure> {
    let cfg = args.config();
    let mut report: SuiteReport = match &args.pair {
        Some(files) => {
            let a = read_matrix(&files[0])?;
            let b = read_matrix(&files[1])?;
            // a user-supplied pair that is not SPD is bad input, not a numerical failure
            let pair = SpdPair::new(a, b).map_err(|e| usage(format!("--pair: {e}")))?;
            run_pair(&cfg, &pair)?
        }
        None => run_suite(&cfg)?,
    };
    if args.output.omit_runtime {
        report.runtime_seconds = None;
    }
    let body = match args.output.format {
        Format::Json => report::suite_json(&report),
        Format::Csv => report::suite_csv(&report).map_err(|e| usage(e.to_string()))?,
    };
    emit(&args.output, &body)?;
    for e in &report.errors {
        eprintln!("error: {e}");
    }
    Ok(if !report.errors.is_empty() {
        EXIT_NUMERICAL
    } else if report.total_violations() > 0 {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    })
}

fn explore(args: &ExploreArgs) -> Result<u8, Failure> {
    let start = Instant::now();
    let grid = args.grid();
    let samples = args.b_samples();
    let wants = |s: ScanArg| args.scan == ScanArg::All || args.scan == s;
    if wants(ScanArg::NoOrderingRatio)
        || wants(ScanArg::NoOrderingDifference)
        || wants(ScanArg::Conjecture)
    {
        grid.validate()?;
    }
    let mut scans: Vec<ExplorationReport> = Vec::new();
    if wants(ScanArg::Reference) {
        scans.push(reproduce_reference_values());
    }
    if wants(ScanArg::NoOrderingRatio) {
        scans.push(no_ordering_scan(Comparison::Ratio, &grid)?);
    }
    if wants(ScanArg::NoOrderingDifference) {
        scans.push(no_ordering_scan(Comparison::Difference, &grid)?);
    }
    if wants(ScanArg::Conjecture) {
        scans.push(conjecture_scan(&grid)?);
    }
    if wants(ScanArg::Extremizers) {
        scans.push(verify_extremizers(&samples)?);
    }
    let violations = scans.iter().map(|s| s.violations).sum();
    let counterexample_found = scans.iter().any(|s| s.counterexample_found);
    let out = ExploreOutput {
        tool_version: env!("CARGO_PKG_VERSION"),
        grid: &grid,
        b_samples: &samples,
        scans: &scans,
        violations,
        counterexample_found,
        runtime_seconds: (!args.output.omit_runtime).then(|| start.elapsed().as_secs_f64()),
    };
    let body = match args.output.format {
        Format::Json => report::explore_json(&out),
        Format::Csv => report::explore_csv(&out).map_err(|e| usage(e.to_string()))?,
    };
    emit(&args.output, &body)?;
    if counterexample_found {
        eprintln!("conjecture counterexample found");
    }
    Ok(if violations > 0 {
        EXIT_VIOLATION
    } else if counterexample_found {
        EXIT_COUNTEREXAMPLE
    } else {
        EXIT_OK
    })
}

fn repro(args: &ReproArgs) -> Result<u8, Failure> {
    let rep = reproduce_reference_values();
    let body = match args.format {
        ReproFormat::Json => {
            let mut s = serde_json::to_string_pretty(&rep.reference).expect("values serialize");
            s.push('\n');
            s
        }
        ReproFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut write = || -> csv::Result<()> {
                w.write_record(["a", "b", "nu", "computed", "reference", "deviation"])?;
                for v in &rep.reference {
                    w.write_record(
                        [v.a, v.b, v.nu, v.computed, v.reference, v.deviation]
                            .map(|x| x.to_string()),
                    )?;
                }
                Ok(())
            };
            write().map_err(|e| usage(e.to_string()))?;
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
        }
        ReproFormat::Text => {
            let mut s = String::new();
            for v in &rep.reference {
                s += &format!(
                    "a={} b={} nu={}  computed={:.7}  reference={}  deviation={:.2e}\n",
                    v.a, v.b, v.nu, v.computed, v.reference, v.deviation
                );
            }
            s
        }
    };
    print!("{body}");
    let ok = rep.reference.iter().all(|v| v.deviation <= REFERENCE_TOL);
    Ok(if ok { EXIT_OK } else { EXIT_VIOLATION })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify(a) => verify(a),
        Command::Explore(a) => explore(a),
        Command::Repro(a) => repro(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
