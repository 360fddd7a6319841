use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opineq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn verify_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = run(&[
        "verify",
        "--seed",
        "42",
        "--trials",
        "100",
        "--dims",
        "2,4",
        "--m",
        "1",
        "--M",
        "10",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["config"]["seed"], 42);
    assert_eq!(v["config"]["M"], 10.0);
    assert_eq!(v["passed"], true);
    assert!(v["runtime_seconds"].is_number());
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 5);
    for c in checks {
        for key in [
            "name",
            "worst_margin",
            "worst_instance",
            "violations",
            "margins",
        ] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
        for key in ["seed", "index", "dim", "nu"] {
            assert!(c["worst_instance"].get(key).is_some());
        }
        assert_eq!(c["violations"], 0);
    }
}

#[test]
fn zero_trials_is_a_usage_error_naming_the_field() {
    let o = run(&["verify", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("trials"));
}

#[test]
fn inverted_bounds_name_the_field() {
    let o = run(&["verify", "--m", "5", "--M", "2", "--trials", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid M"));
}

#[test]
fn unknown_flags_rejected() {
    assert_eq!(run(&["verify", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        run(&["explore", "--scan", "nothing"]).status.code(),
        Some(2)
    );
}

#[test]
fn csv_report_has_check_and_margin_rows() {
    let o = run(&[
        "verify",
        "--trials",
        "3",
        "--dims",
        "2",
        "--format",
        "csv",
        "--omit-runtime",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers().unwrap().clone();
    assert_eq!(&headers[1], "check");
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    // five checks plus their 6 + 1 + 3 + 2 + 2 margins
    assert_eq!(rows.len(), 5 + 14);
    assert!(rows.iter().all(|row| &row[8] == "0"));
}

#[test]
fn pair_mode_reads_matrix_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    std::fs::write(&a, r#"{"n": 2, "entries": [2.0, 0.5, 0.5, 3.0]}"#).unwrap();
    std::fs::write(&b, r#"{"n": 2, "entries": [4.0, -1.0, -1.0, 2.0]}"#).unwrap();
    let o = run(&["verify", "--pair", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v = stdout_json(&o);
    assert_eq!(v["config"]["dims"], serde_json::json!([2]));

    std::fs::write(&b, r#"{"n": 2, "entries": [1.0, 2.0, 2.0, 1.0]}"#).unwrap();
    let o = run(&["verify", "--pair", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    std::fs::write(&b, r#"{"n": 2, "entries": [1.0, 0.0, 0.5, 1.0]}"#).unwrap();
    let o = run(&["verify", "--pair", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("symmetric"));
}

#[test]
fn explore_conjecture_scan() {
    let o = run(&["explore", "--scan", "conjecture"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["scans"][0]["scan"], "conjecture");
    assert_eq!(v["scans"][0]["negative"], 0);
    assert_eq!(v["counterexample_found"], false);
}

#[test]
fn explore_ratio_scan_finds_both_signs() {
    let o = run(&[
        "explore",
        "--scan",
        "no-ordering-ratio",
        "--a-count",
        "20",
        "--b-count",
        "20",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = &stdout_json(&o)["scans"][0];
    assert!(s["positive"].as_u64().unwrap() > 0);
    assert!(s["negative"].as_u64().unwrap() > 0);
    assert_eq!(s["witnesses"].as_array().unwrap().len(), 2);
}

#[test]
fn explore_extremizers_table() {
    let o = run(&[
        "explore",
        "--scan",
        "extremizers",
        "--b",
        "4",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<csv::StringRecord> = csv::Reader::from_reader(text.as_bytes())
        .records()
        .map(Result::unwrap)
        .collect();
    assert_eq!(rows.len(), 4);
    let argmax: f64 = rows[0][2].parse().unwrap();
    assert!((argmax - 0.221348).abs() < 1e-6);
    let argmax: f64 = rows[2][2].parse().unwrap();
    assert!((argmax - 0.264383).abs() < 1e-6);

    assert_eq!(
        run(&["explore", "--scan", "extremizers", "--b", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn explore_rejects_bad_grid() {
    let o = run(&["explore", "--scan", "conjecture", "--a-count", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("a_range"));
}

#[test]
fn repro_csv_has_two_rows() {
    let o = run(&["repro", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<csv::StringRecord> = csv::Reader::from_reader(text.as_bytes())
        .records()
        .map(Result::unwrap)
        .collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(&rows[0][0], "1");
    assert_eq!(&rows[0][1], "10");
    assert_eq!(&rows[0][2], "0.9");
    assert_eq!(&rows[1][2], "0.6");
}

#[test]
fn repro_text_mentions_inputs() {
    let o = run(&["repro"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("a=1 b=10 nu=0.9"));
    assert!(text.contains("a=1 b=10 nu=0.6"));
}

#[test]
fn identical_flags_give_identical_bodies() {
    let args = [
        "verify",
        "--seed",
        "7",
        "--trials",
        "10",
        "--dims",
        "3",
        "--omit-runtime",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
