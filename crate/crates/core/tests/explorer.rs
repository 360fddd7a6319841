use opineq::explorer::{
    conjecture_scan, no_ordering_scan, reproduce_reference_values, verify_extremizers, Comparison,
    GridSpec, DEFAULT_EXTREMIZER_SAMPLES,
};

#[test]
fn default_conjecture_grid_has_no_negative_value() {
    let rep = conjecture_scan(&GridSpec::default()).unwrap();
    assert_eq!(rep.points_evaluated, 200 * 199);
    assert_eq!(rep.negative, 0);
    assert_eq!(rep.violations, 0);
    assert!(!rep.counterexample_found);
    assert!(rep.min.unwrap().value > 0.0);
    assert!(rep.reverify());
}

#[test]
fn default_grid_witnesses_both_orderings() {
    for cmp in [Comparison::Ratio, Comparison::Difference] {
        let rep = no_ordering_scan(cmp, &GridSpec::default()).unwrap();
        assert!(rep.has_both_signs(), "{cmp:?}");
        assert_eq!(rep.witnesses.len(), 2);
        assert!(rep.reverify());
    }
}

#[test]
fn scans_are_deterministic() {
    let g = GridSpec::default();
    let a = serde_json::to_string(&no_ordering_scan(Comparison::Difference, &g).unwrap()).unwrap();
    let b = serde_json::to_string(&no_ordering_scan(Comparison::Difference, &g).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn extremizers_for_default_samples() {
    let rep = verify_extremizers(&DEFAULT_EXTREMIZER_SAMPLES).unwrap();
    assert_eq!(rep.extremizers.len(), 24);
    for row in &rep.extremizers {
        assert!(row.passed, "{row:?}");
        assert!((row.argmax - row.expected_argmax).abs() <= 1e-6);
        assert!(row.max_rel_error <= 1e-9);
    }
}

#[test]
fn reference_values_within_tolerance() {
    let rep = reproduce_reference_values();
    assert_eq!(rep.violations, 0);
    assert!(rep.reference.iter().all(|v| v.deviation <= 1e-4));
}
