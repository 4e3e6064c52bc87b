use super::*;
use crate::homotopy::ObstructionKey;

fn small() -> SampleConfig {
    SampleConfig {
        min_dim: 2,
        max_dim: 3,
        min_degree: -2,
        max_degree: 2,
        density: 0.6,
        coeff_bound: 3,
    }
}

fn oracle(trials: usize, seed: u64) -> OracleConfig {
    OracleConfig {
        trials,
        seed,
        sample: small(),
        conventions: Conventions::default(),
    }
}

fn parse(text: &str) -> FormalExpr {
    parse_expr(text, PermReading::Direct).unwrap()
}

fn agree(a: &FormalExpr, b: &FormalExpr) -> OracleOutcome {
    exprs_equal_mod_symmetry(a, b, &oracle(12, 1)).unwrap()
}

#[test]
fn parsed_shapes() {
    let e = parse("[m^0_1, m^1_1]");
    assert_eq!((e.arity(), e.degree()), (1, 0));
    let e = parse("m^0_2 o_1 m^0_{1,1} - (m^0_2 o_2 m^0_{1,1}) * (12)");
    assert_eq!((e.arity(), e.degree()), (3, -1));
    let e = parse("(m^0_{1,1} o_1 m^0_{1,1}) * {id + (123) + (132)}");
    assert_eq!(e.terms().len(), 3);
    let e = parse("2 m^1_1 o m^1_1 - 1/2 m^1_1 o m^1_1");
    assert_eq!(e.simplified().terms().len(), 1);
    assert_eq!(parse("n^1_1").degree(), 0);
}

#[test]
fn malformed_expressions_are_rejected() {
    for bad in [
        "",
        "m^0_1 +",
        "m^0_1 o_3 m^0_1",
        "m^0_2 + m^0_1",
        "m^0_2 + m^1_1",
        "m^x_1",
        "(m^0_2) * (13)",
        "(m^0_2) * (11)",
        "[m^0_1, m^0_2",
        "m^0_2 o m^0_1",
        "m^0_1 extra",
    ] {
        assert!(
            parse_expr(bad, PermReading::Direct).is_err(),
            "{bad:?} parsed"
        );
    }
}

#[test]
fn bracket_matches_its_expansion() {
    let bracket = parse("[m^0_1, m^0_{1,1}]");
    let expanded = parse("m^0_1 o m^0_{1,1} + m^0_{1,1} o_1 m^0_1 + m^0_{1,1} o_2 m^0_1");
    assert!(agree(&bracket, &expanded).agree());
    let printed = parse(EXPANDED_N0_11);
    assert!(!agree(&bracket, &printed).agree());
}

#[test]
fn readings_differ_only_on_non_involutions() {
    let three = "(m^0_{1,1} o_1 m^0_{1,1}) * (123)";
    let a = parse_expr(three, PermReading::Direct).unwrap();
    let b = parse_expr(three, PermReading::Inverse).unwrap();
    assert!(!agree(&a, &b).agree());
    let two = "(m^0_{1,1} o_1 m^0_{1,1}) * (12)";
    let a = parse_expr(two, PermReading::Direct).unwrap();
    let b = parse_expr(two, PermReading::Inverse).unwrap();
    assert!(agree(&a, &b).agree());
}

#[test]
fn rendering() {
    assert_eq!(
        parse("[m^0_1, m^1_1]").render(),
        "m^0_1 ∘ m^1_1 + m^1_1 ∘ m^0_1"
    );
    assert_eq!(
        parse("- 2 (m^0_2 o_2 m^0_{1,1}) * (12)").render(),
        "- 2 (m^0_2 ∘2 m^0_{1,1}) ∘ (12)"
    );
    assert_eq!(FormalExpr::zero(2, 0).render(), "0");
}

#[test]
fn table_row_counts() {
    for (w, rows) in [(1, 2), (2, 5), (3, 10), (4, 17)] {
        let t = render_table(w, Conventions::default()).unwrap();
        assert_eq!(t.lines().count(), rows, "weight {w}");
    }
    assert!(render_table(MAX_SPECIALIZE_WEIGHT + 1, Conventions::default()).is_err());
    let keys = tabulated_keys();
    assert_eq!(keys.len(), 17);
    for w in 1..=TABULATED_WEIGHT {
        let listed: Vec<_> = keys.iter().filter(|k| k.weight() == w).cloned().collect();
        let mut all = ObstructionKey::all_of_weight(w);
        let mut listed_sorted = listed.clone();
        listed_sorted.sort();
        all.sort();
        assert_eq!(listed_sorted, all);
    }
    assert!(tabulated_obstruction(
        &ObstructionKey::new(0, vec![1, 4]).unwrap(),
        PermReading::Direct
    )
    .is_err());
}

#[test]
fn every_erratum_names_a_tabulated_row() {
    let keys = tabulated_keys();
    assert_eq!(ERRATA.len(), 6);
    for e in ERRATA {
        assert!(keys.contains(&e.key()));
        assert_eq!(erratum(&e.key()).unwrap().corrected, e.corrected);
        let fixed = corrected_obstruction(&e.key(), PermReading::Direct).unwrap();
        let printed = tabulated_obstruction(&e.key(), PermReading::Direct).unwrap();
        assert_eq!(
            (fixed.arity(), fixed.degree()),
            (printed.arity(), printed.degree())
        );
    }
}

fn compare_weight(w: u32, corrected: bool) -> Vec<(ObstructionKey, OracleOutcome)> {
    ObstructionKey::all_of_weight(w)
        .into_iter()
        .map(|key| {
            let ours = specialize_obstruction(&key, Conventions::default()).unwrap();
            let theirs = if corrected {
                corrected_obstruction(&key, PermReading::Direct).unwrap()
            } else {
                tabulated_obstruction(&key, PermReading::Direct).unwrap()
            };
            let out = exprs_equal_mod_symmetry(&ours, &theirs, &oracle(25, 7)).unwrap();
            (key, out)
        })
        .collect()
}

#[test]
fn weight_one_rows_agree() {
    for (key, out) in compare_weight(1, false) {
        assert!(out.agree(), "{key}: {:?}", out.disagreement);
        assert_eq!(out.trials, 25);
        assert!(out.nonzero > 0, "{key} never evaluated to a nonzero map");
    }
}

#[test]
fn weight_two_rows_agree_except_the_errata() {
    for (key, out) in compare_weight(2, false) {
        assert_eq!(
            out.agree(),
            erratum(&key).is_none(),
            "{key}: {:?}",
            out.disagreement
        );
    }
    for (key, out) in compare_weight(2, true) {
        assert!(out.agree(), "{key}: {:?}", out.disagreement);
        assert!(out.nonzero > 0, "{key}");
    }
}

#[test]
fn oracle_rejects_arity_mismatch() {
    let a = parse("m^0_1");
    let b = parse("m^0_2");
    assert!(exprs_equal_mod_symmetry(&a, &b, &oracle(1, 0)).is_err());
}
