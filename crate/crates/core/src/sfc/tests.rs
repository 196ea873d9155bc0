use super::*;
use crate::groupspec::parse;
use crate::permgroup::DEFAULT_ORDER_CAP;

fn run(spec: &str, exhaustive: bool) -> Analysis {
    let expr = parse(spec).unwrap();
    let g = expr.build(DEFAULT_ORDER_CAP).unwrap();
    analyze(
        &g,
        Some(&expr),
        KnownStatusTable::builtin(),
        ClassifyOptions { exhaustive },
    )
    .unwrap()
}

fn verdict(spec: &str) -> (SfcStatus, &'static str) {
    let a = run(spec, false);
    (a.verdict.status, a.verdict.rule_name())
}

#[test]
fn ladder_verdicts() {
    use SfcStatus::*;
    assert_eq!(verdict("C1"), (HasSfc, "R1-eichler"));
    assert_eq!(verdict("Q28"), (FailsSfc, "R0-known-table"));
    assert_eq!(verdict("Q8 x C2"), (FailsSfc, "R0-known-table"));
    assert_eq!(verdict("sd(C4, C4, [[-1]])"), (HasSfc, "R3-core-star"));
    assert_eq!(verdict("Q8 x C7"), (HasSfc, "R3-core-star"));
    assert_eq!(verdict("Q8 x C2 x C3"), (FailsSfc, "R2-quotient-failure"));
    assert_eq!(verdict("Ttilde x Ttilde"), (HasSfc, "R7-tt-it-product"));
    assert_eq!(verdict("Ttilde x Itilde"), (HasSfc, "R7-tt-it-product"));
}

#[test]
fn unknown_with_many_quotients() {
    let a = run("sd(C5^2, C4, [[-1,0],[0,-1]])", false);
    assert_eq!(a.verdict.status, SfcStatus::Unknown);
    assert_eq!(a.verdict.rule, None);
    assert_eq!(a.bp_quotients.len(), 6);
    assert!(a.bp_quotients.iter().all(|q| q.id.to_string() == "Q20"));
    assert_eq!(a.qn.n, 6);
    assert_eq!(a.verdict.trace.len(), RuleId::ALL.len());
}

#[test]
fn certificates() {
    let a = run("Q8 x C2 x C3", false);
    let fq = a.verdict.certificate.failing_quotient.unwrap();
    assert_eq!((fq.kernel_order, fq.label.as_str()), (3, "Q8 x C2"));
    let a = run("Q8 x C7", false);
    let c = &a.verdict.certificate;
    assert_eq!(
        (c.m_h, c.core_order, c.core_quotient.as_deref()),
        (1, Some(7), Some("Q8"))
    );
    assert_eq!(c.product_factors, ["Q8", "C7"]);
}

#[test]
fn exhaustive_mode_agrees() {
    for spec in [
        "C1",
        "Q8 x C7",
        "sd(C4, C4, [[-1]])",
        "Q8 x C2",
        "Q12",
        "C6",
    ] {
        let quick = run(spec, false).verdict;
        let full = run(spec, true).verdict;
        assert_eq!(
            (quick.status, quick.rule),
            (full.status, full.rule),
            "{spec}"
        );
        assert_eq!(full.trace.len(), RuleId::ALL.len());
    }
    let full = run("sd(C4, C4, [[-1]])", true).verdict;
    let applying: Vec<RuleId> = full
        .trace
        .iter()
        .filter(|t| t.applies)
        .map(|t| t.rule)
        .collect();
    assert!(applying.contains(&RuleId::CoreStar));
    assert!(applying.contains(&RuleId::HMultiplicity));
}

#[test]
fn star_product_rule() {
    // Q8 x C3 is caught earlier by the core rule; exhaustive mode still
    // shows the product rule firing.
    let full = run("Q8 x C3", true).verdict;
    let r6 = full
        .trace
        .iter()
        .find(|t| t.rule == RuleId::StarProduct)
        .unwrap();
    assert!(r6.applies, "{}", r6.detail);
    let full = run("Q8 x C2", true);
    let r6 = full
        .verdict
        .trace
        .iter()
        .find(|t| t.rule == RuleId::StarProduct)
        .unwrap();
    assert!(!r6.applies);
}

#[test]
fn conflicting_table_is_reported() {
    let table = KnownStatusTable::parse("Q8, no, bogus, 0").unwrap();
    let g = crate::catalog::dicyclic(2).unwrap();
    let err = analyze(&g, None, &table, ClassifyOptions { exhaustive: true }).unwrap_err();
    assert!(matches!(err, Error::RuleConflict(_)));
}

#[test]
fn serde_names() {
    assert_eq!(SfcStatus::FailsSfc.to_string(), "fails_sfc");
    assert_eq!(RuleId::TtItProduct.as_str(), "R7-tt-it-product");
}

#[test]
fn invariant_suite_passes() {
    for spec in [
        "C1",
        "Q8 x C2",
        "Q8 x C7",
        "Q24",
        "Otilde",
        "sd(C5^2, C4, [[-1,0],[0,-1]])",
        "D6",
        "C2 x C2 x C2",
    ] {
        let expr = parse(spec).unwrap();
        let g = expr.build(DEFAULT_ORDER_CAP).unwrap();
        let a = analyze(
            &g,
            Some(&expr),
            KnownStatusTable::builtin(),
            ClassifyOptions::default(),
        )
        .unwrap();
        let checks = invariant_checks(&g, &a).unwrap();
        assert!(checks.len() >= 3, "{spec}: {checks:?}");
    }
}
