use std::sync::OnceLock;

use amalgam_core::theorems::{run_theorems, theorem_ids, Context};
use amalgam_core::{run_catalog, Budget, Catalog, CatalogReport, SuiteConfig};

const B: Budget = Budget::DEFAULT;

fn only(ids: &[&str]) -> SuiteConfig {
    SuiteConfig {
        theorems: Some(ids.iter().map(|s| s.to_string()).collect()),
        ..SuiteConfig::default()
    }
}

/// One full run over the built-in catalog, shared by the tests below.
fn default_report() -> &'static CatalogReport {
    static REPORT: OnceLock<CatalogReport> = OnceLock::new();
    REPORT.get_or_init(|| run_catalog(&Catalog::default_catalog(&B), &SuiteConfig::default()).unwrap())
}

#[test]
fn ids_are_sorted_and_unique() {
    let ids = theorem_ids();
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(ids, sorted);
    assert_eq!(ids.len(), 21);
}

#[test]
fn unknown_theorem_is_an_error() {
    let cat = Catalog::parse("(def Z2 (zmod 2))", &B).unwrap();
    let ctx = Context::new(&cat, &B, 2);
    assert!(run_theorems(&ctx, Some(&["nope".to_string()])).is_err());
}

#[test]
fn empty_catalog_passes() {
    let cat = Catalog::parse("; empty\n", &B).unwrap();
    let r = run_catalog(&cat, &SuiteConfig::default()).unwrap();
    assert!(r.summary.passed);
    assert_eq!(r.summary.entries, 0);
    assert_eq!(r.theorems.len(), 21);
    assert!(r.theorems.iter().all(|t| t.instances == 0));
}

#[test]
fn corrupted_table_is_a_build_failure() {
    let text = "(def T (table (elements 0 1) (zero 0) (one 1) (add 0 1 1 0) (mul 0 1 0 1)))\n\
                (def U (product T T))\n(def Z2 (zmod 2))";
    let cat = Catalog::parse(text, &B).unwrap();
    let r = run_catalog(&cat, &only(&["hierarchy"])).unwrap();
    assert!(!r.summary.passed);
    let ids: Vec<&str> = r.build_errors.iter().map(|e| e.id.as_str()).collect();
    assert_eq!(ids, ["T", "U"]);
    assert_eq!(r.theorem("hierarchy").unwrap().instances, 1);
}

#[test]
fn valfib_examples() {
    let r = default_report();
    let t = r.theorem("valfib").unwrap();
    assert!(t.passed());
    let zero = t.outcomes_for("FIB_ZERO").next().unwrap();
    assert!(zero.note.starts_with("D chain false"), "{}", zero.note);
    let e2 = t.outcomes_for("FIB_E2").next().unwrap();
    assert!(e2.note.starts_with("D chain true"), "{}", e2.note);
    assert!(e2.note.contains("ρ injective true, p_B(D) chain true"));
}

#[test]
fn regular_hypotheses_are_degenerate() {
    let r = default_report();
    for t in r.theorems.iter().filter(|t| t.theorem == "im_reg" || t.theorem == "regular_conductor") {
        assert!(t.passed());
        assert!(t.hypothesis_satisfied > 0);
        assert_eq!(t.degenerate, t.hypothesis_satisfied, "{}", t.theorem);
        assert!(t.flags.iter().any(|f| f.contains("never holds non-degenerately")));
    }
    let rc = r.theorem("regular_conductor").unwrap();
    let dup2: Vec<_> = rc.outcomes_for("DUP_Z2").collect();
    assert!(dup2.iter().all(|o| o.hypothesis && o.degenerate && o.ok));
}

#[test]
fn finite_embedding_generators() {
    let r = default_report();
    let t = r.theorem("finite_embedding").unwrap();
    let e2 = t.outcomes_for("E2").next().unwrap();
    assert!(e2.ok);
    assert!(e2.note.contains("span 4 of 4"), "{}", e2.note);
    let dup6 = t.outcomes_for("DUP_Z6").next().unwrap();
    assert!(dup6.note.contains("span 18 of 18"), "{}", dup6.note);
    let zero = t.outcomes_for("DUP_ZERO").next().unwrap();
    assert!(zero.note.starts_with("{[1,1]} span"), "{}", zero.note);
}

#[test]
fn census_separates_product_identity() {
    let r = default_report();
    let census = &r.theorem("im_reg").unwrap().census;
    assert!(census.iter().all(|row| row.lattice_distributive == row.arithmetical));
    let dup4 = census.iter().find(|row| row.entry == "DUP_Z4").unwrap();
    assert!(!dup4.arithmetical && !dup4.lattice_distributive);
    assert!(dup4.product_identity);
}

#[test]
fn total_sufficiency_examples() {
    let r = default_report();
    let t = r.theorem("total_sufficiency").unwrap();
    let e2 = t.outcomes_for("E2").next().unwrap();
    assert!(!e2.hypothesis);
    assert!(e2.note.ends_with("carrier total true"), "{}", e2.note);
    let dup4 = t.outcomes_for("DUP_Z4").next().unwrap();
    assert!(dup4.hypothesis && dup4.ok);
}
