use std::collections::BTreeSet;

use amalgam_core::amalg::duplication;
use amalgam_core::catalog::{build_expr, round_trip};
use amalgam_core::classify::{product_consistency_check, ClassificationReport};
use amalgam_core::ideal::oracle::ideals_by_subgroup_filter;
use amalgam_core::lattice::{all_ideals, IdealLattice};
use amalgam_core::localize::localize_at_prime;
use amalgam_core::spectrum::spectrum;
use amalgam_core::syntax::read_one;
use amalgam_core::{classify, Budget, Ideal, Ring};
use proptest::prelude::*;

const B: Budget = Budget::DEFAULT;

fn leaf() -> impl Strategy<Value = String> {
    prop_oneof![
        (1usize..=16).prop_map(|n| format!("(zmod {n})")),
        prop_oneof![Just((2, 1, 2)), Just((3, 1, 2)), Just((2, 2, 2)), Just((2, 1, 3))]
            .prop_map(|(p, k, d)| format!("(truncpoly {p} {k} {d})")),
        prop_oneof![
            Just("(polyquot (zmod 2) (poly 1 1 1))"),
            Just("(polyquot (zmod 2) (poly 0 0 1))"),
            Just("(polyquot (zmod 3) (poly 1 0 1))"),
            Just("(polyquot (zmod 4) (poly 0 0 1))"),
        ]
        .prop_map(String::from),
    ]
}

fn ring_expr() -> impl Strategy<Value = String> {
    prop_oneof![
        3 => leaf(),
        1 => (leaf(), leaf()).prop_map(|(a, b)| format!("(product {a} {b})")),
    ]
}

fn build(expr: &str) -> Ring {
    build_expr(expr, &B).unwrap().ring().unwrap().clone()
}

/// A ring small enough for every exhaustive check.
fn small_ring() -> impl Strategy<Value = Ring> {
    ring_expr().prop_map(|e| build(&e)).prop_filter("fits the lattice budget", |r| r.size() <= 128)
}

fn triples(r: &Ring) -> impl Strategy<Value = (usize, usize, usize)> {
    let n = r.size();
    (0..n, 0..n, 0..n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((r, (a, b, c)) in small_ring().prop_flat_map(|r| { let t = triples(&r); (Just(r), t) })) {
        prop_assert_eq!(r.add(a, r.add(b, c)), r.add(r.add(a, b), c));
        prop_assert_eq!(r.mul(a, r.mul(b, c)), r.mul(r.mul(a, b), c));
        prop_assert_eq!(r.add(a, b), r.add(b, a));
        prop_assert_eq!(r.mul(a, b), r.mul(b, a));
        prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
        prop_assert_eq!(r.add(a, r.neg(a)), r.zero());
        prop_assert_eq!(r.mul(r.one(), a), a);
    }

    #[test]
    fn expressions_round_trip(e in ring_expr()) {
        let r = build(&e);
        prop_assert_eq!(round_trip(&r, &B), Ok(()));
        let s = read_one(r.provenance()).unwrap();
        prop_assert_eq!(read_one(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn lattice_operations(r in small_ring(), seed in any::<[usize; 3]>()) {
        let lat = IdealLattice::new(&r, &B).unwrap();
        let n = lat.len();
        let (i, j, k) = (seed[0] % n, seed[1] % n, seed[2] % n);
        prop_assert_eq!(lat.sum(i, j), lat.sum(j, i));
        prop_assert_eq!(lat.intersection(i, lat.sum(i, j)), i);
        prop_assert_eq!(lat.sum(i, lat.intersection(i, j)), i);
        prop_assert!(lat.le(lat.product(i, j), lat.intersection(i, j)));
        prop_assert_eq!(lat.product(i, lat.sum(j, k)), lat.sum(lat.product(i, j), lat.product(i, k)));
        prop_assert!(lat.le(lat.zero_id(), i) && lat.le(i, lat.unit_id()));
        prop_assert_eq!(lat.comparable(i, j), lat.le(i, j) || lat.le(j, i));
    }

    #[test]
    fn subgroup_filter_matches_closure(r in small_ring().prop_filter("oracle bound", |r| r.size() <= 64)) {
        let closure: BTreeSet<Vec<usize>> = all_ideals(&r, &B).unwrap().iter().map(|i| i.member_list()).collect();
        prop_assert_eq!(closure, ideals_by_subgroup_filter(&r));
    }

    #[test]
    fn ring_is_product_of_its_localizations(r in small_ring()) {
        let spec = spectrum(&r, &B).unwrap();
        let sizes: usize = spec
            .maximals
            .iter()
            .map(|m| localize_at_prime(m, &B).unwrap().carrier.size())
            .product();
        prop_assert_eq!(sizes, r.size());
        prop_assert!(spec.maximals.iter().all(|m| spec.primes.contains(m)));
    }

    #[test]
    fn duplication_size(n in 1usize..=16, d in 0usize..16) {
        let r = build(&format!("(zmod {n})"));
        let i = Ideal::generate(&r, &[d % n]).unwrap();
        let am = duplication(&i, &B).unwrap();
        prop_assert_eq!(am.carrier.size(), n * i.len());
        let p: Vec<usize> = am.carrier.elements().map(|x| am.pair(x).0).collect();
        prop_assert!(r.elements().all(|a| p.contains(&a)));
    }
}

fn verdict_vector(c: &ClassificationReport) -> Vec<bool> {
    c.verdicts.named().iter().map(|(_, v)| v.value).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hierarchy_is_monotone(r in small_ring()) {
        let c = classify(&r, 1, &B).unwrap();
        let h = c.hierarchy();
        for k in 0..4 {
            prop_assert!(!h[k] || h[k + 1], "P{} without P{}", k + 1, k + 2);
        }
        prop_assert!(c.verdicts.p5_prufer.value && c.verdicts.locally_prufer.value);
        prop_assert!(c.verdicts.total_ring_of_fractions.value);
        prop_assert_eq!(c.verdicts.chain_ring.value, c.verdicts.local.value && c.verdicts.p3_arithmetical.value);
    }

    #[test]
    fn products_classify_factorwise(a in leaf(), b in leaf()) {
        let (ra, rb) = (build(&a), build(&b));
        prop_assume!(ra.size() * rb.size() <= 64);
        let pc = product_consistency_check(&ra, &rb, 1, &B).unwrap();
        prop_assert!(pc.consistent, "{:?}", pc.mismatches);
    }

    #[test]
    fn classification_is_deterministic(e in leaf()) {
        let r = build(&e);
        let (c1, c2) = (classify(&r, 1, &B).unwrap(), classify(&build(&e), 1, &B).unwrap());
        prop_assert_eq!(verdict_vector(&c1), verdict_vector(&c2));
        prop_assert_eq!(serde_json::to_string(&c1).unwrap(), serde_json::to_string(&c2).unwrap());
    }
}
