//! End-to-end acceptance run over the built-in catalog. Prints one line per
//! criterion and exits nonzero if any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use amalgam_core::amalg::{
    fiberproduct_identity_check, localize_amalg_at_prime, quotient_isos_check, spectrum_transfer,
};
use amalgam_core::classify::{gauss_criterion, gauss_oracle, is_locally_prufer, is_prufer, is_total_ring_of_fractions};
use amalgam_core::ideal::oracle::ideals_by_subgroup_filter;
use amalgam_core::lattice::{all_ideals, IdealLattice};
use amalgam_core::spectrum::spectrum;
use amalgam_core::theorems::CatalogReport;
use amalgam_core::{classify, run_catalog, Budget, Catalog, Ring, SuiteConfig};

const B: Budget = Budget::DEFAULT;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ring<'c>(cat: &'c Catalog, id: &str) -> &'c Ring {
    cat.entry(id).and_then(|e| e.value.ring()).unwrap_or_else(|| panic!("no ring {id}"))
}

fn hierarchy_realization(cat: &Catalog) -> Outcome {
    let start = Instant::now();
    let want: [(&str, &[(&str, bool)]); 4] = [
        (
            "Z6",
            &[
                ("p1_semihereditary", true),
                ("p2_wgd_le_1", true),
                ("p3_arithmetical", true),
                ("p4_gauss", true),
                ("p5_prufer", true),
                ("locally_prufer", true),
            ],
        ),
        (
            "Z4",
            &[
                ("p1_semihereditary", false),
                ("p2_wgd_le_1", false),
                ("p3_arithmetical", true),
                ("p4_gauss", true),
                ("p5_prufer", true),
                ("locally_prufer", true),
            ],
        ),
        ("DUP_Z4", &[("p3_arithmetical", false), ("p4_gauss", true)]),
        (
            "R63",
            &[
                ("p4_gauss", false),
                ("locally_prufer", true),
                ("p5_prufer", true),
                ("total_ring_of_fractions", true),
            ],
        ),
    ];
    for (id, verdicts) in want {
        let c = classify(ring(cat, id), 2, &B).map_err(|e| format!("{id}: {e}"))?;
        for &(name, value) in verdicts {
            let got = c.verdicts.get(name).unwrap().value;
            ensure(got == value, || format!("{id} {name} = {got}, expected {value}"))?;
        }
        if id == "R63" {
            let w = c.verdicts.p4_gauss.witness.clone().ok_or("R63 Gauss verdict has no witness")?;
            ensure(w.items == ["u", "v"], || format!("R63 witness {:?}", w.items))?;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!("Z6, Z4, DUP_Z4, R63 verdict vectors match; R63 witness (u, v); {t:.1?}"))
}

fn required_amalgamations(cat: &Catalog) -> Result<usize, String> {
    let ids: BTreeSet<&str> = cat.amalgamations().map(|(id, _)| id).collect();
    for id in ["E1", "E2", "E8", "DUP_Z4", "DUP_Z6"] {
        ensure(ids.contains(id), || format!("catalog lacks {id}"))?;
    }
    ensure(ids.len() >= 6, || format!("only {} amalgamations", ids.len()))?;
    Ok(ids.len())
}

fn spectrum_transfer_exact(cat: &Catalog) -> Outcome {
    let n = required_amalgamations(cat)?;
    let mut primes = 0;
    for (id, am) in cat.amalgamations() {
        let t = spectrum_transfer(am, &B).map_err(|e| format!("{id}: {e}"))?;
        if let Some(c) = t.checks.iter().find(|c| !c.ok) {
            return Err(format!("{id}: {} ({})", c.name, c.detail));
        }
        primes += t.direct.primes.len();
        let expected = match id {
            "E8" => Some((1, 1)),
            "DUP_Z6" => Some((2, 1)),
            _ => None,
        };
        if let Some(p) = expected {
            ensure((t.max_lifts, t.max_bars) == p, || {
                format!("{id}: Max partition {:?}, expected {p:?}", (t.max_lifts, t.max_bars))
            })?;
        }
    }
    Ok(format!("{n} amalgamations, {primes} primes; sets, order and Max partition agree"))
}

fn localization_isomorphisms(cat: &Catalog) -> Outcome {
    required_amalgamations(cat)?;
    let mut pairs = 0;
    let mut zero = Vec::new();
    for (id, am) in cat.amalgamations() {
        let spec = spectrum(&am.carrier, &B).map_err(|e| e.to_string())?;
        for p in &spec.primes {
            let r = localize_amalg_at_prime(am, p, &B).map_err(|e| format!("{id} at {p}: {e}"))?;
            if let Some(c) = r.checks.iter().find(|c| !c.ok) {
                return Err(format!("{id} at {p}: {} ({})", c.name, c.detail));
            }
            pairs += 1;
            if r.zero_branch {
                zero.push(format!("{id} at {p}"));
            }
        }
    }
    ensure(zero.iter().any(|z| z.starts_with("DUP_Z6")), || {
        "no zero-ring branch on DUP_Z6".into()
    })?;
    Ok(format!("{pairs} (amalgamation, prime) pairs; zero-ring branch at {}", zero.join(", ")))
}

fn quotient_isomorphisms(cat: &Catalog) -> Outcome {
    let n = required_amalgamations(cat)?;
    for (id, am) in cat.amalgamations() {
        let checks = quotient_isos_check(am, &B).map_err(|e| format!("{id}: {e}"))?;
        for prefix in ["carrier/({0}×𝔟) ≅", "carrier/(f⁻¹(𝔟)×{0}) ≅", "carrier/(f⁻¹(𝔟)×𝔟) ≅"] {
            ensure(checks.iter().any(|c| c.name.starts_with(prefix)), || format!("{id}: no check {prefix}"))?;
        }
        if let Some(c) = checks.iter().find(|c| !c.ok) {
            return Err(format!("{id}: {} ({})", c.name, c.detail));
        }
        let (_, fib) = fiberproduct_identity_check(am, &B).map_err(|e| format!("{id}: {e}"))?;
        ensure(fib.ok, || format!("{id}: {}", fib.detail))?;
    }
    Ok(format!("{n} amalgamations: three quotient isomorphisms and the fiber-product identity"))
}

fn finite_machinery(cat: &Catalog) -> Outcome {
    let mut n = 0;
    for (id, r) in cat.rings() {
        let p = is_prufer(r, &B).map_err(|e| format!("{id}: {e}"))?;
        ensure(p.invertibility && p.distributivity && p.rtop && p.verdict, || {
            format!("{id}: invertibility {}, distributivity {}, rtop {}", p.invertibility, p.distributivity, p.rtop)
        })?;
        let total = is_total_ring_of_fractions(r, &B).map_err(|e| format!("{id}: {e}"))?;
        ensure(total, || format!("{id}: not a total ring of fractions"))?;
        let lp = is_locally_prufer(r, &B).map_err(|e| format!("{id}: {e}"))?;
        ensure(lp.value, || format!("{id}: not locally Prüfer"))?;
        n += 1;
    }
    Ok(format!("{n} rings: three Prüfer variants agree, total, locally Prüfer"))
}

fn gauss_concordance(cat: &Catalog, report: &CatalogReport) -> Outcome {
    let mut n = 0;
    for e in &report.entries {
        let Some(c) = &e.classification else {
            if let Some(err) = &e.error {
                return Err(format!("{}: {err}", e.id));
            }
            continue;
        };
        let g = &c.gauss_oracle;
        ensure(g.refutation.is_some() != c.verdicts.p4_gauss.value, || {
            format!("{}: criterion {} vs oracle refutation {:?}", e.id, c.verdicts.p4_gauss.value, g.refutation)
        })?;
        ensure(g.requested_degree == 2, || format!("{}: requested degree {}", e.id, g.requested_degree))?;
        n += 1;
    }
    let r63 = ring(cat, "R63");
    let start = Instant::now();
    let crit = gauss_criterion(r63, &B).map_err(|e| e.to_string())?;
    let t_crit = start.elapsed();
    ensure(!crit.value, || "criterion accepts R63".into())?;
    ensure(t_crit < Duration::from_secs(1), || format!("criterion took {t_crit:?}"))?;
    let start = Instant::now();
    let lat = IdealLattice::new(r63, &B).map_err(|e| e.to_string())?;
    let o = gauss_oracle(r63, &lat, 1, true, &B).map_err(|e| e.to_string())?;
    let t_oracle = start.elapsed();
    ensure(o.degree == 1, || format!("R63 oracle ran at degree {}", o.degree))?;
    let (p, q) = o.refutation.ok_or("no R63 refutation at degree 1")?;
    ensure(t_oracle < Duration::from_secs(600), || format!("oracle took {t_oracle:?}"))?;
    Ok(format!(
        "{n} rings concordant; R63 refuted at degree 1 by p = {p}, g = {q} in {t_oracle:.1?}, criterion {t_crit:.1?}"
    ))
}

fn theorem_suite(report: &CatalogReport) -> Outcome {
    let s = &report.summary;
    ensure(s.passed && s.failures == 0, || format!("{} failures", s.failures))?;
    ensure(s.rings_classified >= 12 && s.amalgamations >= 6, || {
        format!("{} rings, {} amalgamations", s.rings_classified, s.amalgamations)
    })?;
    for id in ["regular_conductor", "im_reg"] {
        let t = report.theorem(id).ok_or(format!("{id} missing"))?;
        ensure(t.degenerate > 0 && t.degenerate == t.hypothesis_satisfied, || {
            format!("{id}: {} degenerate of {} satisfied", t.degenerate, t.hypothesis_satisfied)
        })?;
        ensure(t.flags.iter().any(|f| f.contains("never holds non-degenerately")), || {
            format!("{id}: degeneracy not flagged")
        })?;
    }
    for id in ["bS0", "arithm_sur"] {
        let t = report.theorem(id).ok_or(format!("{id} missing"))?;
        let e2: Vec<_> = t.outcomes_for("E2").collect();
        ensure(!e2.is_empty(), || format!("{id}: no E2 outcome"))?;
        for o in e2 {
            ensure(!o.hypothesis && o.tags.iter().any(|g| g.starts_with("negative control")), || {
                format!("{id}: E2 is not a flagged hypothesis failure")
            })?;
        }
    }
    let e2 = report.entry("E2").and_then(|e| e.classification.as_ref()).ok_or("E2 unclassified")?;
    ensure(e2.verdicts.p3_arithmetical.value && e2.verdicts.p4_gauss.value && e2.verdicts.local.value, || {
        "E2 carrier classification".into()
    })?;
    let counts: Vec<String> = report
        .theorems
        .iter()
        .map(|t| format!("{} {}/{}", t.theorem, t.hypothesis_satisfied, t.instances))
        .collect();
    Ok(format!("{} checks, 0 failures; hypothesis counts: {}", report.theorems.len(), counts.join(", ")))
}

fn oracle_lattice(cat: &Catalog) -> Outcome {
    let mut n = 0;
    for (id, r) in cat.rings().filter(|(_, r)| r.size() <= 64) {
        let closure: BTreeSet<Vec<usize>> = all_ideals(r, &B)
            .map_err(|e| format!("{id}: {e}"))?
            .iter()
            .map(|i| i.member_list())
            .collect();
        ensure(closure == ideals_by_subgroup_filter(r), || format!("{id}: ideal sets differ"))?;
        n += 1;
    }
    Ok(format!("{n} rings of size at most 64"))
}

fn strip_timestamp(report: &CatalogReport) -> String {
    let mut v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    v.as_object_mut().unwrap().remove("timestamp");
    serde_json::to_string_pretty(&v).unwrap()
}

fn determinism(a: &CatalogReport, b: &CatalogReport, c: &CatalogReport) -> Outcome {
    let (sa, sb, sc) = (strip_timestamp(a), strip_timestamp(b), strip_timestamp(c));
    ensure(sa == sb, || "two runs at --jobs 4 differ".into())?;
    ensure(sa == sc, || "--jobs 1 and --jobs 4 differ".into())?;
    Ok(format!("{} bytes identical across two runs at 4 jobs and one at 1 job", sa.len()))
}

fn run(jobs: usize, cat: &Catalog) -> CatalogReport {
    let config = SuiteConfig {
        jobs: Some(jobs),
        ..SuiteConfig::default()
    };
    run_catalog(cat, &config).expect("run_catalog")
}

fn main() {
    let cat = Catalog::default_catalog(&B);
    let reports = catch_unwind(|| (run(4, &cat), run(4, &cat), run(1, &cat)));

    let mut criteria: Vec<Criterion> = vec![
        ("hierarchy realization", Box::new(|| hierarchy_realization(&cat))),
        ("spectrum transfer", Box::new(|| spectrum_transfer_exact(&cat))),
        ("localization isomorphisms", Box::new(|| localization_isomorphisms(&cat))),
        ("quotient isomorphisms", Box::new(|| quotient_isomorphisms(&cat))),
        ("finite-carrier machinery", Box::new(|| finite_machinery(&cat))),
    ];
    match &reports {
        Ok((a, b, c)) => {
            criteria.push(("Gauss concordance", Box::new(|| gauss_concordance(&cat, a))));
            criteria.push(("theorem suite", Box::new(|| theorem_suite(a))));
            criteria.push(("oracle lattice", Box::new(|| oracle_lattice(&cat))));
            criteria.push(("determinism", Box::new(|| determinism(a, b, c))));
        }
        Err(_) => {
            for name in ["Gauss concordance", "theorem suite", "determinism"] {
                criteria.push((name, Box::new(|| Err("run_catalog panicked".into()))));
            }
            criteria.insert(7, ("oracle lattice", Box::new(|| oracle_lattice(&cat))));
        }
    }

    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
