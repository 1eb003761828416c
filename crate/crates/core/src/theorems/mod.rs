//! Executable checks of the structure and transfer results for
//! amalgamations, run over a catalog, and the aggregate report.

mod descent;
mod structure;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::amalg::{AmalgamatedRing, FiberProduct};
use crate::budget::Budget;
use crate::catalog::{build_expr, BuildError, Catalog, Value};
use crate::classify::{classify, ClassificationReport};
use crate::construct::hom_expr;
use crate::error::{Result, RingError};
use crate::hom::RingHom;
use crate::ring::Ring;

pub const SCHEMA_VERSION: u32 = 1;

/// One (entry, clause) evaluation of a check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceOutcome {
    pub entry: String,
    pub clause: String,
    pub hypothesis: bool,
    pub degenerate: bool,
    /// The conclusion (or both sides' agreement for a biconditional); absent
    /// when the hypothesis fails.
    pub conclusion: Option<bool>,
    pub ok: bool,
    pub tags: Vec<String>,
    pub note: String,
}

impl InstanceOutcome {
    fn new(entry: &str, clause: impl Into<String>) -> InstanceOutcome {
        InstanceOutcome {
            entry: entry.to_string(),
            clause: clause.into(),
            hypothesis: true,
            degenerate: false,
            conclusion: None,
            ok: true,
            tags: Vec::new(),
            note: String::new(),
        }
    }

    /// Hypothesis met; `ok` is the conclusion.
    fn concluded(entry: &str, clause: impl Into<String>, ok: bool, note: impl Into<String>) -> InstanceOutcome {
        let mut o = InstanceOutcome::new(entry, clause);
        o.conclusion = Some(ok);
        o.ok = ok;
        o.note = note.into();
        o
    }

    /// Hypothesis not met; nothing to conclude.
    fn skipped(entry: &str, clause: impl Into<String>, note: impl Into<String>) -> InstanceOutcome {
        let mut o = InstanceOutcome::new(entry, clause);
        o.hypothesis = false;
        o.note = note.into();
        o
    }

    fn degenerate(mut self) -> InstanceOutcome {
        self.degenerate = true;
        self
    }

    fn tag(mut self, t: impl Into<String>) -> InstanceOutcome {
        self.tags.push(t.into());
        self
    }

    fn from_check(entry: &str, c: &crate::report::Check) -> InstanceOutcome {
        InstanceOutcome::concluded(entry, c.name.clone(), c.ok, format!("{}: {}", c.method, c.detail))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub entry: String,
    pub clause: String,
    pub message: String,
}

/// Distributivity facts for one ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub entry: String,
    /// `𝔞(𝔟∩𝔠) = 𝔞𝔟 ∩ 𝔞𝔠` for every triple.
    pub product_identity: bool,
    /// `𝔞 ∩ (𝔟+𝔠) = 𝔞∩𝔟 + 𝔞∩𝔠` for every triple.
    pub lattice_distributive: bool,
    pub arithmetical: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCheckResult {
    pub theorem: String,
    pub statement: String,
    pub instances: usize,
    pub hypothesis_satisfied: usize,
    pub degenerate: usize,
    pub flags: Vec<String>,
    pub outcomes: Vec<InstanceOutcome>,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub census: Vec<CensusRow>,
}

impl TheoremCheckResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn outcomes_for<'a>(&'a self, entry: &'a str) -> impl Iterator<Item = &'a InstanceOutcome> + 'a {
        self.outcomes.iter().filter(move |o| o.entry == entry)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Scope {
    Rings,
    Products,
    Homs,
    Amalgamations,
    /// Fiber-product entries and the fiber-product form of every amalgamation.
    FiberForms,
}

type Run = fn(&Context, &str) -> Result<Vec<InstanceOutcome>>;

struct Theorem {
    id: &'static str,
    statement: &'static str,
    flags: &'static [&'static str],
    /// Every instance counts as satisfying the hypothesis non-degenerately
    /// only if this is false.
    hypothesis_free: bool,
    scope: Scope,
    run: Run,
}

const THEOREMS: &[Theorem] = &[
    Theorem {
        id: "arithm_sur",
        statement: "under the surjectivity-or-nonzero side condition at each 𝔪 ⊇ f⁻¹(𝔟): carrier arithmetical ⟺ A arithmetical, 𝔟_{S_𝔪} = 0 and every B_𝔫 (𝔫 ∈ Max(B)∖V(𝔟)) a chain ring",
        flags: &[],
        hypothesis_free: false,
        scope: Scope::Amalgamations,
        run: descent::arithm_sur,
    },
    Theorem {
        id: "bS0",
        statement: "if 𝔟_{S_𝔪} = 0 for every maximal 𝔪 ⊇ f⁻¹(𝔟): (1) A locally Prüfer and every B_𝔫 Prüfer ⟹ carrier locally Prüfer; (2) A Gauss and every B_𝔫 Gauss ⟹ carrier Gauss",
        flags: &[],
        hypothesis_free: false,
        scope: Scope::Amalgamations,
        run: descent::b_s_zero,
    },
    Theorem {
        id: "fiber_product_identity",
        statement: "the carrier equals the fiber product of f̌ = π∘f and π: B → B/𝔟, element for element",
        flags: &[],
        hypothesis_free: true,
        scope: Scope::Amalgamations,
        run: structure::fiber_identity,
    },
    Theorem {
        id: "finite_embedding",
        statement: "if 𝔟 is a finitely generated A-module via f, {(1,1), (0,b₁), …, (0,bₙ)} generates the carrier as an A-module via ι; coherence transfers",
        flags: &["coherence holds for every finite ring; that part is recorded as degenerate"],
        hypothesis_free: false,
        scope: Scope::Amalgamations,
        run: descent::finite_embedding,
    },
    Theorem {
        id: "gauss_concordance",
        statement: "the local two-generator Gauss criterion agrees with the bounded polynomial oracle",
        flags: &[],
        hypothesis_free: true,
        scope: Scope::Rings,
        run: structure::gauss_concordance,
    },
    Theorem {
        id: "gauss_retract",
        statement: "(a) p_A maps polynomials certified Gauss over the carrier to polynomials certified Gauss over A; (b) carrier Gauss ⟹ A Gauss, carrier arithmetical ⟹ A arithmetical",
        flags: &["Gauss certification is bounded by the polynomial degree"],
        hypothesis_free: false,
        scope: Scope::Amalgamations,
        run: descent::gauss_retract,
    },
    Theorem {
        id: "hierarchy",
        statement: "P1 ⟹ P2 ⟹ P3 ⟹ P4 ⟹ P5 and pre-registered verdicts match",
        flags: &[],
        hypothesis_free: true,
        scope: Scope::Rings,
        run: structure::hierarchy,
    },
    Theorem {
        id: "ideal_oracle",
        statement: "the additive-subgroup ideal oracle matches closure-based ideal enumeration",
        flags: &[],
        hypothesis_free: false,
        scope: Scope::Rings,
        run: structure::ideal_oracle,
    },
    Theorem {
        id: "im_reg",
        statement: "φ: A → B onto with A Prüfer and Ker(φ) regular ⟹ 𝔞(𝔟∩𝔠) = 𝔞𝔟 ∩ 𝔞𝔠 for all ideals of B",
        flags: &["a regular ideal of a finite ring is the unit ideal, so the hypothesis forces B = 0"],
        hypothesis_free: false,
        scope: Scope::Homs,
        run: descent::im_reg,
    },
    Theorem {
        id: "locality",
        statement: "the carrier is local ⟺ A is local and 𝔟 ⊆ Jac(B)",
        flags: &[],
        hypothesis_free: true,
        scope: Scope::Amalgamations,
        run: structure::locality,
    },
    Theorem {
        id: "localization_isos",
        statement: "carrier_{𝔮̄^f} ≅ B_𝔮 and carrier_{𝔭′^f} ≅ A_𝔭 ⋈^{f_𝔭} 𝔟_{S_𝔭}, with carrier_{𝔭′^f} ≅ A_𝔭 when 𝔭 ⊉ f⁻¹(𝔟)",
        flags: &[],
        hypothesis_free: true,
        scope: Scope::Amalgamations,
        run: structure::localization_isos,
    },
    Theorem {
        id: "products",
        statement: "R × S satisfies each of P1–P5 and local Prüferness iff R and S do",
        flags: &[],
        hypothesis_free: true,
        scope: Scope::Products,
        run: structure::products,
    },
    Theorem {
        id: "prufer_descent",
        statement: "carrier Prüfer and f(Reg(A)) ⊆ Reg(B) ⟹ A Prüfer",
        flags: &["every finite ring is Prüfer, so the conclusion cannot fail"],
        hypothesis_free: false,
        scope: Scope::Amalgamations,
        run: descent::prufer_descent,
    },
    Theorem {
        id: "prufer_machinery",
        statement: "the three Prüfer tests agree, and every finite ring is Prüfer, locally Prüfer and a total ring of fractions",
        flags: &[],
        hypothesis_free: true,
        scope: Scope::Rings,
        run: structure::prufer_machinery,
    },
    Theorem {
        id: "quotient_isos",
        statement: "carrier/({0}×𝔟) ≅ A, carrier/(f⁻¹(𝔟)×{0}) ≅ f(A)+𝔟, carrier/(f⁻¹(𝔟)×𝔟) ≅ A/f⁻¹(𝔟), and A/𝔞 ≅ carrier/(𝔞⋈𝔟)",
        flags: &[],
        hypothesis_free: true,
        scope: Scope::Amalgamations,
        run: structure::quotient_isos,
    },
    Theorem {
        id: "regular_conductor",
        statement: "f⁻¹(𝔟) and 𝔟 regular ⟹ (carrier satisfies Pₙ / is locally Prüfer ⟺ A and B do and 𝔟 = B)",
        flags: &["a regular ideal of a finite ring is the unit ideal, so the hypothesis forces 𝔟 = B"],
        hypothesis_free: false,
        scope: Scope::Amalgamations,
        run: descent::regular_conductor,
    },
    Theorem {
        id: "semih_sur",
        statement: "𝔟 coherent and the side condition at each 𝔪 ⊇ f⁻¹(𝔟): carrier semihereditary ⟺ A semihereditary, 𝔟_{S_𝔪} = 0 and every B_𝔫 a valuation domain; the right side always suffices",
        flags: &["coherent A-module is checked as finitely generated"],
        hypothesis_free: false,
        scope: Scope::Amalgamations,
        run: descent::semih_sur,
    },
    Theorem {
        id: "spectrum_transfer",
        statement: "Spec of the carrier is the disjoint union of the lifts 𝔭′^f and the bars 𝔮̄^f (𝔮 ⊉ 𝔟), both order embeddings, with the matching split of Max",
        flags: &[],
        hypothesis_free: true,
        scope: Scope::Amalgamations,
        run: structure::spectrum_transfer,
    },
    Theorem {
        id: "total_sufficiency",
        statement: "A a total ring of fractions, 𝔟 ⊆ Jac(B), and 𝔟 ⊆ f(A) or 𝔟 torsion ⟹ the carrier is a total ring of fractions",
        flags: &["torsion by a regular element forces 𝔟 = 0 on finite rings"],
        hypothesis_free: false,
        scope: Scope::Amalgamations,
        run: descent::total_sufficiency,
    },
    Theorem {
        id: "valfib",
        statement: "the ideals of ρ ×_C σ are totally ordered ⟺ (ρ injective and p_B(D) a chain ring) or (σ injective and p_A(D) a chain ring)",
        flags: &[],
        hypothesis_free: true,
        scope: Scope::FiberForms,
        run: descent::valfib,
    },
    Theorem {
        id: "wgldim_sur",
        statement: "under the side condition at each 𝔪 ⊇ f⁻¹(𝔟): w.gl.dim(carrier) ≤ 1 ⟺ w.gl.dim A ≤ 1, 𝔟_{S_𝔪} = 0 and every B_𝔫 a valuation domain; the right side always suffices",
        flags: &[],
        hypothesis_free: false,
        scope: Scope::Amalgamations,
        run: descent::wgldim_sur,
    },
];

/// Identifiers accepted by the theorem filter, in report order.
pub fn theorem_ids() -> Vec<&'static str> {
    THEOREMS.iter().map(|t| t.id).collect()
}

/// Built catalog plus the classification of every ring it touches.
pub struct Context<'c> {
    pub catalog: &'c Catalog,
    pub budget: Budget,
    pub degree: usize,
    classes: BTreeMap<String, Result<Arc<ClassificationReport>>>,
}

fn touched_rings(catalog: &Catalog) -> BTreeMap<String, Ring> {
    let mut out = BTreeMap::new();
    let mut add = |r: &Ring| {
        out.entry(r.provenance().to_string()).or_insert_with(|| r.clone());
    };
    for e in &catalog.entries {
        match &e.value {
            Value::Ring(r) => add(r),
            Value::Ideal(i) => add(i.ring()),
            Value::Hom(h) => {
                add(h.source());
                add(h.target());
            }
            Value::Amalgamation(a) => {
                add(&a.carrier);
                add(a.a());
                add(a.b());
            }
            Value::FiberProduct(f) => {
                add(&f.carrier);
                add(f.rho.source());
                add(f.sigma.source());
            }
        }
    }
    out
}

impl<'c> Context<'c> {
    /// Classifies every ring touched by the catalog, in parallel.
    pub fn new(catalog: &'c Catalog, budget: &Budget, degree: usize) -> Context<'c> {
        let rings: Vec<(String, Ring)> = touched_rings(catalog).into_iter().collect();
        let classes = rings
            .par_iter()
            .map(|(k, r)| (k.clone(), classify(r, degree, budget).map(Arc::new)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        Context {
            catalog,
            budget: *budget,
            degree,
            classes,
        }
    }

    pub fn classification(&self, ring: &Ring) -> Result<Arc<ClassificationReport>> {
        match self.classes.get(ring.provenance()) {
            Some(r) => r.clone(),
            None => classify(ring, self.degree, &self.budget).map(Arc::new),
        }
    }

    /// Classification of the ring built from a construction expression.
    pub fn classification_of_expr(&self, expr: &str) -> Result<Arc<ClassificationReport>> {
        if let Some(r) = self.classes.get(expr) {
            return r.clone();
        }
        let v = build_expr(expr, &self.budget).map_err(RingError::InvalidParameter)?;
        let r = v
            .ring()
            .ok_or_else(|| RingError::InvalidParameter(format!("{expr} is not a ring")))?;
        classify(r, self.degree, &self.budget).map(Arc::new)
    }

    pub fn verdict(&self, ring: &Ring, name: &str) -> Result<bool> {
        let c = self.classification(ring)?;
        Ok(c.verdicts.get(name).expect("known verdict name").value)
    }

    fn value(&self, id: &str) -> &Value {
        &self.catalog.entry(id).expect("instance ids come from the catalog").value
    }

    pub(crate) fn amalg(&self, id: &str) -> &Arc<AmalgamatedRing> {
        match self.value(id) {
            Value::Amalgamation(a) => a,
            _ => panic!("{id} is not an amalgamation"),
        }
    }

    pub(crate) fn ring(&self, id: &str) -> &Ring {
        self.value(id).ring().expect("ring-like entry")
    }

    pub(crate) fn hom(&self, id: &str) -> &RingHom {
        match self.value(id) {
            Value::Hom(h) => h,
            _ => panic!("{id} is not a hom"),
        }
    }

    pub(crate) fn fiber(&self, id: &str) -> Option<&Arc<FiberProduct>> {
        match self.value(id) {
            Value::FiberProduct(f) => Some(f),
            _ => None,
        }
    }

    fn instances(&self, scope: Scope) -> Vec<String> {
        let mut ids: Vec<String> = self
            .catalog
            .entries
            .iter()
            .filter(|e| match scope {
                Scope::Rings => e.value.ring().is_some(),
                Scope::Products => e
                    .value
                    .ring()
                    .is_some_and(|r| matches!(e.value, Value::Ring(_)) && r.provenance().starts_with("(product ")),
                Scope::Homs => matches!(e.value, Value::Hom(_)),
                Scope::Amalgamations => matches!(e.value, Value::Amalgamation(_)),
                Scope::FiberForms => matches!(e.value, Value::Amalgamation(_) | Value::FiberProduct(_)),
            })
            .map(|e| e.id.clone())
            .collect();
        ids.sort();
        ids
    }
}

fn run_theorem(ctx: &Context, t: &Theorem) -> TheoremCheckResult {
    let ids = ctx.instances(t.scope);
    let per_instance: Vec<Vec<InstanceOutcome>> = ids
        .par_iter()
        .map(|id| match (t.run)(ctx, id) {
            Ok(v) => v,
            Err(e) => {
                let mut o = InstanceOutcome::concluded(id, "error", false, e.to_string());
                o.conclusion = None;
                vec![o]
            }
        })
        .collect();
    let outcomes: Vec<InstanceOutcome> = per_instance.into_iter().flatten().collect();

    let satisfied: BTreeSet<&str> = outcomes
        .iter()
        .filter(|o| o.hypothesis)
        .map(|o| o.entry.as_str())
        .collect();
    let degenerate: BTreeSet<&str> = outcomes
        .iter()
        .filter(|o| o.hypothesis && o.degenerate)
        .map(|o| o.entry.as_str())
        .collect();
    let non_degenerate = outcomes.iter().any(|o| o.hypothesis && !o.degenerate);

    let mut flags: Vec<String> = t.flags.iter().map(|s| s.to_string()).collect();
    let tags: BTreeSet<&String> = outcomes.iter().flat_map(|o| &o.tags).collect();
    flags.extend(tags.into_iter().cloned());
    if !t.hypothesis_free && !non_degenerate {
        flags.push("hypothesis never holds non-degenerately on this catalog".into());
    }
    let failures = outcomes
        .iter()
        .filter(|o| !o.ok)
        .map(|o| Failure {
            entry: o.entry.clone(),
            clause: o.clause.clone(),
            message: o.note.clone(),
        })
        .collect();
    let census = if t.id == "im_reg" {
        descent::census(ctx)
    } else {
        Vec::new()
    };
    let mut result = TheoremCheckResult {
        theorem: t.id.to_string(),
        statement: t.statement.to_string(),
        instances: ids.len(),
        hypothesis_satisfied: satisfied.len(),
        degenerate: degenerate.len(),
        flags,
        outcomes,
        failures,
        census,
    };
    let census_failures: Vec<Failure> = result
        .census
        .iter()
        .filter(|c| c.lattice_distributive != c.arithmetical)
        .map(|c| Failure {
            entry: c.entry.clone(),
            clause: "census".into(),
            message: format!(
                "lattice distributive {} but arithmetical {}",
                c.lattice_distributive, c.arithmetical
            ),
        })
        .collect();
    result.failures.extend(census_failures);
    result
}

/// Runs the selected checks (all when `filter` is `None`) in report order.
pub fn run_theorems(ctx: &Context, filter: Option<&[String]>) -> Result<Vec<TheoremCheckResult>> {
    if let Some(f) = filter {
        if let Some(bad) = f.iter().find(|id| !theorem_ids().contains(&id.as_str())) {
            return Err(RingError::InvalidParameter(format!("unknown theorem {bad}")));
        }
    }
    Ok(THEOREMS
        .iter()
        .filter(|t| filter.is_none_or(|f| f.iter().any(|id| id == t.id)))
        .map(|t| run_theorem(ctx, t))
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub kind: String,
    pub expression: String,
    pub size: Option<usize>,
    pub classification: Option<ClassificationReport>,
    pub error: Option<String>,
    pub expectation_mismatches: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub entries: usize,
    pub rings_classified: usize,
    pub amalgamations: usize,
    pub fiber_products: usize,
    pub homs: usize,
    pub theorems_run: usize,
    pub outcomes: usize,
    pub failures: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogReport {
    pub schema_version: u32,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub degree: usize,
    pub budget: Budget,
    pub theorem_filter: Option<Vec<String>>,
    pub summary: Summary,
    pub build_errors: Vec<BuildError>,
    pub entries: Vec<EntryReport>,
    pub theorems: Vec<TheoremCheckResult>,
}

impl CatalogReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn theorem(&self, id: &str) -> Option<&TheoremCheckResult> {
        self.theorems.iter().find(|t| t.theorem == id)
    }

    pub fn entry(&self, id: &str) -> Option<&EntryReport> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// Plain-text summary, one line per check.
    pub fn summary_text(&self) -> String {
        let mut s = String::new();
        for e in &self.build_errors {
            s.push_str(&format!("build error {} at {}: {}\n", e.id, e.position, e.message));
        }
        for e in &self.entries {
            if let Some(err) = &e.error {
                s.push_str(&format!("entry {}: {err}\n", e.id));
            }
            for m in &e.expectation_mismatches {
                s.push_str(&format!("entry {}: {m}\n", e.id));
            }
        }
        for t in &self.theorems {
            s.push_str(&format!(
                "{:<24} {:<4} instances {:>3}, hypothesis {:>3}, degenerate {:>3}, failures {}\n",
                t.theorem,
                if t.passed() { "ok" } else { "FAIL" },
                t.instances,
                t.hypothesis_satisfied,
                t.degenerate,
                t.failures.len()
            ));
        }
        let m = &self.summary;
        s.push_str(&format!(
            "{} entries, {} rings classified, {} amalgamations, {} failures: {}\n",
            m.entries,
            m.rings_classified,
            m.amalgamations,
            m.failures,
            if m.passed { "PASS" } else { "FAIL" }
        ));
        s
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub budget: Budget,
    pub degree: usize,
    pub theorems: Option<Vec<String>>,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig {
            budget: Budget::DEFAULT,
            degree: 2,
            theorems: None,
            jobs: None,
        }
    }
}

fn entry_reports(ctx: &Context) -> Vec<EntryReport> {
    let mut out: Vec<EntryReport> = ctx
        .catalog
        .entries
        .iter()
        .map(|e| {
            let ring = e.value.ring();
            let expression = match (&e.value, ring) {
                (Value::Hom(h), _) => hom_expr(h),
                (Value::Ideal(i), _) => crate::construct::ideal_expr(i),
                (_, Some(r)) => r.provenance().to_string(),
                _ => String::new(),
            };
            let (classification, error) = match ring.map(|r| ctx.classification(r)) {
                Some(Ok(c)) => (Some((*c).clone()), None),
                Some(Err(err)) => (None, Some(err.to_string())),
                None => (None, None),
            };
            let expectation_mismatches = match &classification {
                Some(c) => e
                    .expected
                    .iter()
                    .filter_map(|(k, want)| {
                        let got = c.verdicts.get(k).expect("validated verdict name").value;
                        (got != *want).then(|| format!("{k}: expected {want}, computed {got}"))
                    })
                    .collect(),
                None => Vec::new(),
            };
            EntryReport {
                id: e.id.clone(),
                kind: e.kind.to_string(),
                expression,
                size: ring.map(|r| r.size()),
                classification,
                error,
                expectation_mismatches,
            }
        })
        .collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

/// Builds nothing itself: classifies every catalog ring, runs the checks and
/// assembles the report. Output is independent of the thread count.
pub fn run_catalog(catalog: &Catalog, config: &SuiteConfig) -> Result<CatalogReport> {
    let work = || -> Result<CatalogReport> {
        let ctx = Context::new(catalog, &config.budget, config.degree);
        let theorems = run_theorems(&ctx, config.theorems.as_deref())?;
        let entries = entry_reports(&ctx);
        let failures = catalog.errors.len()
            + entries
                .iter()
                .map(|e| e.error.is_some() as usize + e.expectation_mismatches.len())
                .sum::<usize>()
            + theorems.iter().map(|t| t.failures.len()).sum::<usize>();
        let count = |k: &str| entries.iter().filter(|e| e.kind == k).count();
        let summary = Summary {
            entries: entries.len(),
            rings_classified: entries.iter().filter(|e| e.classification.is_some()).count(),
            amalgamations: count("amalgamation"),
            fiber_products: count("fiber-product"),
            homs: count("hom"),
            theorems_run: theorems.len(),
            outcomes: theorems.iter().map(|t| t.outcomes.len()).sum(),
            failures,
            passed: failures == 0,
        };
        Ok(CatalogReport {
            schema_version: SCHEMA_VERSION,
            timestamp: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            degree: config.degree,
            budget: config.budget,
            theorem_filter: config.theorems.clone(),
            summary,
            build_errors: catalog.errors.clone(),
            entries,
            theorems,
        })
    };
    match config.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| RingError::InvalidParameter(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    }
}
