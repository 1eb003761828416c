//! The semihereditary ⇒ w.gl.dim ≤ 1 ⇒ arithmetical ⇒ Gauss ⇒ Prüfer
//! hierarchy, decided on finite rings with independent cross-checks.
//!
//! Local properties are decided on the localizations `R_𝔪` at the maximal
//! ideals. Witnesses are reported with base-ring element names: the canonical
//! map `R → R_𝔪` is onto for a finite ring.

pub mod gauss;
pub mod prufer;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Result, RingError};
use crate::ideal::Ideal;
use crate::lattice::IdealLattice;
use crate::localize::{localize_at_prime, LocalizedRing};
use crate::poly::PolyOverRing;
use crate::ring::Ring;
use crate::spectrum::spectrum_of_lattice;

pub use gauss::{gauss_oracle, is_gauss_polynomial, GaussOracle};
pub use prufer::{has_rtop, is_prufer, is_total_ring_of_fractions, PruferReport};

/// A counterexample attached to a false verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: String,
    pub items: Vec<String>,
    pub note: String,
}

impl Witness {
    pub fn elements(ring: &Ring, note: impl Into<String>, xs: &[usize]) -> Witness {
        Witness {
            kind: if xs.len() == 1 { "element" } else { "element_pair" }.into(),
            items: xs.iter().map(|&x| ring.name(x).to_string()).collect(),
            note: note.into(),
        }
    }

    pub fn ideals(note: impl Into<String>, ideals: &[&Ideal]) -> Witness {
        Witness {
            kind: if ideals.len() == 1 { "ideal" } else { "ideal_pair" }.into(),
            items: ideals.iter().map(|i| i.to_string()).collect(),
            note: note.into(),
        }
    }

    pub fn polynomials(note: impl Into<String>, p: &PolyOverRing, g: &PolyOverRing) -> Witness {
        Witness {
            kind: "polynomial_pair".into(),
            items: vec![p.to_string(), g.to_string()],
            note: note.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub value: bool,
    /// True only because there is nothing to check (the zero ring).
    pub vacuous: bool,
    pub method: String,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn holds(method: impl Into<String>) -> Verdict {
        Verdict {
            value: true,
            vacuous: false,
            method: method.into(),
            witness: None,
        }
    }

    fn fails(method: impl Into<String>, witness: Witness) -> Verdict {
        Verdict {
            value: false,
            vacuous: false,
            method: method.into(),
            witness: Some(witness),
        }
    }

    fn vacuous(method: impl Into<String>) -> Verdict {
        Verdict {
            value: true,
            vacuous: true,
            method: method.into(),
            witness: None,
        }
    }
}

/// `R_𝔪` with its ideal lattice and a base-ring preimage for each element.
pub struct LocalPiece {
    pub maximal: Ideal,
    pub loc: LocalizedRing,
    pub lattice: IdealLattice,
    preimage: Vec<usize>,
}

impl LocalPiece {
    /// Least base element mapping to `x`.
    pub fn base_of(&self, x: usize) -> usize {
        self.preimage[x]
    }

    pub fn image(&self, a: usize) -> usize {
        self.loc.canonical.apply(a)
    }
}

pub fn local_pieces(ring: &Ring, budget: &Budget) -> Result<Vec<LocalPiece>> {
    let lat = IdealLattice::new(ring, budget)?;
    let spec = spectrum_of_lattice(&lat)?;
    spec.maximals
        .iter()
        .map(|m| {
            let loc = localize_at_prime(m, budget)?;
            let lattice = IdealLattice::new(&loc.carrier, budget)?;
            let mut preimage = vec![usize::MAX; loc.carrier.size()];
            for a in ring.elements().rev() {
                preimage[loc.canonical.apply(a)] = a;
            }
            if preimage.contains(&usize::MAX) {
                return Err(RingError::Defect("R → R_𝔪 is not onto".into()));
            }
            Ok(LocalPiece {
                maximal: m.clone(),
                loc,
                lattice,
                preimage,
            })
        })
        .collect()
}

fn at(m: &Ideal) -> String {
    format!("at 𝔪 = {m}")
}

/// First base pair `(a, b)`, `a < b`, whose images violate `bad`.
fn first_bad_pair(
    ring: &Ring,
    piece: &LocalPiece,
    bad: impl Fn(usize, usize) -> bool,
) -> Option<(usize, usize)> {
    for a in ring.elements() {
        for b in a..ring.size() {
            if bad(piece.image(a), piece.image(b)) {
                return Some((a, b));
            }
        }
    }
    None
}

/// (P3): every `R_𝔪` is a chain ring. Cross-checked against "every ideal is
/// principal in every `R_𝔪`".
pub fn is_arithmetical(ring: &Ring, budget: &Budget) -> Result<Verdict> {
    let pieces = local_pieces(ring, budget)?;
    arithmetical_on(ring, &pieces, budget)
}

fn arithmetical_on(ring: &Ring, pieces: &[LocalPiece], budget: &Budget) -> Result<Verdict> {
    if ring.is_zero_ring() {
        return Ok(Verdict::vacuous("no maximal ideals"));
    }
    let mut main = None;
    for piece in pieces {
        if piece.lattice.chain_witness().is_some() {
            let lat = &piece.lattice;
            let (a, b) = first_bad_pair(ring, piece, |x, y| {
                !lat.comparable(lat.principal(x), lat.principal(y))
            })
            .expect("a chain witness exists among principal ideals");
            main = Some(Witness::elements(
                ring,
                format!("incomparable principal ideals {}", at(&piece.maximal)),
                &[a, b],
            ));
            break;
        }
    }
    let base = IdealLattice::new(ring, budget)?;
    let mut oracle = true;
    'outer: for piece in pieces {
        for i in base.ideals() {
            let ext = piece.loc.canonical.extend_ideal(&i)?;
            let id = piece.lattice.id_of_ideal(&ext)?;
            if !piece.loc.carrier.elements().any(|x| piece.lattice.principal(x) == id) {
                oracle = false;
                break 'outer;
            }
        }
    }
    if oracle != main.is_none() {
        return Err(RingError::Defect(format!(
            "arithmetical test on {}: chain rings {}, locally principal {oracle}",
            ring.provenance(),
            main.is_none()
        )));
    }
    let method = "ideals of each R_𝔪 totally ordered; oracle: every ideal locally principal";
    Ok(match main {
        None => Verdict::holds(method),
        Some(w) => Verdict::fails(method, w),
    })
}

/// (P2): every `R_𝔪` is a valuation domain, i.e. a field here. The
/// definitional test (domain with totally ordered ideals) must agree with the
/// field test.
pub fn has_wgd_le_1(ring: &Ring, budget: &Budget) -> Result<Verdict> {
    let pieces = local_pieces(ring, budget)?;
    wgd_on(ring, &pieces)
}

fn wgd_on(ring: &Ring, pieces: &[LocalPiece]) -> Result<Verdict> {
    if ring.is_zero_ring() {
        return Ok(Verdict::vacuous("no maximal ideals"));
    }
    let mut witness = None;
    for piece in pieces {
        let l = &piece.loc.carrier;
        let field = !l.is_zero_ring() && l.elements().all(|x| x == l.zero() || l.is_unit(x));
        let zd = l.elements().find(|&x| {
            x != l.zero() && l.elements().any(|y| y != l.zero() && l.mul(x, y) == l.zero())
        });
        let domain = !l.is_zero_ring() && zd.is_none();
        let valuation = domain && piece.lattice.chain_witness().is_none();
        if field != valuation {
            return Err(RingError::Defect(format!(
                "{} {}: field {field}, valuation domain {valuation}",
                ring.provenance(),
                at(&piece.maximal)
            )));
        }
        if !field && witness.is_none() {
            let x = zd.expect("a finite local non-field has a nonzero zerodivisor");
            witness = Some(Witness::elements(
                ring,
                format!("zerodivisor in the localization {}", at(&piece.maximal)),
                &[piece.base_of(x)],
            ));
        }
    }
    let method = "each R_𝔪 a valuation domain, cross-checked with the field test";
    Ok(match witness {
        None => Verdict::holds(method),
        Some(w) => Verdict::fails(method, w),
    })
}

/// Coherence holds for every finite ring: it is Noetherian.
pub fn is_coherent(_ring: &Ring) -> Verdict {
    Verdict::holds("finite ⇒ Noetherian ⇒ coherent")
}

/// (P1): coherent with w.gl.dim ≤ 1; the oracle asks every ideal to be
/// locally zero or free of rank one.
pub fn is_semihereditary(ring: &Ring, budget: &Budget) -> Result<Verdict> {
    let pieces = local_pieces(ring, budget)?;
    let wgd = wgd_on(ring, &pieces)?;
    semihereditary_on(ring, &pieces, &wgd, budget)
}

fn semihereditary_on(
    ring: &Ring,
    pieces: &[LocalPiece],
    wgd: &Verdict,
    budget: &Budget,
) -> Result<Verdict> {
    if ring.is_zero_ring() {
        return Ok(Verdict::vacuous("no maximal ideals"));
    }
    let main = is_coherent(ring).value && wgd.value;
    let base = IdealLattice::new(ring, budget)?;
    let mut failure = None;
    'outer: for piece in pieces {
        let l = &piece.loc.carrier;
        for i in base.ideals() {
            let ext = piece.loc.canonical.extend_ideal(&i)?;
            if ext.is_zero() {
                continue;
            }
            let id = piece.lattice.id_of_ideal(&ext)?;
            let free = l
                .elements()
                .any(|x| piece.lattice.principal(x) == id && l.annihilator(x).count_ones(..) == 1);
            if !free {
                failure = Some((i, piece.maximal.clone()));
                break 'outer;
            }
        }
    }
    if main != failure.is_none() {
        return Err(RingError::Defect(format!(
            "semihereditary test on {}: coherent ∧ wgd {main}, locally free {}",
            ring.provenance(),
            failure.is_none()
        )));
    }
    let method = "coherent ∧ w.gl.dim ≤ 1; oracle: ideals locally 0 or free of rank 1";
    Ok(match failure {
        None => Verdict::holds(method),
        Some((i, m)) => Verdict::fails(
            method,
            Witness::ideals(format!("not projective {}", at(&m)), &[&i]),
        ),
    })
}

/// Criterion verdict for (P4): the two-generator test on every `R_𝔪`.
pub fn gauss_criterion(ring: &Ring, budget: &Budget) -> Result<Verdict> {
    let pieces = local_pieces(ring, budget)?;
    Ok(gauss_criterion_on(ring, &pieces))
}

fn gauss_criterion_on(ring: &Ring, pieces: &[LocalPiece]) -> Verdict {
    if ring.is_zero_ring() {
        return Verdict::vacuous("no maximal ideals");
    }
    let method = "two-generator criterion on each R_𝔪";
    for piece in pieces {
        let lat = &piece.lattice;
        if let Some((a, b)) = first_bad_pair(ring, piece, |x, y| {
            !gauss::criterion_holds(lat, x, y) || !gauss::criterion_holds(lat, y, x)
        }) {
            return Verdict::fails(
                method,
                Witness::elements(
                    ring,
                    format!("(a,b)² is neither (a²) nor (b²) or fails the ab = 0 clause {}", at(&piece.maximal)),
                    &[a, b],
                ),
            );
        }
    }
    Verdict::holds(method)
}

/// (P4) with the bounded oracle as cross-check. Returns the verdict and the
/// oracle run.
pub fn is_gauss(ring: &Ring, degree: usize, budget: &Budget) -> Result<(Verdict, GaussOracle)> {
    let pieces = local_pieces(ring, budget)?;
    let lat = IdealLattice::new(ring, budget)?;
    gauss_on(ring, &pieces, &lat, degree, budget)
}

fn gauss_on(
    ring: &Ring,
    pieces: &[LocalPiece],
    lat: &IdealLattice,
    degree: usize,
    budget: &Budget,
) -> Result<(Verdict, GaussOracle)> {
    let mut verdict = gauss_criterion_on(ring, pieces);
    let oracle = gauss_oracle(ring, lat, degree, !verdict.value, budget)?;
    let refuted = oracle.refutation.is_some();
    if verdict.value == refuted {
        return Err(RingError::Defect(format!(
            "Gauss criterion says {} but the degree-{} oracle {} on {}",
            verdict.value,
            oracle.degree,
            if refuted { "refutes" } else { "finds no refutation" },
            ring.provenance()
        )));
    }
    verdict.method = format!(
        "{}; oracle agrees at degree {}{}",
        verdict.method,
        oracle.degree,
        if oracle.reduced { " (reduced from the requested degree)" } else { "" }
    );
    Ok((verdict, oracle))
}

/// `(verdict, variants)` for (P5) on the ring itself.
pub fn is_locally_prufer(ring: &Ring, budget: &Budget) -> Result<Verdict> {
    let pieces = local_pieces(ring, budget)?;
    let global = is_prufer(ring, budget)?;
    locally_prufer_on(ring, &pieces, &global, budget)
}

fn locally_prufer_on(
    ring: &Ring,
    pieces: &[LocalPiece],
    global: &PruferReport,
    budget: &Budget,
) -> Result<Verdict> {
    if ring.is_zero_ring() {
        return Ok(Verdict::vacuous("no maximal ideals"));
    }
    for piece in pieces {
        let r = prufer::prufer_on(&piece.lattice, budget)?;
        if !r.verdict {
            return Ok(Verdict::fails(
                "is_prufer on each R_𝔪",
                Witness::ideals("localization is not Prüfer", &[&piece.maximal]),
            ));
        }
    }
    if !global.verdict {
        return Err(RingError::Defect(format!(
            "{} is locally Prüfer but not Prüfer",
            ring.provenance()
        )));
    }
    Ok(Verdict::holds("is_prufer on each R_𝔪"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub p1_semihereditary: Verdict,
    pub p2_wgd_le_1: Verdict,
    pub p3_arithmetical: Verdict,
    pub p4_gauss: Verdict,
    pub p5_prufer: Verdict,
    pub locally_prufer: Verdict,
    pub total_ring_of_fractions: Verdict,
    pub local: Verdict,
    pub chain_ring: Verdict,
    pub coherent: Verdict,
}

impl Verdicts {
    pub const NAMES: [&'static str; 10] = [
        "p1_semihereditary",
        "p2_wgd_le_1",
        "p3_arithmetical",
        "p4_gauss",
        "p5_prufer",
        "locally_prufer",
        "total_ring_of_fractions",
        "local",
        "chain_ring",
        "coherent",
    ];

    pub fn get(&self, name: &str) -> Option<&Verdict> {
        self.named().into_iter().find(|(n, _)| *n == name).map(|(_, v)| v)
    }

    /// `(name, verdict)` in report order.
    pub fn named(&self) -> [(&'static str, &Verdict); 10] {
        [
            ("p1_semihereditary", &self.p1_semihereditary),
            ("p2_wgd_le_1", &self.p2_wgd_le_1),
            ("p3_arithmetical", &self.p3_arithmetical),
            ("p4_gauss", &self.p4_gauss),
            ("p5_prufer", &self.p5_prufer),
            ("locally_prufer", &self.locally_prufer),
            ("total_ring_of_fractions", &self.total_ring_of_fractions),
            ("local", &self.local),
            ("chain_ring", &self.chain_ring),
            ("coherent", &self.coherent),
        ]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub ring: String,
    pub size: usize,
    pub zero_ring: bool,
    pub maximal_ideals: Vec<String>,
    pub verdicts: Verdicts,
    pub prufer_variants: PruferReport,
    pub gauss_oracle: GaussOracle,
}

impl ClassificationReport {
    /// The P1..P5 verdicts in order.
    pub fn hierarchy(&self) -> [bool; 5] {
        let v = &self.verdicts;
        [
            v.p1_semihereditary.value,
            v.p2_wgd_le_1.value,
            v.p3_arithmetical.value,
            v.p4_gauss.value,
            v.p5_prufer.value,
        ]
    }
}

fn hierarchy_defect(ring: &Ring, v: &Verdicts) -> Option<String> {
    let implications = [
        ("P1 ⇒ P2", &v.p1_semihereditary, &v.p2_wgd_le_1),
        ("P2 ⇒ P3", &v.p2_wgd_le_1, &v.p3_arithmetical),
        ("P3 ⇒ P4", &v.p3_arithmetical, &v.p4_gauss),
        ("P4 ⇒ P5", &v.p4_gauss, &v.p5_prufer),
        ("P4 ⇒ locally Prüfer", &v.p4_gauss, &v.locally_prufer),
        ("locally Prüfer ⇒ P5", &v.locally_prufer, &v.p5_prufer),
    ];
    for (name, a, b) in implications {
        if a.value && !b.value {
            return Some(format!("{name} fails on {}", ring.provenance()));
        }
    }
    if v.p1_semihereditary.value != v.p2_wgd_le_1.value {
        return Some(format!("P1 and P2 differ on the finite ring {}", ring.provenance()));
    }
    None
}

/// All ten verdicts with witnesses. Hierarchy violations are defects.
pub fn classify(ring: &Ring, degree: usize, budget: &Budget) -> Result<ClassificationReport> {
    let lat = IdealLattice::new(ring, budget)?;
    let spec = spectrum_of_lattice(&lat)?;
    let pieces = local_pieces(ring, budget)?;

    let prufer = prufer::prufer_on(&lat, budget)?;
    let p5 = if ring.is_zero_ring() {
        Verdict::vacuous("no regular proper ideals")
    } else {
        Verdict::holds("invertibility in Tot(R), distributivity, RTOP at each maximal")
    };
    let wgd = wgd_on(ring, &pieces)?;
    let semi = semihereditary_on(ring, &pieces, &wgd, budget)?;
    let arith = arithmetical_on(ring, &pieces, budget)?;
    let (gauss, oracle) = gauss_on(ring, &pieces, &lat, degree, budget)?;
    let loc_prufer = locally_prufer_on(ring, &pieces, &prufer, budget)?;
    is_total_ring_of_fractions(ring, budget)?;
    let total = if ring.is_zero_ring() {
        Verdict::vacuous("every element is a unit")
    } else {
        Verdict::holds("non-units are zerodivisors; R → Tot(R) bijective")
    };
    let local = if ring.is_zero_ring() {
        Verdict::vacuous("no maximal ideals")
    } else if spec.is_local() {
        Verdict::holds("one maximal ideal")
    } else {
        Verdict::fails(
            "one maximal ideal",
            Witness::ideals("two maximal ideals", &[&spec.maximals[0], &spec.maximals[1]]),
        )
    };
    let chain = match lat.chain_witness() {
        None if ring.is_zero_ring() => Verdict::vacuous("single ideal"),
        None => Verdict::holds("ideal lattice is a chain"),
        Some((x, y)) => Verdict::fails(
            "ideal lattice is a chain",
            Witness::elements(ring, "incomparable principal ideals", &[x, y]),
        ),
    };
    let mut coherent = is_coherent(ring);
    if ring.is_zero_ring() {
        coherent.vacuous = true;
    }

    let verdicts = Verdicts {
        p1_semihereditary: semi,
        p2_wgd_le_1: wgd,
        p3_arithmetical: arith,
        p4_gauss: gauss,
        p5_prufer: p5,
        locally_prufer: loc_prufer,
        total_ring_of_fractions: total,
        local,
        chain_ring: chain,
        coherent,
    };
    if let Some(why) = hierarchy_defect(ring, &verdicts) {
        return Err(RingError::Defect(why));
    }
    Ok(ClassificationReport {
        ring: ring.provenance().to_string(),
        size: ring.size(),
        zero_ring: ring.is_zero_ring(),
        maximal_ideals: spec.maximals.iter().map(|m| m.to_string()).collect(),
        verdicts,
        prufer_variants: prufer,
        gauss_oracle: oracle,
    })
}

/// `R1 × R2` satisfies each of P1..P5 and local Prüferness iff both factors do.
#[derive(Debug, Clone, Serialize)]
pub struct ProductConsistency {
    pub consistent: bool,
    pub mismatches: Vec<String>,
}

pub fn product_consistency_check(
    r1: &Ring,
    r2: &Ring,
    degree: usize,
    budget: &Budget,
) -> Result<ProductConsistency> {
    let prod = crate::construct::mk_product(r1, r2, budget)?.ring;
    let c1 = classify(r1, degree, budget)?;
    let c2 = classify(r2, degree, budget)?;
    let cp = classify(&prod, degree, budget)?;
    Ok(product_consistency(&c1, &c2, &cp))
}

pub fn product_consistency(
    c1: &ClassificationReport,
    c2: &ClassificationReport,
    cp: &ClassificationReport,
) -> ProductConsistency {
    let mut mismatches = Vec::new();
    let names = c1.verdicts.named();
    let (n2, np) = (c2.verdicts.named(), cp.verdicts.named());
    for k in 0..6 {
        let expect = names[k].1.value && n2[k].1.value;
        if np[k].1.value != expect {
            mismatches.push(format!(
                "{}: product {} but factors {} and {}",
                names[k].0,
                np[k].1.value,
                names[k].1.value,
                n2[k].1.value
            ));
        }
    }
    ProductConsistency {
        consistent: mismatches.is_empty(),
        mismatches,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalg::duplication;
    use crate::construct::{mk_product, mk_truncated_poly, mk_zmod};

    const B: Budget = Budget::DEFAULT;

    fn vector(r: &ClassificationReport) -> Vec<bool> {
        r.verdicts.named().iter().map(|(_, v)| v.value).collect()
    }

    #[test]
    fn z6_all_true() {
        let z6 = mk_zmod(6, &B).unwrap();
        let r = classify(&z6, 2, &B).unwrap();
        assert!(vector(&r)[..7].iter().all(|&v| v));
        assert!(!r.verdicts.local.value);
        assert!(!r.verdicts.chain_ring.value);
    }

    #[test]
    fn z4_vector_and_witness() {
        let z4 = mk_zmod(4, &B).unwrap();
        let r = classify(&z4, 2, &B).unwrap();
        assert_eq!(r.hierarchy(), [false, false, true, true, true]);
        let w = r.verdicts.p2_wgd_le_1.witness.as_ref().unwrap();
        assert_eq!(w.items, vec!["2"]);
    }

    #[test]
    fn dup_z4_gauss_not_arithmetical() {
        let z4 = mk_zmod(4, &B).unwrap();
        let am = duplication(&Ideal::generate(&z4, &[2]).unwrap(), &B).unwrap();
        let r = classify(&am.carrier, 2, &B).unwrap();
        assert_eq!(r.hierarchy(), [false, false, false, true, true]);
        let w = r.verdicts.p3_arithmetical.witness.as_ref().unwrap();
        assert_eq!(w.items, vec!["[0,2]", "[2,0]"]);
    }

    #[test]
    fn r63_not_gauss() {
        let r63 = mk_truncated_poly(2, 2, 3, &B).unwrap();
        let (v, oracle) = is_gauss(&r63, 2, &B).unwrap();
        assert!(!v.value);
        assert_eq!(v.witness.unwrap().items, vec!["u", "v"]);
        assert_eq!(oracle.degree, 1);
        assert!(oracle.refutation.is_some());
    }

    #[test]
    fn zero_ring_vacuous() {
        let z1 = mk_zmod(1, &B).unwrap();
        let r = classify(&z1, 2, &B).unwrap();
        assert!(r.verdicts.named().iter().all(|(_, v)| v.value && v.vacuous));
    }

    #[test]
    fn products() {
        let z2 = mk_zmod(2, &B).unwrap();
        let z3 = mk_zmod(3, &B).unwrap();
        let z4 = mk_zmod(4, &B).unwrap();
        assert!(product_consistency_check(&z2, &z3, 2, &B).unwrap().consistent);
        assert!(product_consistency_check(&z4, &z2, 2, &B).unwrap().consistent);
        let z1 = mk_zmod(1, &B).unwrap();
        assert!(product_consistency_check(&z4, &z1, 2, &B).unwrap().consistent);
        let p = mk_product(&z4, &z2, &B).unwrap().ring;
        assert!(is_locally_prufer(&p, &B).unwrap().value);
    }
}
