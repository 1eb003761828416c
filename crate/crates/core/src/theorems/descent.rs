use crate::amalg::{fiberproduct_identity_check, localized_data, AmalgamatedRing, FiberProduct};
use crate::classify::gauss::{certified_gauss, decode_code, encode, oracle_degree};
use crate::classify::{gauss_criterion, is_prufer};
use crate::construct::image_ring;
use crate::error::Result;
use crate::ideal::{additive_closure, Ideal};
use crate::lattice::IdealLattice;
use crate::localize::{localize_at_prime, regularity_scan};
use crate::ring::Ring;
use crate::spectrum::{jacobson_of, spectrum};

use super::{CensusRow, Context, InstanceOutcome};

fn is_regular(i: &Ideal) -> Result<bool> {
    Ok(!i.members().is_disjoint(&regularity_scan(i.ring())?.regular))
}

fn is_field(r: &Ring) -> bool {
    !r.is_zero_ring() && r.elements().all(|x| x == r.zero() || r.is_unit(x))
}

fn is_chain(r: &Ring, ctx: &Context) -> Result<bool> {
    Ok(IdealLattice::new(r, &ctx.budget)?.chain_witness().is_none())
}

fn yes(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

pub(super) fn regular_conductor(ctx: &Context, id: &str) -> Result<Vec<InstanceOutcome>> {
    let am = ctx.amalg(id);
    let (a, b) = (am.a(), am.b());
    let (rc, rb) = (is_regular(&am.contraction)?, is_regular(am.ideal())?);
    if !(rc && rb) {
        return Ok(vec![InstanceOutcome::skipped(
            id,
            "Pₙ and local Prüferness biconditionals",
            format!("f⁻¹(𝔟) regular {}, 𝔟 regular {}", yes(rc), yes(rb)),
        )]);
    }
    let mut out = Vec::new();
    let full = am.ideal().is_unit_ideal();
    let product = am.carrier.size() == a.size() * b.size() && am.carrier.same_tables(&am.product.ring);
    out.push(
        InstanceOutcome::concluded(
            id,
            "𝔟 = B and carrier = A × B",
            full && product,
            format!("𝔟 = B {}, carrier = A × B {}", yes(full), yes(product)),
        )
        .degenerate(),
    );
    let (cc, ca, cb) = (ctx.classification(&am.carrier)?, ctx.classification(a)?, ctx.classification(b)?);
    for name in [
        "p1_semihereditary",
        "p2_wgd_le_1",
        "p3_arithmetical",
        "p4_gauss",
        "p5_prufer",
        "locally_prufer",
    ] {
        let lhs = cc.verdicts.get(name).expect("verdict").value;
        let (va, vb) = (
            ca.verdicts.get(name).expect("verdict").value,
            cb.verdicts.get(name).expect("verdict").value,
        );
        let rhs = va && vb && full;
        out.push(
            InstanceOutcome::concluded(
                id,
                format!("{name}: carrier ⟺ A ∧ B ∧ 𝔟 = B"),
                lhs == rhs,
                format!("carrier {}, A {}, B {}", yes(lhs), yes(va), yes(vb)),
            )
            .degenerate(),
        );
    }
    Ok(out)
}

pub(super) fn gauss_retract(ctx: &Context, id: &str) -> Result<Vec<InstanceOutcome>> {
    let am = ctx.amalg(id);
    let (a, c) = (am.a(), &am.carrier);
    let mut out = Vec::new();

    let d = oracle_degree(c.size(), ctx.degree, ctx.budget.gauss_pairs)
        .and_then(|d| oracle_degree(a.size(), d, ctx.budget.gauss_pairs));
    match d {
        None => out.push(InstanceOutcome::skipped(
            id,
            "(a) retraction of certified polynomials",
            "no degree fits the pair budget",
        )),
        Some(d) => {
            let lat_c = IdealLattice::new(c, &ctx.budget)?;
            let lat_a = IdealLattice::new(a, &ctx.budget)?;
            let cert_c = certified_gauss(&lat_c, d, &ctx.budget)?;
            let cert_a = certified_gauss(&lat_a, d, &ctx.budget)?;
            let mut certified = 0usize;
            let mut bad = None;
            for (code, &ok) in cert_c.iter().enumerate() {
                if !ok {
                    continue;
                }
                certified += 1;
                let p = decode_code(code as u64, c.size(), d);
                let image: Vec<usize> = p.iter().map(|&x| am.p_a.apply(x)).collect();
                if !cert_a[encode(&image, a.size()) as usize] && bad.is_none() {
                    bad = Some(p);
                }
            }
            let note = match &bad {
                None => format!(
                    "{certified} of {} carrier polynomials of degree ≤ {d} certified; all images certified over A",
                    cert_c.len()
                ),
                Some(p) => {
                    let names: Vec<&str> = p.iter().map(|&x| c.name(x)).collect();
                    format!("image of the certified polynomial with coefficients [{}] fails over A", names.join(" "))
                }
            };
            let mut o = InstanceOutcome::concluded(id, "(a) retraction of certified polynomials", bad.is_none(), note);
            if certified == 0 {
                o.hypothesis = false;
                o.conclusion = None;
            }
            if d < ctx.degree {
                o = o.tag("retraction check ran below the requested degree");
            }
            out.push(o);
        }
    }

    for (clause, name) in [
        ("(b) carrier Gauss ⟹ A Gauss", "p4_gauss"),
        ("(b) carrier arithmetical ⟹ A arithmetical", "p3_arithmetical"),
    ] {
        let (lhs, rhs) = (ctx.verdict(c, name)?, ctx.verdict(a, name)?);
        out.push(if lhs {
            InstanceOutcome::concluded(id, clause, rhs, format!("A {}", yes(rhs)))
        } else {
            let note = if rhs {
                "carrier fails; A holds (the converse is not claimed)"
            } else {
                "carrier fails"
            };
            InstanceOutcome::skipped(id, clause, note)
        });
    }
    Ok(out)
}

pub(super) fn prufer_descent(ctx: &Context, id: &str) -> Result<Vec<InstanceOutcome>> {
    let am = ctx.amalg(id);
    let (a, b, f) = (am.a(), am.b(), am.f());
    let reg_a = regularity_scan(a)?.regular;
    let reg_b = regularity_scan(b)?.regular;
    let preserved = reg_a.ones().all(|x| reg_b.contains(f.apply(x)));
    let carrier = ctx.verdict(&am.carrier, "p5_prufer")?;
    let clause = "carrier Prüfer ∧ f(Reg A) ⊆ Reg B ⟹ A Prüfer";
    if !(preserved && carrier) {
        return Ok(vec![InstanceOutcome::skipped(
            id,
            clause,
            format!("f(Reg A) ⊆ Reg B {}, carrier Prüfer {}", yes(preserved), yes(carrier)),
        )]);
    }
    let concl = ctx.verdict(a, "p5_prufer")?;
    Ok(vec![InstanceOutcome::concluded(id, clause, concl, format!("A Prüfer {}", yes(concl)))])
}

/// First triple of lattice ids violating `law`.
fn first_violation(lat: &IdealLattice, law: impl Fn(usize, usize, usize) -> bool) -> Option<(usize, usize, usize)> {
    let n = lat.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !law(x, y, z) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

fn product_law(lat: &IdealLattice) -> impl Fn(usize, usize, usize) -> bool + '_ {
    move |a, b, c| lat.product(a, lat.intersection(b, c)) == lat.intersection(lat.product(a, b), lat.product(a, c))
}

fn lattice_law(lat: &IdealLattice) -> impl Fn(usize, usize, usize) -> bool + '_ {
    move |a, b, c| lat.intersection(a, lat.sum(b, c)) == lat.sum(lat.intersection(a, b), lat.intersection(a, c))
}

fn triple(lat: &IdealLattice, (a, b, c): (usize, usize, usize)) -> String {
    format!("({}, {}, {})", lat.ideal(a), lat.ideal(b), lat.ideal(c))
}

pub(super) fn im_reg(ctx: &Context, id: &str) -> Result<Vec<InstanceOutcome>> {
    let phi = ctx.hom(id);
    let clause = "𝔞(𝔟∩𝔠) = 𝔞𝔟 ∩ 𝔞𝔠 on the target";
    let onto = phi.is_surjective();
    let kernel = phi.kernel();
    let regular = is_regular(&kernel)?;
    let prufer = ctx.verdict(phi.source(), "p5_prufer")?;
    if !(onto && regular && prufer) {
        return Ok(vec![InstanceOutcome::skipped(
            id,
            clause,
            format!("onto {}, kernel regular {}, source Prüfer {}", yes(onto), yes(regular), yes(prufer)),
        )]);
    }
    let lat = IdealLattice::new(phi.target(), &ctx.budget)?;
    let bad = first_violation(&lat, product_law(&lat));
    let mut o = InstanceOutcome::concluded(
        id,
        clause,
        bad.is_none(),
        match bad {
            None => format!("{} ideals in the target", lat.len()),
            Some(t) => format!("fails at {}", triple(&lat, t)),
        },
    );
    if kernel.is_unit_ideal() {
        o = o.degenerate().tag("kernel is the whole ring; the target is the zero ring");
    }
    Ok(vec![o])
}

/// Both distributive laws on every ring-like entry, next to its P3 verdict.
pub(super) fn census(ctx: &Context) -> Vec<CensusRow> {
    let mut ids: Vec<&str> = ctx.catalog.rings().map(|(id, _)| id).collect();
    ids.sort();
    ids.into_iter()
        .filter_map(|id| {
            let r = ctx.ring(id);
            let lat = IdealLattice::new(r, &ctx.budget).ok()?;
            let arithmetical = ctx.verdict(r, "p3_arithmetical").ok()?;
            let pbad = first_violation(&lat, product_law(&lat));
            let lbad = first_violation(&lat, lattice_law(&lat));
            let witness = lbad
                .map(|t| format!("𝔞 ∩ (𝔟+𝔠) ≠ 𝔞∩𝔟 + 𝔞∩𝔠 at {}", triple(&lat, t)))
                .or_else(|| pbad.map(|t| format!("𝔞(𝔟∩𝔠) ≠ 𝔞𝔟 ∩ 𝔞𝔠 at {}", triple(&lat, t))));
            Some(CensusRow {
                entry: id.to_string(),
                product_identity: pbad.is_none(),
                lattice_distributive: lbad.is_none(),
                arithmetical,
                witness,
            })
        })
        .collect()
}

pub(super) fn total_sufficiency(ctx: &Context, id: &str) -> Result<Vec<InstanceOutcome>> {
    let am = ctx.amalg(id);
    let (a, b, f, bb) = (am.a(), am.b(), am.f(), am.ideal());
    let a_total = ctx.verdict(a, "total_ring_of_fractions")?;
    let spec_b = spectrum(b, &ctx.budget)?;
    let in_jac = bb.is_subset(&jacobson_of(b, &spec_b.maximals));
    let image = f.image_set();
    let in_image = bb.members().is_subset(&image);
    let reg_a = regularity_scan(a)?.regular;
    let torsion = bb
        .members()
        .ones()
        .all(|beta| reg_a.ones().any(|x| b.mul(f.apply(x), beta) == b.zero()));
    let clause = "carrier is a total ring of fractions";
    let facts = format!(
        "A total {}, 𝔟 ⊆ Jac(B) {}, 𝔟 ⊆ f(A) {}, 𝔟 torsion {}",
        yes(a_total),
        yes(in_jac),
        yes(in_image),
        yes(torsion)
    );
    let concl = ctx.verdict(&am.carrier, "total_ring_of_fractions")?;
    if !(a_total && in_jac && (in_image || torsion)) {
        return Ok(vec![InstanceOutcome::skipped(
            id,
            clause,
            format!("{facts}; carrier total {}", yes(concl)),
        )]);
    }
    let mut o = InstanceOutcome::concluded(id, clause, concl, facts);
    if !in_image && bb.is_zero() {
        o = o.degenerate();
    }
    Ok(vec![o])
}

/// Local data at the maximal ideals that matter for the transfer results.
struct LocalFacts {
    /// `(𝔪, 𝔟_{S_𝔪} = 0, f_𝔪 onto, f⁻¹(𝔟)A_𝔪 ≠ 0)` for `𝔪 ∈ Max(A) ∩ V(f⁻¹(𝔟))`.
    over: Vec<(Ideal, bool, bool, bool)>,
    /// `(𝔫, B_𝔫 chain ring, B_𝔫 field, B_𝔫 ring)` for `𝔫 ∈ Max(B) ∖ V(𝔟)`.
    off: Vec<(Ideal, bool, bool, Ring)>,
}

impl LocalFacts {
    fn new(ctx: &Context, am: &AmalgamatedRing) -> Result<LocalFacts> {
        let spec_a = spectrum(am.a(), &ctx.budget)?;
        let mut over = Vec::new();
        for m in spec_a.maximals.iter().filter(|m| am.contraction.is_subset(m)) {
            let d = localized_data(am, m, &ctx.budget)?;
            over.push((m.clone(), d.b_loc.is_zero(), d.f_p.is_surjective(), !d.contraction_loc.is_zero()));
        }
        let spec_b = spectrum(am.b(), &ctx.budget)?;
        let mut off = Vec::new();
        for n in spec_b.maximals.iter().filter(|n| !am.ideal().is_subset(n)) {
            let loc = localize_at_prime(n, &ctx.budget)?.carrier;
            off.push((n.clone(), is_chain(&loc, ctx)?, is_field(&loc), loc));
        }
        Ok(LocalFacts { over, off })
    }

    fn b_s_zero(&self) -> bool {
        self.over.iter().all(|o| o.1)
    }

    fn side_condition(&self) -> bool {
        self.over.iter().all(|o| o.2 || o.3)
    }

    fn describe_over(&self) -> String {
        if self.over.is_empty() {
            return "no maximal ideal of A contains f⁻¹(𝔟)".into();
        }
        self.over
            .iter()
            .map(|(m, z, s, c)| format!("at {m}: 𝔟_S = 0 {}, f_𝔪 onto {}, f⁻¹(𝔟)A_𝔪 ≠ 0 {}", yes(*z), yes(*s), yes(*c)))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

pub(super) fn b_s_zero(ctx: &Context, id: &str) -> Result<Vec<InstanceOutcome>> {
    let am = ctx.amalg(id);
    let facts = LocalFacts::new(ctx, am)?;
    let c = &am.carrier;
    let carrier_lp = ctx.verdict(c, "locally_prufer")?;
    let carrier_gauss = ctx.verdict(c, "p4_gauss")?;
    let clauses = ["(1) locally Prüfer", "(2) Gauss"];
    if !facts.b_s_zero() {
        let note = format!(
            "{}; carrier locally Prüfer {}, carrier Gauss {}",
            facts.describe_over(),
            yes(carrier_lp),
            yes(carrier_gauss)
        );
        let control = carrier_lp && carrier_gauss;
        return Ok(clauses
            .iter()
            .map(|cl| {
                let o = InstanceOutcome::skipped(id, *cl, note.clone());
                if control {
                    o.tag("negative control: conclusions hold although 𝔟_S ≠ 0")
                } else {
                    o
                }
            })
            .collect());
    }
    let mut b_prufer = true;
    let mut b_gauss = true;
    for (_, _, _, loc) in &facts.off {
        b_prufer &= is_prufer(loc, &ctx.budget)?.verdict;
        b_gauss &= gauss_criterion(loc, &ctx.budget)?.value;
    }
    let a = am.a();
    let mut out = Vec::new();
    for (clause, premise, concl) in [
        (clauses[0], ctx.verdict(a, "locally_prufer")? && b_prufer, carrier_lp),
        (clauses[1], ctx.verdict(a, "p4_gauss")? && b_gauss, carrier_gauss),
    ] {
        let note = format!("{}; premise {}; {} B_𝔫", facts.describe_over(), yes(premise), facts.off.len());
        out.push(if premise {
            InstanceOutcome::concluded(id, clause, concl, note)
        } else {
            InstanceOutcome::skipped(id, clause, note)
        });
    }
    Ok(out)
}

fn fiber_outcome(ctx: &Context, id: &str, clause: &str, fp: &FiberProduct) -> Result<InstanceOutcome> {
    let lhs = is_chain(&fp.carrier, ctx)?;
    let img_b = image_ring(&fp.p_b)?.0;
    let img_a = image_ring(&fp.p_a)?.0;
    let (rho_inj, sigma_inj) = (fp.rho.is_injective(), fp.sigma.is_injective());
    let (chain_b, chain_a) = (is_chain(&img_b, ctx)?, is_chain(&img_a, ctx)?);
    let rhs = (rho_inj && chain_b) || (sigma_inj && chain_a);
    Ok(InstanceOutcome::concluded(
        id,
        clause,
        lhs == rhs,
        format!(
            "D chain {}; ρ injective {}, p_B(D) chain {}; σ injective {}, p_A(D) chain {}",
            yes(lhs),
            yes(rho_inj),
            yes(chain_b),
            yes(sigma_inj),
            yes(chain_a)
        ),
    ))
}

pub(super) fn valfib(ctx: &Context, id: &str) -> Result<Vec<InstanceOutcome>> {
    if let Some(fp) = ctx.fiber(id) {
        return Ok(vec![fiber_outcome(ctx, id, "fiber product", fp)?]);
    }
    let (fp, _) = fiberproduct_identity_check(ctx.amalg(id), &ctx.budget)?;
    Ok(vec![fiber_outcome(ctx, id, "as f̌ ×_{B/𝔟} π", &fp)?])
}

#[derive(Clone, Copy)]
enum Level {
    Arithmetical,
    WeakDimension,
    Semihereditary,
}

fn transfer_check(ctx: &Context, id: &str, level: Level) -> Result<Vec<InstanceOutcome>> {
    let am = ctx.amalg(id);
    let facts = LocalFacts::new(ctx, am)?;
    let (verdict, local_name) = match level {
        Level::Arithmetical => ("p3_arithmetical", "chain ring"),
        Level::WeakDimension => ("p2_wgd_le_1", "valuation domain"),
        Level::Semihereditary => ("p1_semihereditary", "valuation domain"),
    };
    let lhs = ctx.verdict(&am.carrier, verdict)?;
    let a_holds = ctx.verdict(am.a(), verdict)?;
    let locals = facts.off.iter().all(|(_, chain, field, _)| match level {
        Level::Arithmetical => *chain,
        _ => *field,
    });
    let rhs = a_holds && facts.b_s_zero() && locals;
    let mut hypothesis = facts.side_condition();
    let mut extra = String::new();
    if let Level::Semihereditary = level {
        let (gens, ok) = module_generators(am);
        hypothesis &= ok;
        extra = format!("; 𝔟 generated over A by {} elements", gens.len());
    }
    let note = format!(
        "{}{extra}; carrier {}, A {}, every B_𝔫 a {local_name} {} ({} of them)",
        facts.describe_over(),
        yes(lhs),
        yes(a_holds),
        yes(locals),
        facts.off.len()
    );
    let mut out = Vec::new();
    let clause = "biconditional";
    if hypothesis {
        let mut o = InstanceOutcome::concluded(id, clause, lhs == rhs, note.clone());
        if facts.over.is_empty() {
            o = o.tag("no maximal ideal of A contains f⁻¹(𝔟) for some instance");
        }
        out.push(o);
    } else {
        let mut o = InstanceOutcome::skipped(id, clause, note.clone());
        if lhs && !facts.b_s_zero() {
            o = o.tag("negative control: carrier satisfies the property although 𝔟_S ≠ 0");
        }
        out.push(o);
    }
    if !matches!(level, Level::Arithmetical) {
        let clause = "sufficiency";
        out.push(if rhs {
            InstanceOutcome::concluded(id, clause, lhs, note)
        } else {
            InstanceOutcome::skipped(id, clause, note)
        });
    }
    Ok(out)
}

pub(super) fn arithm_sur(ctx: &Context, id: &str) -> Result<Vec<InstanceOutcome>> {
    transfer_check(ctx, id, Level::Arithmetical)
}

pub(super) fn wgldim_sur(ctx: &Context, id: &str) -> Result<Vec<InstanceOutcome>> {
    transfer_check(ctx, id, Level::WeakDimension)
}

pub(super) fn semih_sur(ctx: &Context, id: &str) -> Result<Vec<InstanceOutcome>> {
    transfer_check(ctx, id, Level::Semihereditary)
}

/// Greedy smallest-index-first generators of `𝔟` as an `A`-module via `f`,
/// and whether they span `𝔟`.
fn module_generators(am: &AmalgamatedRing) -> (Vec<usize>, bool) {
    let (a, b, f, bb) = (am.a(), am.b(), am.f(), am.ideal());
    let span_of = |gens: &[usize]| {
        additive_closure(
            b,
            gens.iter()
                .flat_map(|&g| a.elements().map(move |x| b.mul(f.apply(x), g))),
        )
    };
    let mut gens = Vec::new();
    let mut span = b.set_of([b.zero()]);
    for beta in bb.members().ones() {
        if !span.contains(beta) {
            gens.push(beta);
            span = span_of(&gens);
        }
    }
    let ok = &span == bb.members();
    (gens, ok)
}

pub(super) fn finite_embedding(ctx: &Context, id: &str) -> Result<Vec<InstanceOutcome>> {
    let am = ctx.amalg(id);
    let (a, c) = (am.a(), &am.carrier);
    let (gens, spans) = module_generators(am);
    let mut out = Vec::new();
    if !spans {
        out.push(InstanceOutcome::concluded(id, "𝔟 finitely generated", false, "generator extraction failed"));
        return Ok(out);
    }
    let mut module_gens = vec![c.one()];
    for &g in &gens {
        module_gens.push(am.index_of_pair(a.zero(), g).expect("(0, b) lies in the carrier"));
    }
    let span = additive_closure(
        c,
        module_gens
            .iter()
            .flat_map(|&g| a.elements().map(move |x| c.mul(am.iota.apply(x), g))),
    );
    let ok = span.count_ones(..) == c.size();
    let names: Vec<&str> = module_gens.iter().map(|&g| c.name(g)).collect();
    out.push(InstanceOutcome::concluded(
        id,
        "carrier generated over A by (1,1) and (0,bᵢ)",
        ok,
        format!("{{{}}} span {} of {} elements", names.join(", "), span.count_ones(..), c.size()),
    ));
    out.push(
        InstanceOutcome::concluded(
            id,
            "coherence of A and 𝔟 transfers to the carrier",
            ctx.verdict(c, "coherent")?,
            "finite rings are Noetherian, hence coherent",
        )
        .degenerate(),
    );
    Ok(out)
}
