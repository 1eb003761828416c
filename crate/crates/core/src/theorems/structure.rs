use std::collections::BTreeSet;

use crate::amalg::{
    fiberproduct_identity_check, is_local_amalg, localize_amalg_at_prime, quotient_isos_check,
    spectrum_transfer as transfer, PrimeKind,
};
use crate::classify::product_consistency;
use crate::error::Result;
use crate::ideal::oracle::ideals_by_subgroup_filter;
use crate::lattice::all_ideals;
use crate::spectrum::spectrum;
use crate::syntax::read_one;

use super::{Context, InstanceOutcome};

pub(super) fn quotient_isos(ctx: &Context, id: &str) -> Result<Vec<InstanceOutcome>> {
    let checks = quotient_isos_check(ctx.amalg(id), &ctx.budget)?;
    Ok(checks.iter().map(|c| InstanceOutcome::from_check(id, c)).collect())
}

pub(super) fn fiber_identity(ctx: &Context, id: &str) -> Result<Vec<InstanceOutcome>> {
    let (_, check) = fiberproduct_identity_check(ctx.amalg(id), &ctx.budget)?;
    Ok(vec![InstanceOutcome::from_check(id, &check)])
}

pub(super) fn spectrum_transfer(ctx: &Context, id: &str) -> Result<Vec<InstanceOutcome>> {
    let t = transfer(ctx.amalg(id), &ctx.budget)?;
    let mut out: Vec<InstanceOutcome> = t.checks.iter().map(|c| InstanceOutcome::from_check(id, c)).collect();
    if let Some(o) = out.last_mut() {
        o.note = format!("Max partition lift {} / bar {}; {}", t.max_lifts, t.max_bars, o.note);
    }
    Ok(out)
}

pub(super) fn localization_isos(ctx: &Context, id: &str) -> Result<Vec<InstanceOutcome>> {
    let am = ctx.amalg(id);
    let spec = spectrum(&am.carrier, &ctx.budget)?;
    let mut out = Vec::new();
    for p in &spec.primes {
        let r = localize_amalg_at_prime(am, p, &ctx.budget)?;
        let kind = match &r.kind {
            PrimeKind::Lift(q) => format!("lift of {q}"),
            PrimeKind::Bar(q) => format!("bar of {q}"),
        };
        let failed: Vec<&str> = r.checks.iter().filter(|c| !c.ok).map(|c| c.name.as_str()).collect();
        let note = if failed.is_empty() {
            format!("{} checks", r.checks.len())
        } else {
            format!("failed: {}", failed.join("; "))
        };
        let mut o = InstanceOutcome::concluded(id, format!("at {p} ({kind})"), r.ok(), note);
        if r.zero_branch {
            o = o.tag("zero-ring branch B_S = 0 exercised");
        }
        out.push(o);
    }
    Ok(out)
}

pub(super) fn locality(ctx: &Context, id: &str) -> Result<Vec<InstanceOutcome>> {
    let r = is_local_amalg(ctx.amalg(id), &ctx.budget)?;
    Ok(vec![InstanceOutcome::from_check(id, &r.check)])
}

pub(super) fn hierarchy(ctx: &Context, id: &str) -> Result<Vec<InstanceOutcome>> {
    let c = ctx.classification(ctx.ring(id))?;
    let bits: String = c.hierarchy().iter().map(|&b| if b { 'T' } else { 'F' }).collect();
    let mut out = vec![InstanceOutcome::concluded(id, "P1..P5 implications", true, format!("P1..P5 = {bits}"))];
    let entry = ctx.catalog.entry(id).expect("catalog entry");
    if !entry.expected.is_empty() {
        let bad: Vec<String> = entry
            .expected
            .iter()
            .filter_map(|(k, want)| {
                let got = c.verdicts.get(k).expect("validated verdict name").value;
                (got != *want).then(|| format!("{k}: expected {want}, computed {got}"))
            })
            .collect();
        out.push(InstanceOutcome::concluded(
            id,
            "pre-registered verdicts",
            bad.is_empty(),
            if bad.is_empty() {
                format!("{} verdicts match", entry.expected.len())
            } else {
                bad.join("; ")
            },
        ));
    }
    Ok(out)
}

pub(super) fn products(ctx: &Context, id: &str) -> Result<Vec<InstanceOutcome>> {
    let r = ctx.ring(id);
    let e = read_one(r.provenance()).expect("provenance is an expression");
    let parts = e.list().expect("product expression");
    let c1 = ctx.classification_of_expr(&parts[1].to_string())?;
    let c2 = ctx.classification_of_expr(&parts[2].to_string())?;
    let cp = ctx.classification(r)?;
    let pc = product_consistency(&c1, &c2, &cp);
    Ok(vec![InstanceOutcome::concluded(
        id,
        "factorwise verdicts",
        pc.consistent,
        if pc.consistent {
            format!("{} × {}", c1.ring, c2.ring)
        } else {
            pc.mismatches.join("; ")
        },
    )])
}

pub(super) fn prufer_machinery(ctx: &Context, id: &str) -> Result<Vec<InstanceOutcome>> {
    let c = ctx.classification(ctx.ring(id))?;
    let p = &c.prufer_variants;
    let v = &c.verdicts;
    let ok = p.invertibility
        && p.distributivity
        && p.rtop
        && v.p5_prufer.value
        && v.locally_prufer.value
        && v.total_ring_of_fractions.value;
    let mut o = InstanceOutcome::concluded(
        id,
        "Prüfer variants, locally Prüfer, total ring of fractions",
        ok,
        format!(
            "invertibility {}, distributivity {}, rtop {}, locally Prüfer {}, total {}",
            p.invertibility, p.distributivity, p.rtop, v.locally_prufer.value, v.total_ring_of_fractions.value
        ),
    );
    if c.zero_ring {
        o = o.tag("zero ring: verdicts vacuous");
    }
    Ok(vec![o])
}

pub(super) fn gauss_concordance(ctx: &Context, id: &str) -> Result<Vec<InstanceOutcome>> {
    let c = ctx.classification(ctx.ring(id))?;
    let g = &c.gauss_oracle;
    let mut note = format!(
        "criterion {}; oracle degree {} of {}",
        c.verdicts.p4_gauss.value, g.degree, g.requested_degree
    );
    if let Some((p, q)) = &g.refutation {
        note.push_str(&format!("; refutation p = {p}, g = {q}"));
    }
    let mut o = InstanceOutcome::concluded(id, "criterion = oracle", true, note);
    if g.reduced {
        o = o.tag("oracle degree reduced to fit the pair budget");
    }
    Ok(vec![o])
}

pub(super) fn ideal_oracle(ctx: &Context, id: &str) -> Result<Vec<InstanceOutcome>> {
    let r = ctx.ring(id);
    let cap = ctx.budget.subgroup_oracle_max;
    if r.size() > cap {
        return Ok(vec![InstanceOutcome::skipped(
            id,
            "subgroup filter = closure enumeration",
            format!("{} elements exceed the oracle bound {cap}", r.size()),
        )]);
    }
    let closure: BTreeSet<Vec<usize>> = all_ideals(r, &ctx.budget)?.iter().map(|i| i.member_list()).collect();
    let filtered = ideals_by_subgroup_filter(r);
    let ok = closure == filtered;
    Ok(vec![InstanceOutcome::concluded(
        id,
        "subgroup filter = closure enumeration",
        ok,
        format!("{} ideals by closure, {} by subgroup filter", closure.len(), filtered.len()),
    )])
}
