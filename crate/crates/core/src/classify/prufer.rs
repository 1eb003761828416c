//! Prüfer conditions: invertibility of regular ideals, the distributive
//! identity with a regular factor, and the regular total order property.

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Result, RingError};
use crate::ideal::{additive_closure, Ideal};
use crate::lattice::IdealLattice;
use crate::localize::{localize_at_prime, regularity_scan, total_quotient_ring};
use crate::ring::{ElementSet, Ring};
use crate::spectrum::spectrum_of_lattice;

use super::Witness;

fn regular_ids(lat: &IdealLattice, reg: &ElementSet) -> Vec<bool> {
    (0..lat.len())
        .map(|i| !lat.set(i).is_disjoint(reg))
        .collect()
}

/// RTOP at `p`: for ideals `I, J` with one of them regular, `I_𝔭` and `J_𝔭`
/// are comparable. Returns an offending pair when it fails.
pub fn has_rtop(ring: &Ring, p: &Ideal, budget: &Budget) -> Result<Option<(Ideal, Ideal)>> {
    let lat = IdealLattice::new(ring, budget)?;
    rtop_in(&lat, p, budget)
}

fn rtop_in(lat: &IdealLattice, p: &Ideal, budget: &Budget) -> Result<Option<(Ideal, Ideal)>> {
    let ring = lat.ring();
    let reg = regular_ids(lat, &regularity_scan(ring)?.regular);
    let loc = localize_at_prime(p, budget)?;
    let ext: Vec<Ideal> = lat
        .ideals()
        .iter()
        .map(|i| loc.canonical.extend_ideal(i))
        .collect::<Result<_>>()?;
    for i in 0..lat.len() {
        for j in 0..lat.len() {
            if !(reg[i] || reg[j]) {
                continue;
            }
            if !ext[i].is_subset(&ext[j]) && !ext[j].is_subset(&ext[i]) {
                return Ok(Some((lat.ideal(i), lat.ideal(j))));
            }
        }
    }
    Ok(None)
}

/// The three Prüfer characterizations, each computed on its own.
#[derive(Debug, Clone, Serialize)]
pub struct PruferReport {
    pub verdict: bool,
    /// Every regular ideal is invertible as a fractional ideal of `Tot(R)`.
    pub invertibility: bool,
    /// `𝔞(𝔟∩𝔠) = 𝔞𝔟 ∩ 𝔞𝔠` whenever `𝔟` or `𝔠` is regular.
    pub distributivity: bool,
    /// RTOP at every maximal ideal.
    pub rtop: bool,
    pub witness: Option<Witness>,
}

fn invertibility(lat: &IdealLattice, budget: &Budget) -> Result<Option<Ideal>> {
    let ring = lat.ring();
    let tot = total_quotient_ring(ring, budget)?;
    let t = &tot.carrier;
    let canon = &tot.canonical;
    let base = canon.image_set();
    let reg = regularity_scan(ring)?.regular;
    for id in 0..lat.len() {
        if lat.set(id).is_disjoint(&reg) {
            continue;
        }
        let members: Vec<usize> = lat.set(id).ones().map(|i| canon.apply(i)).collect();
        // (R :_Tot I)
        let inverse: Vec<usize> = t
            .elements()
            .filter(|&x| members.iter().all(|&i| base.contains(t.mul(x, i))))
            .collect();
        let products = inverse
            .iter()
            .flat_map(|&x| members.iter().map(move |&i| (x, i)))
            .map(|(x, i)| t.mul(x, i));
        let product = additive_closure(t, products);
        if product != base {
            return Ok(Some(lat.ideal(id)));
        }
    }
    Ok(None)
}

fn distributivity(lat: &IdealLattice, reg: &[bool]) -> Option<(usize, usize, usize)> {
    let n = lat.len();
    for b in 0..n {
        for c in 0..n {
            if !(reg[b] || reg[c]) {
                continue;
            }
            let bc = lat.intersection(b, c);
            for a in 0..n {
                let lhs = lat.product(a, bc);
                let rhs = lat.intersection(lat.product(a, b), lat.product(a, c));
                if lhs != rhs {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

pub fn is_prufer(ring: &Ring, budget: &Budget) -> Result<PruferReport> {
    let lat = IdealLattice::new(ring, budget)?;
    prufer_on(&lat, budget)
}

pub(crate) fn prufer_on(lat: &IdealLattice, budget: &Budget) -> Result<PruferReport> {
    let ring = lat.ring();
    let reg = regular_ids(lat, &regularity_scan(ring)?.regular);
    let inv = invertibility(lat, budget)?;
    let dist = distributivity(lat, &reg);
    let spec = spectrum_of_lattice(lat)?;
    let mut rtop_fail = None;
    for m in &spec.maximals {
        if let Some(w) = rtop_in(lat, m, budget)? {
            rtop_fail = Some((m.clone(), w));
            break;
        }
    }
    let variants = [inv.is_none(), dist.is_none(), rtop_fail.is_none()];
    if variants.iter().any(|&v| v != variants[0]) {
        return Err(RingError::Defect(format!(
            "Prüfer variants disagree on {}: invertibility {}, distributivity {}, rtop {}",
            ring.provenance(),
            variants[0],
            variants[1],
            variants[2]
        )));
    }
    if !variants[0] {
        return Err(RingError::Defect(format!(
            "{} is not Prüfer although every regular ideal of a finite ring is the unit ideal",
            ring.provenance()
        )));
    }
    let witness = inv.map(|i| Witness::ideals("non-invertible regular ideal", &[&i]));
    Ok(PruferReport {
        verdict: variants[0],
        invertibility: variants[0],
        distributivity: variants[1],
        rtop: variants[2],
        witness,
    })
}

/// Every non-unit is a zerodivisor, and `R → Tot(R)` is bijective.
pub fn is_total_ring_of_fractions(ring: &Ring, budget: &Budget) -> Result<bool> {
    let scan = regularity_scan(ring)?;
    let definitional = ring
        .elements()
        .all(|x| scan.units.contains(x) || scan.zerodivisors.contains(x));
    let via_tot = total_quotient_ring(ring, budget)?.canonical.is_bijective();
    if definitional != via_tot || !definitional {
        return Err(RingError::Defect(format!(
            "total-ring test on {}: non-units are zerodivisors {definitional}, R ≅ Tot(R) {via_tot}",
            ring.provenance()
        )));
    }
    Ok(true)
}
