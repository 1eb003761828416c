//! Ideals as membership sets, with generation and ideal arithmetic.

use std::fmt;

use crate::error::{Result, RingError};
use crate::ring::{same_ring, ElementSet, FiniteRing, Ring};

#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    members: ElementSet,
    generators: Vec<usize>,
}

/// Grows the subgroup `group` to the subgroup generated by `group ∪ {g}`.
pub(crate) fn extend_subgroup(ring: &FiniteRing, group: &mut ElementSet, g: usize) {
    if group.contains(g) {
        return;
    }
    let base: Vec<usize> = group.ones().collect();
    let mut multiple = g;
    while !group.contains(multiple) {
        for &h in &base {
            group.insert(ring.add(h, multiple));
        }
        multiple = ring.add(multiple, g);
    }
}

/// Smallest additive subgroup containing `seeds`.
pub fn additive_closure(ring: &FiniteRing, seeds: impl IntoIterator<Item = usize>) -> ElementSet {
    let mut group = ring.set_of([ring.zero()]);
    for s in seeds {
        extend_subgroup(ring, &mut group, s);
    }
    group
}

/// The principal ideal `xR` as a set.
pub fn principal_set(ring: &FiniteRing, x: usize) -> ElementSet {
    ring.set_of(ring.elements().map(|r| ring.mul(r, x)))
}

/// Closure of `gens` under ambient multiplication and addition.
pub fn generated_set(ring: &FiniteRing, gens: &[usize]) -> ElementSet {
    let mut group = ring.set_of([ring.zero()]);
    for &g in gens {
        if group.contains(g) {
            continue;
        }
        for r in ring.elements() {
            extend_subgroup(ring, &mut group, ring.mul(r, g));
        }
    }
    group
}

pub(crate) fn is_ideal_set(ring: &FiniteRing, set: &ElementSet) -> Option<String> {
    if !set.contains(ring.zero()) {
        return Some("does not contain 0".into());
    }
    let members: Vec<usize> = set.ones().collect();
    for &x in &members {
        for &y in &members {
            if !set.contains(ring.add(x, y)) {
                return Some(format!(
                    "{} + {} leaves the set",
                    ring.name(x),
                    ring.name(y)
                ));
            }
        }
        for r in ring.elements() {
            if !set.contains(ring.mul(r, x)) {
                return Some(format!(
                    "{} * {} leaves the set",
                    ring.name(r),
                    ring.name(x)
                ));
            }
        }
    }
    None
}

/// Greedy smallest-index-first generator extraction.
fn recover_generators(ring: &FiniteRing, members: &ElementSet) -> Vec<usize> {
    let mut span = ring.set_of([ring.zero()]);
    let mut gens = Vec::new();
    for x in members.ones() {
        if !span.contains(x) {
            gens.push(x);
            span = generated_set(ring, &gens);
        }
    }
    gens
}

impl Ideal {
    /// The smallest ideal containing `gens`.
    pub fn generate(ring: &Ring, gens: &[usize]) -> Result<Ideal> {
        if let Some(&bad) = gens.iter().find(|&&g| g >= ring.size()) {
            return Err(RingError::InvalidParameter(format!(
                "generator index {bad} out of range"
            )));
        }
        Ok(Ideal {
            ring: ring.clone(),
            members: generated_set(ring, gens),
            generators: gens.to_vec(),
        })
    }

    /// Wraps a membership set after checking closure; generators are recovered.
    pub fn from_members(ring: &Ring, members: ElementSet) -> Result<Ideal> {
        if members.len() != ring.size() {
            return Err(RingError::NotAnIdeal("membership set has wrong length".into()));
        }
        if let Some(why) = is_ideal_set(ring, &members) {
            return Err(RingError::NotAnIdeal(format!(
                "{} {why}",
                ring.format_set(&members)
            )));
        }
        let generators = recover_generators(ring, &members);
        Ok(Ideal {
            ring: ring.clone(),
            members,
            generators,
        })
    }

    /// Wraps a set already known to be an ideal (closure is not re-checked).
    pub(crate) fn from_trusted(ring: &Ring, members: ElementSet) -> Ideal {
        debug_assert!(is_ideal_set(ring, &members).is_none());
        let generators = recover_generators(ring, &members);
        Ideal {
            ring: ring.clone(),
            members,
            generators,
        }
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal {
            ring: ring.clone(),
            members: ring.set_of([ring.zero()]),
            generators: Vec::new(),
        }
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal {
            ring: ring.clone(),
            members: ring.full_set(),
            generators: vec![ring.one()],
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn member_list(&self) -> Vec<usize> {
        self.members.ones().collect()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 1
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.contains(self.ring.one())
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit_ideal()
    }

    fn check_same(&self, other: &Ideal) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(RingError::RingMismatch(format!(
                "ideals of {} and {}",
                self.ring.provenance(),
                other.ring.provenance()
            )))
        }
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        same_ring(&self.ring, &other.ring) && self.members.is_subset(&other.members)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let mut group = self.members.clone();
        for g in other.members.ones() {
            extend_subgroup(&self.ring, &mut group, g);
        }
        Ok(Ideal::from_trusted(&self.ring, group))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let r = &self.ring;
        let mut group = r.set_of([r.zero()]);
        for x in self.members.ones() {
            for y in other.members.ones() {
                extend_subgroup(r, &mut group, r.mul(x, y));
            }
        }
        Ok(Ideal::from_trusted(r, group))
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let mut m = self.members.clone();
        m.intersect_with(&other.members);
        Ok(Ideal::from_trusted(&self.ring, m))
    }

    /// `(self : other) = {x : x·other ⊆ self}`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let r = &self.ring;
        let m = r.set_of(
            r.elements()
                .filter(|&x| other.members.ones().all(|y| self.contains(r.mul(x, y)))),
        );
        Ok(Ideal::from_trusted(r, m))
    }

    /// Radical membership: `x` with some power in the ideal.
    pub fn radical(&self) -> Ideal {
        let r = &self.ring;
        let m = r.set_of(r.elements().filter(|&x| {
            let mut p = x;
            for _ in 0..=r.size() {
                if self.contains(p) {
                    return true;
                }
                p = r.mul(p, x);
            }
            false
        }));
        Ideal::from_trusted(r, m)
    }
}

/// All four operations at once.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealArith {
    pub sum: Ideal,
    pub product: Ideal,
    pub intersection: Ideal,
    pub colon: Ideal,
}

pub fn ideal_arith(i: &Ideal, j: &Ideal) -> Result<IdealArith> {
    Ok(IdealArith {
        sum: i.sum(j)?,
        product: i.product(j)?,
        intersection: i.intersection(j)?,
        colon: i.colon(j)?,
    })
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.members == other.members
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.format_set(&self.members))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return f.write_str("(0)");
        }
        let g: Vec<&str> = self.generators.iter().map(|&i| self.ring.name(i)).collect();
        write!(f, "({})", g.join(", "))
    }
}

/// Regular-ideal test: returns a regular (non-zerodivisor) member if any.
pub fn regular_witness(ideal: &Ideal) -> Option<usize> {
    let r = ideal.ring();
    ideal.members.ones().find(|&x| {
        r.elements()
            .all(|y| y == r.zero() || r.mul(x, y) != r.zero())
    })
}

/// `is_regular_ideal`: true iff the ideal meets `Reg(R)`. On a finite ring
/// that happens exactly for the unit ideal, which is asserted.
pub fn is_regular_ideal(ideal: &Ideal) -> Result<(bool, Option<usize>)> {
    let w = regular_witness(ideal);
    if w.is_some() != ideal.is_unit_ideal() {
        return Err(RingError::Defect(format!(
            "regular ideal {ideal:?} is not the unit ideal on a finite ring"
        )));
    }
    Ok((w.is_some(), w))
}

/// Exhaustive oracles kept independent of the closure-based main paths.
pub mod oracle {
    use std::collections::{BTreeSet, HashSet};

    use super::{extend_subgroup, is_ideal_set};
    use crate::ring::{ElementSet, FiniteRing};

    /// Every additive subgroup of the ring, found by breadth-first extension.
    pub fn additive_subgroups(ring: &FiniteRing) -> Vec<ElementSet> {
        let start = ring.set_of([ring.zero()]);
        let mut seen: HashSet<ElementSet> = HashSet::from([start.clone()]);
        let mut frontier = vec![start];
        while let Some(h) = frontier.pop() {
            for g in ring.elements() {
                if h.contains(g) {
                    continue;
                }
                let mut k = h.clone();
                extend_subgroup(ring, &mut k, g);
                if seen.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Ideals as the additive subgroups closed under ambient multiplication,
    /// returned as sorted member lists.
    pub fn ideals_by_subgroup_filter(ring: &FiniteRing) -> BTreeSet<Vec<usize>> {
        additive_subgroups(ring)
            .into_iter()
            .filter(|h| is_ideal_set(ring, h).is_none())
            .map(|h| h.ones().collect())
            .collect()
    }
}
