//! Multiplicative sets and rings of fractions.
//!
//! `R_S` is built from raw fraction classes: `(a, s) ~ (a', s')` iff
//! `u(as' − a's) = 0` for some `u ∈ S`. Classes are ordered by their least
//! pair under `a·|S| + i`, where `i` is the position of `s` in `S`.

use std::sync::Arc;

use crate::budget::Budget;
use crate::construct::build_tables;
use crate::error::{budget as over_budget, Result, RingError};
use crate::hom::{mk_hom, RingHom};
use crate::ideal::Ideal;
use crate::ring::{ElementSet, Ring};

#[derive(Clone, Debug)]
pub struct MultiplicativeSet {
    ring: Ring,
    members: ElementSet,
}

impl MultiplicativeSet {
    pub fn new(ring: &Ring, members: ElementSet) -> Result<MultiplicativeSet> {
        if members.len() != ring.size() {
            return Err(RingError::NotMultiplicative("membership set has wrong length".into()));
        }
        if !members.contains(ring.one()) {
            return Err(RingError::NotMultiplicative(format!(
                "{} does not contain 1",
                ring.format_set(&members)
            )));
        }
        for a in members.ones() {
            for b in members.ones() {
                if !members.contains(ring.mul(a, b)) {
                    return Err(RingError::NotMultiplicative(format!(
                        "{}*{} = {} leaves the set",
                        ring.name(a),
                        ring.name(b),
                        ring.name(ring.mul(a, b))
                    )));
                }
            }
        }
        Ok(MultiplicativeSet {
            ring: ring.clone(),
            members,
        })
    }

    /// Multiplicative closure of `gens ∪ {1}`.
    pub fn generated(ring: &Ring, gens: &[usize]) -> Result<MultiplicativeSet> {
        if let Some(&bad) = gens.iter().find(|&&g| g >= ring.size()) {
            return Err(RingError::InvalidParameter(format!(
                "element index {bad} out of range"
            )));
        }
        let mut set = ring.set_of([ring.one()]);
        let mut frontier = vec![ring.one()];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = ring.mul(x, g);
                if !set.contains(y) {
                    set.insert(y);
                    frontier.push(y);
                }
            }
        }
        Ok(MultiplicativeSet {
            ring: ring.clone(),
            members: set,
        })
    }

    /// All divisors of members: `{x : xy ∈ S for some y}`.
    pub fn saturation(&self) -> MultiplicativeSet {
        let r = &self.ring;
        let members = r.set_of(
            r.elements()
                .filter(|&x| r.elements().any(|y| self.members.contains(r.mul(x, y)))),
        );
        MultiplicativeSet {
            ring: r.clone(),
            members,
        }
    }

    pub fn units(ring: &Ring) -> MultiplicativeSet {
        MultiplicativeSet {
            ring: ring.clone(),
            members: ring.set_of(ring.elements().filter(|&x| ring.is_unit(x))),
        }
    }

    /// `R ∖ 𝔭` for a prime `𝔭`.
    pub fn complement_of_prime(p: &Ideal) -> Result<MultiplicativeSet> {
        let r = p.ring();
        let mut members = p.members().clone();
        members.toggle_range(..);
        MultiplicativeSet::new(r, members)
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

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The ring `R_S` with its canonical map `a ↦ a/1`.
#[derive(Clone)]
pub struct LocalizedRing {
    pub base: Ring,
    pub set: MultiplicativeSet,
    pub carrier: Ring,
    pub canonical: RingHom,
    denominators: Vec<usize>,
    position: Vec<u32>,
    class_of: Vec<u32>,
    reps: Vec<(usize, usize)>,
}

const NOT_IN_SET: u32 = u32::MAX;

impl LocalizedRing {
    /// Class of the fraction `a/s`, or `None` when `s ∉ S`.
    pub fn class(&self, a: usize, s: usize) -> Option<usize> {
        let i = self.position[s];
        if i == NOT_IN_SET {
            return None;
        }
        Some(self.class_of[a * self.denominators.len() + i as usize] as usize)
    }

    /// Least representative pair `(a, s)` of each class, by class index.
    pub fn representative(&self, class: usize) -> (usize, usize) {
        self.reps[class]
    }

    /// Denominators in ascending index order.
    pub fn denominators(&self) -> &[usize] {
        &self.denominators
    }

    pub fn is_zero(&self) -> bool {
        self.carrier.is_zero_ring()
    }
}

impl std::fmt::Debug for LocalizedRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LocalizedRing({} classes of {})", self.carrier.size(), self.base.provenance())
    }
}

/// `R_S` by raw fraction classes.
pub fn localize(set: &MultiplicativeSet, budget: &Budget) -> Result<LocalizedRing> {
    let r = set.ring();
    let den = set.member_list();
    let k = den.len();
    let n = r.size();
    let pairs = (n as u128) * (k as u128);
    let cap = (budget.max_ring as u128).pow(2);
    if pairs > cap {
        return Err(over_budget("fraction pairs", pairs, cap));
    }

    let mut position = vec![NOT_IN_SET; n];
    for (i, &s) in den.iter().enumerate() {
        position[s] = i as u32;
    }

    // torsion K = {x : ux = 0 for some u ∈ S}
    let torsion = r.set_of(
        r.elements()
            .filter(|&x| den.iter().any(|&u| r.mul(u, x) == r.zero())),
    );
    let equiv = |(a, s): (usize, usize), (b, t): (usize, usize)| -> bool {
        torsion.contains(r.sub(r.mul(a, t), r.mul(b, s)))
    };

    // Each s acts injectively on R/K, so (a, s) ~ (b, 1) for exactly one
    // coset b + K; the coset label is the class key.
    let mut coset = vec![usize::MAX; n];
    let mut coset_count = 0;
    for x in r.elements() {
        if coset[x] == usize::MAX {
            for y in torsion.ones() {
                coset[r.add(x, y)] = coset_count;
            }
            coset_count += 1;
        }
    }
    let mut solve = vec![usize::MAX; coset_count * k];
    for (i, &s) in den.iter().enumerate() {
        for b in r.elements() {
            let c = coset[r.mul(s, b)];
            let slot = &mut solve[c * k + i];
            if *slot == usize::MAX {
                *slot = coset[b];
            }
        }
    }

    let mut class_of = vec![0u32; n * k];
    let mut class_by_key = vec![u32::MAX; coset_count];
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for a in r.elements() {
        for (i, &s) in den.iter().enumerate() {
            let key = solve[coset[a] * k + i];
            if key == usize::MAX {
                return Err(RingError::Defect(format!(
                    "denominator {} is not invertible modulo S-torsion",
                    r.name(s)
                )));
            }
            if class_by_key[key] == u32::MAX {
                class_by_key[key] = reps.len() as u32;
                reps.push((a, s));
            }
            let c = class_by_key[key] as usize;
            if !equiv((a, s), reps[c]) {
                return Err(RingError::Defect(format!(
                    "fraction {}/{} grouped with an inequivalent representative",
                    r.name(a),
                    r.name(s)
                )));
            }
            class_of[a * k + i] = c as u32;
        }
    }
    for (c, &p) in reps.iter().enumerate() {
        if let Some(d) = reps[..c].iter().position(|&q| equiv(p, q)) {
            return Err(RingError::Defect(format!(
                "fraction classes {c} and {d} are equivalent"
            )));
        }
    }

    let m = reps.len();
    let idx = |a: usize, s: usize| class_of[a * k + position[s] as usize] as usize;
    let (add, mul) = build_tables(
        m,
        |x, y| {
            let ((a, s), (b, t)) = (reps[x], reps[y]);
            idx(r.add(r.mul(a, t), r.mul(b, s)), r.mul(s, t))
        },
        |x, y| {
            let ((a, s), (b, t)) = (reps[x], reps[y]);
            idx(r.mul(a, b), r.mul(s, t))
        },
    );
    let names = reps
        .iter()
        .map(|&(a, s)| format!("{}/{}", r.name(a), r.name(s)))
        .collect();
    let members: Vec<&str> = den.iter().map(|&s| r.name(s)).collect();
    let carrier = Arc::new(crate::ring::FiniteRing::from_tables(
        add,
        mul,
        idx(r.zero(), r.one()),
        idx(r.one(), r.one()),
        names,
        format!("(localize {} {{{}}})", r.provenance(), members.join(" ")),
    )?);
    let canonical = mk_hom(r, &carrier, r.elements().map(|a| idx(a, r.one())).collect())?;

    if canonical.kernel().members() != &torsion {
        return Err(RingError::Defect(
            "kernel of the canonical map differs from the S-torsion".into(),
        ));
    }
    if carrier.is_zero_ring() != set.contains(r.zero()) {
        return Err(RingError::Defect(format!(
            "localization is {}the zero ring but 0 {} S",
            if carrier.is_zero_ring() { "" } else { "not " },
            if set.contains(r.zero()) { "∈" } else { "∉" }
        )));
    }
    Ok(LocalizedRing {
        base: r.clone(),
        set: set.clone(),
        carrier,
        canonical,
        denominators: den,
        position,
        class_of,
        reps,
    })
}

/// `R_𝔭 = R_{R∖𝔭}`.
pub fn localize_at_prime(p: &Ideal, budget: &Budget) -> Result<LocalizedRing> {
    localize(&MultiplicativeSet::complement_of_prime(p)?, budget)
}

/// Units, zerodivisors and regular elements of a ring.
#[derive(Clone, Debug)]
pub struct RegularityScan {
    pub units: ElementSet,
    pub zerodivisors: ElementSet,
    pub regular: ElementSet,
}

/// Partitions the carrier; asserts `Reg(R) = units(R)`.
pub fn regularity_scan(ring: &Ring) -> Result<RegularityScan> {
    let units = ring.set_of(ring.elements().filter(|&x| ring.is_unit(x)));
    let zerodivisors = ring.set_of(ring.elements().filter(|&x| {
        ring.elements()
            .any(|y| y != ring.zero() && ring.mul(x, y) == ring.zero())
    }));
    let mut regular = zerodivisors.clone();
    regular.toggle_range(..);
    if regular != units {
        let w = regular.symmetric_difference(&units).next().unwrap_or(0);
        return Err(RingError::Defect(format!(
            "regular element {} is not a unit (or conversely) in {}",
            ring.name(w),
            ring.provenance()
        )));
    }
    Ok(RegularityScan {
        units,
        zerodivisors,
        regular,
    })
}

/// `Tot(R) = R_{Reg(R)}`; on a finite ring the canonical map is an
/// isomorphism, which is asserted.
pub fn total_quotient_ring(ring: &Ring, budget: &Budget) -> Result<LocalizedRing> {
    let scan = regularity_scan(ring)?;
    let tot = localize(&MultiplicativeSet::new(ring, scan.regular)?, budget)?;
    if !tot.canonical.is_bijective() {
        return Err(RingError::Defect(format!(
            "R → Tot(R) is not bijective for {}",
            ring.provenance()
        )));
    }
    Ok(tot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{mk_truncated_poly, mk_zmod};

    const B: Budget = Budget::DEFAULT;

    #[test]
    fn z6_at_two_and_three() {
        let z6 = mk_zmod(6, &B).unwrap();
        let s2 = MultiplicativeSet::generated(&z6, &[2]).unwrap();
        assert_eq!(s2.member_list(), vec![1, 2, 4]);
        let l = localize(&s2.saturation(), &B).unwrap();
        assert_eq!(l.carrier.size(), 3);
        assert_eq!(l.canonical.kernel().member_list(), vec![0, 3]);
        let s3 = MultiplicativeSet::generated(&z6, &[3]).unwrap();
        let l = localize(&s3, &B).unwrap();
        assert_eq!(l.carrier.size(), 2);
        // 1/3 = 3/3 since 3·(1·3 − 3·1) = 0
        assert_eq!(l.class(1, 3), l.class(3, 3));
        assert_eq!(l.class(1, 3), Some(l.canonical.apply(1)));
    }

    #[test]
    fn zero_in_set_gives_zero_ring() {
        let z4 = mk_zmod(4, &B).unwrap();
        let s = MultiplicativeSet::generated(&z4, &[2]).unwrap();
        assert!(s.contains(0));
        let l = localize(&s, &B).unwrap();
        assert!(l.is_zero());
        assert_eq!(l.carrier.name(0), "0/0");
    }

    #[test]
    fn units_change_nothing() {
        let r = mk_truncated_poly(2, 2, 2, &B).unwrap();
        let l = localize(&MultiplicativeSet::units(&r), &B).unwrap();
        assert!(l.canonical.is_bijective());
    }

    #[test]
    fn regularity() {
        let z4 = mk_zmod(4, &B).unwrap();
        let s = regularity_scan(&z4).unwrap();
        assert_eq!(s.units.ones().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(s.zerodivisors.ones().collect::<Vec<_>>(), vec![0, 2]);
        let z6 = mk_zmod(6, &B).unwrap();
        let s = regularity_scan(&z6).unwrap();
        assert_eq!(s.units.ones().collect::<Vec<_>>(), vec![1, 5]);
        let r63 = mk_truncated_poly(2, 2, 3, &B).unwrap();
        assert!(total_quotient_ring(&r63, &B).is_ok());
    }

    #[test]
    fn rejects_non_multiplicative() {
        let z6 = mk_zmod(6, &B).unwrap();
        assert!(MultiplicativeSet::new(&z6, z6.set_of([1, 2])).is_err());
        assert!(MultiplicativeSet::new(&z6, z6.set_of([2, 4])).is_err());
    }
}
