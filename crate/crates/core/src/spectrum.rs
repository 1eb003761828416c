//! Prime spectrum, maximal ideals, radicals and polynomial content.

use crate::budget::Budget;
use crate::error::{Result, RingError};
use crate::ideal::Ideal;
use crate::lattice::IdealLattice;
use crate::poly::PolyOverRing;
use crate::ring::Ring;

/// `Spec(R)` as a finite poset under containment.
#[derive(Debug, Clone)]
pub struct SpectrumView {
    pub ring: Ring,
    pub primes: Vec<Ideal>,
    pub maximals: Vec<Ideal>,
    /// `order[i][j]` iff `primes[i] ⊆ primes[j]`.
    pub order: Vec<Vec<bool>>,
    /// Each non-prime ideal with a product witness `x·y ∈ I`, `x, y ∉ I`
    /// (`None` for the unit ideal, which fails by being improper).
    pub non_primes: Vec<(Ideal, Option<(usize, usize)>)>,
}

impl SpectrumView {
    /// `V(I)`: primes containing `I`.
    pub fn variety(&self, ideal: &Ideal) -> Vec<Ideal> {
        self.primes
            .iter()
            .filter(|p| ideal.is_subset(p))
            .cloned()
            .collect()
    }

    pub fn is_local(&self) -> bool {
        self.maximals.len() == 1
    }
}

/// Witness that `p` is not prime, or `Ok(())` when it is.
pub fn prime_failure(p: &Ideal) -> std::result::Result<(), Option<(usize, usize)>> {
    if p.is_unit_ideal() {
        return Err(None);
    }
    let r = p.ring();
    let outside: Vec<usize> = r.elements().filter(|&x| !p.contains(x)).collect();
    for (i, &x) in outside.iter().enumerate() {
        for &y in &outside[i..] {
            if p.contains(r.mul(x, y)) {
                return Err(Some((x, y)));
            }
        }
    }
    Ok(())
}

pub fn is_prime(p: &Ideal) -> bool {
    prime_failure(p).is_ok()
}

/// `R/I` is a field.
pub fn is_maximal(ideal: &Ideal) -> bool {
    if ideal.is_unit_ideal() {
        return false;
    }
    // R/I is a field iff every x ∉ I has some y with xy − 1 ∈ I
    let r = ideal.ring();
    r.elements()
        .filter(|&x| !ideal.contains(x))
        .all(|x| r.elements().any(|y| ideal.contains(r.sub(r.mul(x, y), r.one()))))
}

/// Primes and maximals from a lattice. On a finite ring every prime is
/// maximal; a violation is reported as a defect.
pub fn spectrum_of_lattice(lat: &IdealLattice) -> Result<SpectrumView> {
    let ring = lat.ring().clone();
    let unit = lat.unit_id();
    let mut primes = Vec::new();
    let mut non_primes = Vec::new();
    for id in 0..lat.len() {
        let ideal = lat.ideal(id);
        match prime_failure(&ideal) {
            Ok(()) => primes.push(ideal),
            Err(w) => non_primes.push((ideal, w)),
        }
    }
    let maximals: Vec<Ideal> = (0..lat.len())
        .filter(|&i| i != unit)
        .filter(|&i| (0..lat.len()).all(|j| j == unit || j == i || !lat.le(i, j)))
        .map(|i| lat.ideal(i))
        .collect();
    if primes != maximals {
        return Err(RingError::Defect(format!(
            "finite ring {} has primes {:?} but maximals {:?}",
            ring.provenance(),
            primes,
            maximals
        )));
    }
    let order = primes
        .iter()
        .map(|p| primes.iter().map(|q| p.is_subset(q)).collect())
        .collect();
    Ok(SpectrumView {
        ring,
        primes,
        maximals,
        order,
        non_primes,
    })
}

pub fn spectrum(ring: &Ring, budget: &Budget) -> Result<SpectrumView> {
    spectrum_of_lattice(&IdealLattice::new(ring, budget)?)
}

/// Nilradical and Jacobson radical.
#[derive(Debug, Clone)]
pub struct Radicals {
    pub nilradical: Ideal,
    pub jacobson: Ideal,
}

pub fn radicals(ring: &Ring, budget: &Budget) -> Result<Radicals> {
    let nil = ring.set_of(ring.elements().filter(|&x| ring.nilpotency_index(x).is_some()));
    let nilradical = Ideal::from_members(ring, nil)?;
    let spec = spectrum(ring, budget)?;
    let jacobson = jacobson_of(ring, &spec.maximals);
    Ok(Radicals {
        nilradical,
        jacobson,
    })
}

pub(crate) fn jacobson_of(ring: &Ring, maximals: &[Ideal]) -> Ideal {
    maximals
        .iter()
        .fold(Ideal::unit(ring), |acc, m| acc.intersection(m).expect("same ring"))
}

/// `c(p)`: the ideal generated by the coefficients.
pub fn content(p: &PolyOverRing) -> Ideal {
    Ideal::generate(p.ring(), p.coeffs()).expect("coefficients are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{mk_product, mk_truncated_poly, mk_zmod};

    const B: Budget = Budget::DEFAULT;

    #[test]
    fn spec_z6() {
        let z6 = mk_zmod(6, &B).unwrap();
        let s = spectrum(&z6, &B).unwrap();
        let lists: Vec<Vec<usize>> = s.primes.iter().map(|p| p.member_list()).collect();
        assert_eq!(lists, vec![vec![0, 3], vec![0, 2, 4]]);
        // (0) fails with 2·3 = 0
        let zero = s.non_primes.iter().find(|(i, _)| i.is_zero()).unwrap();
        assert_eq!(zero.1, Some((2, 3)));
    }

    #[test]
    fn spec_field_and_r63() {
        let f = mk_zmod(7, &B).unwrap();
        let s = spectrum(&f, &B).unwrap();
        assert_eq!(s.primes.len(), 1);
        assert!(s.primes[0].is_zero());
        let r63 = mk_truncated_poly(2, 2, 3, &B).unwrap();
        let s = spectrum(&r63, &B).unwrap();
        assert!(s.is_local());
        let m = &s.maximals[0];
        assert!(r63.elements().all(|x| m.contains(x) != r63.is_unit(x)));
    }

    #[test]
    fn radicals_examples() {
        let z4 = mk_zmod(4, &B).unwrap();
        let r = radicals(&z4, &B).unwrap();
        assert_eq!(r.nilradical.member_list(), vec![0, 2]);
        assert_eq!(r.jacobson.member_list(), vec![0, 2]);
        let z6 = mk_zmod(6, &B).unwrap();
        let r = radicals(&z6, &B).unwrap();
        assert!(r.nilradical.is_zero() && r.jacobson.is_zero());
        let z2 = mk_zmod(2, &B).unwrap();
        let z3 = mk_zmod(3, &B).unwrap();
        let p = mk_product(&z2, &z3, &B).unwrap().ring;
        let r = radicals(&p, &B).unwrap();
        assert!(r.nilradical.is_zero() && r.jacobson.is_zero());
    }

    #[test]
    fn content_examples() {
        let z4 = mk_zmod(4, &B).unwrap();
        let p = PolyOverRing::new(&z4, vec![2, 2]).unwrap();
        assert_eq!(content(&p).member_list(), vec![0, 2]);
        assert!(content(&PolyOverRing::zero(&z4)).is_zero());
    }
}
