//! Validated unital ring homomorphisms between finite rings.

use std::fmt;

use crate::error::{Result, RingError};
use crate::ideal::{generated_set, Ideal};
use crate::ring::{same_ring, ElementSet, Ring};

#[derive(Clone)]
pub struct RingHom {
    source: Ring,
    target: Ring,
    map: Vec<u32>,
}

/// Validates `map` as a unital ring homomorphism `source → target`.
///
/// All four axioms are checked on every element (pair); the error carries the
/// first failing witness.
pub fn mk_hom(source: &Ring, target: &Ring, map: Vec<usize>) -> Result<RingHom> {
    let (s, t) = (source.as_ref(), target.as_ref());
    if map.len() != s.size() {
        return Err(RingError::NotAHomomorphism(format!(
            "map has {} entries for a source of size {}",
            map.len(),
            s.size()
        )));
    }
    if let Some(&bad) = map.iter().find(|&&v| v >= t.size()) {
        return Err(RingError::NotAHomomorphism(format!(
            "image index {bad} out of range"
        )));
    }
    if map[s.zero()] != t.zero() {
        return Err(RingError::NotAHomomorphism(format!(
            "0 maps to {} instead of 0",
            t.name(map[s.zero()])
        )));
    }
    if map[s.one()] != t.one() {
        let img = map[s.one()];
        return Err(RingError::NotAHomomorphism(format!(
            "1 maps to {img_name}, but 1*1 = 1 while {img_name}*{img_name} = {sq} and the unit must map to {one}",
            img_name = t.name(img),
            sq = t.name(t.mul(img, img)),
            one = t.name(t.one()),
        )));
    }
    for a in s.elements() {
        for b in a..s.size() {
            let sum = map[s.add(a, b)];
            if sum != t.add(map[a], map[b]) {
                return Err(RingError::NotAHomomorphism(format!(
                    "map({a}+{b}) = {} but map({a})+map({b}) = {}",
                    t.name(sum),
                    t.name(t.add(map[a], map[b])),
                    a = s.name(a),
                    b = s.name(b),
                )));
            }
            let prod = map[s.mul(a, b)];
            if prod != t.mul(map[a], map[b]) {
                return Err(RingError::NotAHomomorphism(format!(
                    "map({a}*{b}) = {} but map({a})*map({b}) = {}",
                    t.name(prod),
                    t.name(t.mul(map[a], map[b])),
                    a = s.name(a),
                    b = s.name(b),
                )));
            }
        }
    }
    Ok(RingHom {
        source: source.clone(),
        target: target.clone(),
        map: map.into_iter().map(|v| v as u32).collect(),
    })
}

impl RingHom {
    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a] as usize
    }

    pub fn map(&self) -> Vec<usize> {
        self.map.iter().map(|&v| v as usize).collect()
    }

    pub fn identity(ring: &Ring) -> RingHom {
        RingHom {
            source: ring.clone(),
            target: ring.clone(),
            map: ring.elements().map(|i| i as u32).collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RingHom) -> Result<RingHom> {
        if !same_ring(&self.target, &other.source) {
            return Err(RingError::RingMismatch(
                "composition of homomorphisms with mismatched rings".into(),
            ));
        }
        Ok(RingHom {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&v| other.map[v as usize]).collect(),
        })
    }

    pub fn kernel(&self) -> Ideal {
        let s = &self.source;
        let zero = self.target.zero();
        let members = s.set_of(s.elements().filter(|&a| self.apply(a) == zero));
        Ideal::from_trusted(s, members)
    }

    pub fn image_set(&self) -> ElementSet {
        self.target.set_of(self.map.iter().map(|&v| v as usize))
    }

    pub fn image_of(&self, set: &ElementSet) -> ElementSet {
        self.target.set_of(set.ones().map(|a| self.apply(a)))
    }

    pub fn preimage_set(&self, set: &ElementSet) -> ElementSet {
        let s = &self.source;
        s.set_of(s.elements().filter(|&a| set.contains(self.apply(a))))
    }

    /// `f⁻¹(J)` for an ideal `J` of the target.
    pub fn preimage_ideal(&self, ideal: &Ideal) -> Result<Ideal> {
        if !same_ring(ideal.ring(), &self.target) {
            return Err(RingError::RingMismatch(
                "preimage of an ideal of another ring".into(),
            ));
        }
        Ok(Ideal::from_trusted(
            &self.source,
            self.preimage_set(ideal.members()),
        ))
    }

    /// Ideal of the target generated by the image of an ideal of the source.
    pub fn extend_ideal(&self, ideal: &Ideal) -> Result<Ideal> {
        if !same_ring(ideal.ring(), &self.source) {
            return Err(RingError::RingMismatch(
                "extension of an ideal of another ring".into(),
            ));
        }
        let gens: Vec<usize> = ideal.members().ones().map(|a| self.apply(a)).collect();
        Ok(Ideal::from_trusted(
            &self.target,
            generated_set(&self.target, &gens),
        ))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_set().count_ones(..) == self.target.size()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.size() == self.target.size() && self.is_surjective()
    }
}

impl fmt::Debug for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .source
            .elements()
            .map(|a| {
                format!(
                    "{}->{}",
                    self.source.name(a),
                    self.target.name(self.apply(a))
                )
            })
            .collect();
        write!(f, "RingHom[{}]", pairs.join(", "))
    }
}
