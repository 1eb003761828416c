//! Dense-table finite commutative rings.
//!
//! A [`FiniteRing`] stores its full addition and multiplication tables over
//! element indices `0..size`. Every ring is validated exhaustively when it is
//! built, so downstream code may assume the axioms.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Result, RingError};

/// Shared handle to an immutable ring.
pub type Ring = Arc<FiniteRing>;

/// Membership set over the element indices of one ring.
pub type ElementSet = FixedBitSet;

pub struct FiniteRing {
    size: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: usize,
    one: usize,
    names: Vec<String>,
    by_name: HashMap<String, usize>,
    provenance: String,
}

impl FiniteRing {
    /// Builds a ring from raw tables, checking every axiom by enumeration.
    pub fn from_tables(
        add: Vec<u32>,
        mul: Vec<u32>,
        zero: usize,
        one: usize,
        names: Vec<String>,
        provenance: impl Into<String>,
    ) -> Result<FiniteRing> {
        let n = names.len();
        if n == 0 {
            return Err(RingError::AxiomViolation("empty carrier".into()));
        }
        if add.len() != n * n || mul.len() != n * n {
            return Err(RingError::AxiomViolation(format!(
                "tables must be {n}x{n}"
            )));
        }
        if zero >= n || one >= n {
            return Err(RingError::AxiomViolation("zero/one out of range".into()));
        }
        if let Some(bad) = add.iter().chain(mul.iter()).find(|&&v| v as usize >= n) {
            return Err(RingError::AxiomViolation(format!(
                "table entry {bad} out of range"
            )));
        }
        let mut by_name = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if by_name.insert(name.clone(), i).is_some() {
                return Err(RingError::AxiomViolation(format!(
                    "duplicate element name `{name}`"
                )));
            }
        }
        if n > 1 && zero == one {
            return Err(RingError::AxiomViolation(
                "0 = 1 in a ring with more than one element".into(),
            ));
        }

        let at = |t: &Vec<u32>, a: usize, b: usize| t[a * n + b] as usize;

        // identities, inverses, commutativity: quadratic
        let mut neg = vec![u32::MAX; n];
        for a in 0..n {
            if at(&add, zero, a) != a {
                return Err(axiom(&names, "additive identity", &[zero, a]));
            }
            if at(&mul, one, a) != a {
                return Err(axiom(&names, "multiplicative identity", &[one, a]));
            }
            for b in 0..n {
                if at(&add, a, b) != at(&add, b, a) {
                    return Err(axiom(&names, "additive commutativity", &[a, b]));
                }
                if at(&mul, a, b) != at(&mul, b, a) {
                    return Err(axiom(&names, "multiplicative commutativity", &[a, b]));
                }
                if at(&add, a, b) == zero {
                    neg[a] = b as u32;
                }
            }
            if neg[a] == u32::MAX {
                return Err(axiom(&names, "additive inverse", &[a]));
            }
        }

        // associativity and distributivity: cubic, split over the first operand
        let failure = (0..n).into_par_iter().find_map_any(|a| {
            for b in 0..n {
                let ab_add = at(&add, a, b);
                let ab_mul = at(&mul, a, b);
                for c in 0..n {
                    if at(&add, ab_add, c) != at(&add, a, at(&add, b, c)) {
                        return Some(("additive associativity", [a, b, c]));
                    }
                    if at(&mul, ab_mul, c) != at(&mul, a, at(&mul, b, c)) {
                        return Some(("multiplicative associativity", [a, b, c]));
                    }
                    let lhs = at(&mul, a, at(&add, b, c));
                    let rhs = at(&add, ab_mul, at(&mul, a, c));
                    if lhs != rhs {
                        return Some(("distributivity", [a, b, c]));
                    }
                }
            }
            None
        });
        if let Some((law, w)) = failure {
            return Err(axiom(&names, law, &w));
        }

        Ok(FiniteRing {
            size: n,
            add,
            mul,
            neg,
            zero,
            one,
            names,
            by_name,
            provenance: provenance.into(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn is_zero_ring(&self) -> bool {
        self.size == 1
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, mut k: u64) -> usize {
        let (mut acc, mut base) = (self.one, a);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `k·a` for a non-negative integer `k`.
    pub fn times(&self, k: u64, a: usize) -> usize {
        let (mut acc, mut base, mut k) = (self.zero, a, k);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| RingError::UnknownElement {
                name: name.to_string(),
                ring: self.provenance.clone(),
            })
    }

    /// The construction expression that produced this ring.
    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn add_table(&self) -> &[u32] {
        &self.add
    }

    pub fn mul_table(&self) -> &[u32] {
        &self.mul
    }

    pub fn element(&self, index: usize) -> Result<Element<'_>> {
        if index >= self.size {
            return Err(RingError::InvalidParameter(format!(
                "element index {index} out of range for ring of size {}",
                self.size
            )));
        }
        Ok(Element { ring: self, index })
    }

    pub fn empty_set(&self) -> ElementSet {
        FixedBitSet::with_capacity(self.size)
    }

    pub fn full_set(&self) -> ElementSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub fn set_of(&self, items: impl IntoIterator<Item = usize>) -> ElementSet {
        let mut s = self.empty_set();
        for i in items {
            s.insert(i);
        }
        s
    }

    pub fn is_unit(&self, a: usize) -> bool {
        (0..self.size).any(|b| self.mul(a, b) == self.one)
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.size).find(|&b| self.mul(a, b) == self.one)
    }

    /// Additive order of `a`.
    pub fn additive_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.zero {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    pub fn characteristic(&self) -> usize {
        self.additive_order(self.one)
    }

    /// Least `k ≥ 1` with `a^k = 0`, if `a` is nilpotent.
    pub fn nilpotency_index(&self, a: usize) -> Option<usize> {
        let mut x = a;
        for k in 1..=self.size {
            if x == self.zero {
                return Some(k);
            }
            x = self.mul(x, a);
        }
        None
    }

    pub fn annihilator(&self, a: usize) -> ElementSet {
        self.set_of((0..self.size).filter(|&b| self.mul(a, b) == self.zero))
    }

    /// Formats a set as `{a, b, ...}` using element names.
    pub fn format_set(&self, set: &ElementSet) -> String {
        let parts: Vec<&str> = set.ones().map(|i| self.name(i)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// True when both rings have identical tables and names.
    pub fn same_tables(&self, other: &FiniteRing) -> bool {
        self.size == other.size
            && self.zero == other.zero
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
            && self.names == other.names
    }
}

fn axiom(names: &[String], law: &str, witness: &[usize]) -> RingError {
    let w: Vec<&str> = witness.iter().map(|&i| names[i].as_str()).collect();
    RingError::AxiomViolation(format!("{law} fails at ({})", w.join(", ")))
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("size", &self.size)
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{} elements]", self.provenance, self.size)
    }
}

pub(crate) fn same_ring(a: &FiniteRing, b: &FiniteRing) -> bool {
    std::ptr::eq(a, b)
}

/// A checked handle to one element of one ring.
#[derive(Clone, Copy)]
pub struct Element<'r> {
    ring: &'r FiniteRing,
    index: usize,
}

impl<'r> Element<'r> {
    pub fn index(self) -> usize {
        self.index
    }

    pub fn ring(self) -> &'r FiniteRing {
        self.ring
    }

    fn check(self, other: Element<'r>) -> Result<()> {
        if same_ring(self.ring, other.ring) {
            Ok(())
        } else {
            Err(RingError::RingMismatch(format!(
                "cannot combine {} and {}",
                self.ring.provenance(),
                other.ring.provenance()
            )))
        }
    }

    pub fn try_add(self, other: Element<'r>) -> Result<Element<'r>> {
        self.check(other)?;
        Ok(Element {
            ring: self.ring,
            index: self.ring.add(self.index, other.index),
        })
    }

    pub fn try_mul(self, other: Element<'r>) -> Result<Element<'r>> {
        self.check(other)?;
        Ok(Element {
            ring: self.ring,
            index: self.ring.mul(self.index, other.index),
        })
    }

    pub fn neg(self) -> Element<'r> {
        Element {
            ring: self.ring,
            index: self.ring.neg(self.index),
        }
    }
}

impl PartialEq for Element<'_> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(self.ring, other.ring) && self.index == other.index
    }
}

impl fmt::Debug for Element<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.name(self.index))
    }
}

impl fmt::Display for Element<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.ring.name(self.index))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteRing {
        let mut add = Vec::new();
        let mut mul = Vec::new();
        for a in 0..n {
            for b in 0..n {
                add.push(((a + b) % n) as u32);
                mul.push(((a * b) % n) as u32);
            }
        }
        let names = (0..n).map(|i| i.to_string()).collect();
        FiniteRing::from_tables(add, mul, 0, 1 % n, names, format!("(zmod {n})")).unwrap()
    }

    #[test]
    fn corrupted_table_is_rejected() {
        let r = z(4);
        let mut mul = r.mul_table().to_vec();
        mul[2 * 4 + 3] = 1;
        let err = FiniteRing::from_tables(
            r.add_table().to_vec(),
            mul,
            0,
            1,
            r.names().to_vec(),
            "bad",
        )
        .unwrap_err();
        assert!(matches!(err, RingError::AxiomViolation(_)), "{err}");
    }

    #[test]
    fn non_distributive_table_is_rejected() {
        // x*y = 1 for nonzero x, y in Z3 is commutative and unital-failing
        let r = z(3);
        let mut mul = r.mul_table().to_vec();
        mul[2 * 3 + 2] = 2;
        assert!(FiniteRing::from_tables(
            r.add_table().to_vec(),
            mul,
            0,
            1,
            r.names().to_vec(),
            "bad"
        )
        .is_err());
    }

    #[test]
    fn cross_ring_arithmetic_is_rejected() {
        let a = z(4);
        let b = z(4);
        let x = a.element(1).unwrap();
        let y = b.element(1).unwrap();
        assert!(x.try_add(y).is_err());
        assert_eq!(x.try_add(x).unwrap().index(), 2);
        assert!(a.element(4).is_err());
    }

    #[test]
    fn helpers() {
        let r = z(8);
        assert_eq!(r.pow(2, 3), 0);
        assert_eq!(r.nilpotency_index(2), Some(3));
        assert_eq!(r.nilpotency_index(3), None);
        assert_eq!(r.additive_order(2), 4);
        assert_eq!(r.characteristic(), 8);
        assert_eq!(r.times(5, 3), 7);
        assert_eq!(r.inverse(3), Some(3));
        assert_eq!(r.annihilator(4).count_ones(..), 4);
    }
}
