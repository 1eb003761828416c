//! Exhaustive ring isomorphism search.
//!
//! Invariants are compared first. The search then fixes images for a small
//! generating set of the source, propagates the partial map through sums and
//! products, and backtracks on any clash.

use std::collections::HashMap;

use crate::budget::Budget;
use crate::error::{budget as over_budget, Result};
use crate::hom::{mk_hom, RingHom};
use crate::ideal::principal_set;
use crate::ring::{FiniteRing, Ring};

/// Per-element data preserved by every isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Signature {
    additive_order: usize,
    annihilator: usize,
    nilpotency: usize,
    idempotent: bool,
    unit_order: usize,
    principal: usize,
}

fn signature(r: &FiniteRing, x: usize) -> Signature {
    let unit_order = if r.is_unit(x) {
        let mut k = 1;
        let mut y = x;
        while y != r.one() {
            y = r.mul(y, x);
            k += 1;
        }
        k
    } else {
        0
    };
    Signature {
        additive_order: r.additive_order(x),
        annihilator: r.annihilator(x).count_ones(..),
        nilpotency: r.nilpotency_index(x).unwrap_or(0),
        idempotent: r.mul(x, x) == x,
        unit_order,
        principal: principal_set(r, x).count_ones(..),
    }
}

fn signatures(r: &FiniteRing) -> Vec<Signature> {
    r.elements().map(|x| signature(r, x)).collect()
}

/// Generators of `r` as a ring, chosen greedily by element index.
pub fn ring_generators(r: &FiniteRing) -> Vec<usize> {
    let mut span = r.set_of([r.zero(), r.one()]);
    close(r, &mut span);
    let mut gens = Vec::new();
    for x in r.elements() {
        if !span.contains(x) {
            gens.push(x);
            span.insert(x);
            close(r, &mut span);
        }
    }
    gens
}

fn close(r: &FiniteRing, span: &mut crate::ring::ElementSet) {
    let mut list: Vec<usize> = span.ones().collect();
    let mut i = 0;
    while i < list.len() {
        for j in 0..=i {
            for z in [r.add(list[i], list[j]), r.mul(list[i], list[j])] {
                if !span.contains(z) {
                    span.insert(z);
                    list.push(z);
                }
            }
        }
        i += 1;
    }
}

struct Search<'a> {
    s: &'a FiniteRing,
    t: &'a FiniteRing,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    nodes: u64,
    cap: u64,
}

#[derive(Clone)]
struct Partial {
    map: Vec<usize>,
    used: Vec<bool>,
    domain: Vec<usize>,
}

impl Partial {
    fn set(&mut self, x: usize, y: usize) -> bool {
        if self.map[x] != usize::MAX {
            return self.map[x] == y;
        }
        if self.used[y] {
            return false;
        }
        self.map[x] = y;
        self.used[y] = true;
        self.domain.push(x);
        true
    }

    /// Closes the domain under + and ·, returning false on a clash.
    fn propagate(&mut self, s: &FiniteRing, t: &FiniteRing, from: usize) -> bool {
        let mut i = from;
        while i < self.domain.len() {
            let x = self.domain[i];
            for j in 0..=i {
                let y = self.domain[j];
                let (fx, fy) = (self.map[x], self.map[y]);
                if !self.set(s.add(x, y), t.add(fx, fy)) || !self.set(s.mul(x, y), t.mul(fx, fy)) {
                    return false;
                }
            }
            i += 1;
        }
        true
    }
}

impl Search<'_> {
    fn run(&mut self, partial: Partial, depth: usize) -> Result<Option<Vec<usize>>> {
        if depth == self.gens.len() {
            return Ok(Some(partial.map));
        }
        let g = self.gens[depth];
        if partial.map[g] != usize::MAX {
            return self.run(partial, depth + 1);
        }
        for k in 0..self.candidates[depth].len() {
            let y = self.candidates[depth][k];
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(over_budget("isomorphism search nodes", self.nodes as u128, self.cap as u128));
            }
            let mut next = partial.clone();
            let from = next.domain.len();
            if !next.set(g, y) || !next.propagate(self.s, self.t, from) {
                continue;
            }
            if let Some(m) = self.run(next, depth + 1)? {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }
}

/// A bijective homomorphism `r1 → r2` if one exists; `Ok(None)` after an
/// exhaustive search (or an invariant mismatch) proves there is none.
pub fn find_isomorphism(r1: &Ring, r2: &Ring, budget: &Budget) -> Result<Option<RingHom>> {
    if r1.size() != r2.size() || r1.characteristic() != r2.characteristic() {
        return Ok(None);
    }
    let (s1, s2) = (signatures(r1), signatures(r2));
    let mut h1: HashMap<Signature, usize> = HashMap::new();
    let mut h2: HashMap<Signature, usize> = HashMap::new();
    for &s in &s1 {
        *h1.entry(s).or_default() += 1;
    }
    for &s in &s2 {
        *h2.entry(s).or_default() += 1;
    }
    if h1 != h2 {
        return Ok(None);
    }
    let gens = ring_generators(r1);
    let candidates = gens
        .iter()
        .map(|&g| r2.elements().filter(|&y| s2[y] == s1[g]).collect())
        .collect();
    let mut search = Search {
        s: r1,
        t: r2,
        gens,
        candidates,
        nodes: 0,
        cap: budget.max_iso_nodes,
    };
    let n = r1.size();
    let mut start = Partial {
        map: vec![usize::MAX; n],
        used: vec![false; n],
        domain: Vec::new(),
    };
    start.set(r1.zero(), r2.zero());
    if !start.set(r1.one(), r2.one()) || !start.propagate(r1, r2, 0) {
        return Ok(None);
    }
    match search.run(start, 0)? {
        Some(map) => Ok(Some(mk_hom(r1, r2, map)?)),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{mk_poly_quot, mk_product, mk_quotient, mk_truncated_poly, mk_zmod};
    use crate::ideal::Ideal;
    use crate::poly::PolyOverRing;

    const B: Budget = Budget::DEFAULT;

    #[test]
    fn crt_instance() {
        let z6 = mk_zmod(6, &B).unwrap();
        let p = mk_product(&mk_zmod(2, &B).unwrap(), &mk_zmod(3, &B).unwrap(), &B)
            .unwrap()
            .ring;
        let h = find_isomorphism(&z6, &p, &B).unwrap().unwrap();
        assert!(h.is_bijective());
        // 1 ↦ (1,1); 3 ↦ (1,0)
        assert_eq!(p.name(h.apply(3)), "[1,0]");
    }

    #[test]
    fn z4_not_z2xz2() {
        let z2 = mk_zmod(2, &B).unwrap();
        let v = mk_product(&z2, &z2, &B).unwrap().ring;
        assert!(find_isomorphism(&mk_zmod(4, &B).unwrap(), &v, &B).unwrap().is_none());
    }

    #[test]
    fn identity_and_presentations() {
        let r63 = mk_truncated_poly(2, 2, 3, &B).unwrap();
        let h = find_isomorphism(&r63, &r63, &B).unwrap().unwrap();
        assert!(h.is_bijective());
        let z2 = mk_zmod(2, &B).unwrap();
        let d2 = mk_poly_quot(&PolyOverRing::new(&z2, vec![0, 0, 1]).unwrap(), &B).unwrap();
        let t = mk_truncated_poly(2, 1, 2, &B).unwrap();
        assert!(find_isomorphism(&d2, &t, &B).unwrap().is_some());
        let z4 = mk_zmod(4, &B).unwrap();
        let q = mk_quotient(&Ideal::generate(&z4, &[2]).unwrap()).unwrap().ring;
        assert!(find_isomorphism(&q, &z2, &B).unwrap().is_some());
        // Z2[x]/(x²) and Z2[x]/(x²+x+1) have the same size but differ
        let f4 = mk_poly_quot(&PolyOverRing::new(&z2, vec![1, 1, 1]).unwrap(), &B).unwrap();
        assert!(find_isomorphism(&d2, &f4, &B).unwrap().is_none());
    }
}
