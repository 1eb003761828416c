//! Full ideal-lattice enumeration with memoized lattice operations.
//!
//! Every ideal of a finite ring is a finite sum of principal ideals, so the
//! lattice is the closure of the principal ideals under pairwise sums.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU32, Ordering};

use crate::budget::Budget;
use crate::error::{budget as over_budget, Result, RingError};
use crate::ideal::{extend_subgroup, principal_set, Ideal};
use crate::ring::{ElementSet, FiniteRing, Ring};

const UNSET: u32 = u32::MAX;
/// Ideal counts above this run without the dense operation caches.
const DENSE_CACHE_MAX: usize = 2048;

pub struct IdealLattice {
    ring: Ring,
    sets: Vec<ElementSet>,
    sizes: Vec<usize>,
    gens: Vec<Vec<usize>>,
    index: HashMap<ElementSet, u32>,
    principal: Vec<u32>,
    sum_cache: Vec<AtomicU32>,
    product_cache: Vec<AtomicU32>,
}

fn sum_sets(ring: &FiniteRing, a: &ElementSet, b: &ElementSet) -> ElementSet {
    let mut group = a.clone();
    for g in b.ones() {
        extend_subgroup(ring, &mut group, g);
    }
    group
}

fn greedy_generators(ring: &FiniteRing, set: &ElementSet) -> Vec<usize> {
    let mut span = ring.set_of([ring.zero()]);
    let mut gens = Vec::new();
    for x in set.ones() {
        if !span.contains(x) {
            gens.push(x);
            let p = principal_set(ring, x);
            span = sum_sets(ring, &span, &p);
        }
    }
    gens
}

impl IdealLattice {
    pub fn new(ring: &Ring, budget: &Budget) -> Result<IdealLattice> {
        budget.check_lattice("ideal lattice", ring.size())?;
        let max_ideals = budget.max_ideals;

        let mut found: HashMap<ElementSet, ()> = HashMap::new();
        let mut list: Vec<ElementSet> = Vec::new();
        for x in ring.elements() {
            let p = principal_set(ring, x);
            if found.insert(p.clone(), ()).is_none() {
                list.push(p);
            }
        }
        let mut i = 0;
        while i < list.len() {
            for j in 0..i {
                if list[j].is_subset(&list[i]) || list[i].is_subset(&list[j]) {
                    continue;
                }
                let s = sum_sets(ring, &list[i], &list[j]);
                if found.insert(s.clone(), ()).is_none() {
                    list.push(s);
                    if list.len() > max_ideals {
                        return Err(over_budget(
                            "ideal count",
                            list.len() as u128,
                            max_ideals as u128,
                        ));
                    }
                }
            }
            i += 1;
        }

        let mut keyed: Vec<(usize, Vec<usize>, ElementSet)> = list
            .into_iter()
            .map(|s| (s.count_ones(..), s.ones().collect(), s))
            .collect();
        keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        let sets: Vec<ElementSet> = keyed.into_iter().map(|(_, _, s)| s).collect();
        let index: HashMap<ElementSet, u32> = sets
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i as u32))
            .collect();
        let principal = ring
            .elements()
            .map(|x| index[&principal_set(ring, x)])
            .collect();
        let sizes = sets.iter().map(|s| s.count_ones(..)).collect();
        let gens = sets.iter().map(|s| greedy_generators(ring, s)).collect();
        let n = sets.len();
        let cache = |n: usize| -> Vec<AtomicU32> {
            if n <= DENSE_CACHE_MAX {
                (0..n * n).map(|_| AtomicU32::new(UNSET)).collect()
            } else {
                Vec::new()
            }
        };
        Ok(IdealLattice {
            ring: ring.clone(),
            sets,
            sizes,
            gens,
            index,
            principal,
            sum_cache: cache(n),
            product_cache: cache(n),
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn set(&self, id: usize) -> &ElementSet {
        &self.sets[id]
    }

    pub fn size_of(&self, id: usize) -> usize {
        self.sizes[id]
    }

    pub fn generators(&self, id: usize) -> &[usize] {
        &self.gens[id]
    }

    pub fn ideal(&self, id: usize) -> Ideal {
        Ideal::from_trusted(&self.ring, self.sets[id].clone())
    }

    pub fn ideals(&self) -> Vec<Ideal> {
        (0..self.len()).map(|i| self.ideal(i)).collect()
    }

    pub fn id_of(&self, set: &ElementSet) -> Option<usize> {
        self.index.get(set).map(|&i| i as usize)
    }

    pub fn id_of_ideal(&self, ideal: &Ideal) -> Result<usize> {
        self.id_of(ideal.members()).ok_or_else(|| {
            RingError::RingMismatch("ideal does not belong to this lattice".into())
        })
    }

    /// The zero ideal always sorts first and the unit ideal last.
    pub fn zero_id(&self) -> usize {
        0
    }

    pub fn unit_id(&self) -> usize {
        self.len() - 1
    }

    pub fn principal(&self, x: usize) -> usize {
        self.principal[x] as usize
    }

    /// `I ⊆ J` by id.
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.sizes[i] <= self.sizes[j] && self.sets[i].is_subset(&self.sets[j])
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.le(i, j) || self.le(j, i)
    }

    fn cached(
        &self,
        cache: &[AtomicU32],
        i: usize,
        j: usize,
        compute: impl FnOnce() -> usize,
    ) -> usize {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        if cache.is_empty() {
            return compute();
        }
        let slot = &cache[a * self.len() + b];
        let v = slot.load(Ordering::Relaxed);
        if v != UNSET {
            return v as usize;
        }
        let r = compute();
        slot.store(r as u32, Ordering::Relaxed);
        r
    }

    pub fn sum(&self, i: usize, j: usize) -> usize {
        if self.le(i, j) {
            return j;
        }
        if self.le(j, i) {
            return i;
        }
        self.cached(&self.sum_cache, i, j, || {
            let s = sum_sets(&self.ring, &self.sets[i], &self.sets[j]);
            self.index[&s] as usize
        })
    }

    pub fn product(&self, i: usize, j: usize) -> usize {
        let zero = self.zero_id();
        if i == zero || j == zero {
            return zero;
        }
        let unit = self.unit_id();
        if i == unit {
            return j;
        }
        if j == unit {
            return i;
        }
        self.cached(&self.product_cache, i, j, || {
            let r = &self.ring;
            let mut acc = zero;
            for &x in &self.gens[i] {
                for &y in &self.gens[j] {
                    acc = self.sum(acc, self.principal(r.mul(x, y)));
                }
            }
            acc
        })
    }

    pub fn intersection(&self, i: usize, j: usize) -> usize {
        let mut m = self.sets[i].clone();
        m.intersect_with(&self.sets[j]);
        self.index[&m] as usize
    }

    /// Id of the ideal generated by `elems`.
    pub fn generated(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems
            .into_iter()
            .fold(self.zero_id(), |acc, x| self.sum(acc, self.principal(x)))
    }

    /// `Ok` when the ideals form a chain, otherwise the first incomparable pair
    /// of principal ideals `(x, y)` by element index.
    pub fn chain_witness(&self) -> Option<(usize, usize)> {
        let r = &self.ring;
        for x in r.elements() {
            for y in (x + 1)..r.size() {
                if !self.comparable(self.principal(x), self.principal(y)) {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

/// Every ideal exactly once, sorted by (size, member list).
pub fn all_ideals(ring: &Ring, budget: &Budget) -> Result<Vec<Ideal>> {
    Ok(IdealLattice::new(ring, budget)?.ideals())
}

/// Totally-ordered check with an incomparable pair of ideals as witness.
pub fn ideals_totally_ordered(ring: &Ring, budget: &Budget) -> Result<(bool, Option<(Ideal, Ideal)>)> {
    let lat = IdealLattice::new(ring, budget)?;
    Ok(match lat.chain_witness() {
        None => (true, None),
        Some((x, y)) => (
            false,
            Some((lat.ideal(lat.principal(x)), lat.ideal(lat.principal(y)))),
        ),
    })
}
