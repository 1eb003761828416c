//! Gauss polynomials: a bounded brute-force oracle over `c(fg) = c(f)c(g)`
//! and the local two-generator criterion.

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{budget as over_budget, Result, RingError};
use crate::lattice::IdealLattice;
use crate::poly::PolyOverRing;
use crate::ring::{same_ring, Ring};

/// Coefficient vector of length `d + 1` for the `code`-th polynomial.
fn decode(code: u64, n: u64, d: usize) -> Vec<usize> {
    let mut c = Vec::with_capacity(d + 1);
    let mut x = code;
    for _ in 0..=d {
        c.push((x % n) as usize);
        x /= n;
    }
    c
}

fn count(n: u64, d: usize) -> Option<u64> {
    n.checked_pow(d as u32 + 1)
}

struct Sweep<'a> {
    lat: &'a IdealLattice,
    ring: &'a Ring,
}

impl Sweep<'_> {
    fn content(&self, coeffs: &[usize]) -> usize {
        self.lat.generated(coeffs.iter().copied())
    }

    /// First `g` (in code order) with `c(pg) ≠ c(p)c(g)`.
    fn first_failure(&self, p: &[usize], g_codes: u64, d: usize) -> Option<Vec<usize>> {
        let r = self.ring;
        let n = r.size() as u64;
        let cp = self.content(p);
        let mut prod = vec![r.zero(); p.len() + d];
        for code in 0..g_codes {
            let g = decode(code, n, d);
            prod.iter_mut().for_each(|c| *c = r.zero());
            for (i, &a) in p.iter().enumerate() {
                if a == r.zero() {
                    continue;
                }
                for (j, &b) in g.iter().enumerate() {
                    prod[i + j] = r.add(prod[i + j], r.mul(a, b));
                }
            }
            let lhs = self.content(&prod);
            let rhs = self.lat.product(cp, self.content(&g));
            if lhs != rhs {
                return Some(g);
            }
        }
        None
    }
}

/// Checks `c(pg) = c(p)c(g)` for every `g` of degree ≤ `d`. Returns the first
/// failing `g`; `None` only certifies the bounded range.
pub fn is_gauss_polynomial(
    p: &PolyOverRing,
    d: usize,
    budget: &Budget,
) -> Result<Option<PolyOverRing>> {
    let r = p.ring();
    let n = r.size() as u64;
    let g_codes = count(n, d).filter(|&c| c <= budget.gauss_pairs).ok_or_else(|| {
        over_budget(
            "Gauss polynomial sweep",
            (n as u128).saturating_pow(d as u32 + 1),
            budget.gauss_pairs as u128,
        )
    })?;
    let lat = IdealLattice::new(r, budget)?;
    let sweep = Sweep { lat: &lat, ring: r };
    match sweep.first_failure(p.coeffs(), g_codes, d) {
        Some(g) => Ok(Some(PolyOverRing::new(r, g)?)),
        None => Ok(None),
    }
}

/// Outcome of the all-pairs bounded oracle.
#[derive(Debug, Clone, Serialize)]
pub struct GaussOracle {
    pub requested_degree: usize,
    pub degree: usize,
    /// The requested degree did not fit the pair budget.
    pub reduced: bool,
    pub pairs: u64,
    /// `(p, g)` with `c(pg) ≠ c(p)c(g)`, first in code order.
    pub refutation: Option<(String, String)>,
    #[serde(skip)]
    pub refuting_pair: Option<(PolyOverRing, PolyOverRing)>,
}

/// Largest `d ≤ requested` with `|R|^(2(d+1)) ≤ cap`.
pub fn oracle_degree(n: usize, requested: usize, cap: u64) -> Option<usize> {
    (0..=requested).rev().find(|&d| {
        count(n as u64, d)
            .and_then(|c| c.checked_mul(c))
            .is_some_and(|pairs| pairs <= cap)
    })
}

/// Sweeps all `p, g` of degree ≤ `d`. With `refute` the larger refutation cap
/// applies and the sweep stops at the first failure.
pub fn gauss_oracle(
    ring: &Ring,
    lat: &IdealLattice,
    requested: usize,
    refute: bool,
    budget: &Budget,
) -> Result<GaussOracle> {
    if !same_ring(lat.ring(), ring) {
        return Err(RingError::RingMismatch("lattice of another ring".into()));
    }
    let n = ring.size();
    let cap = if refute {
        budget.gauss_refutation_pairs
    } else {
        budget.gauss_pairs
    };
    let d = oracle_degree(n, requested, cap).ok_or_else(|| {
        over_budget("Gauss oracle pairs", (n as u128).pow(2), cap as u128)
    })?;
    let codes = count(n as u64, d).expect("fits by oracle_degree");
    let sweep = Sweep { lat, ring };
    let found = (0..codes).into_par_iter().find_map_first(|code| {
        let p = decode(code, n as u64, d);
        sweep.first_failure(&p, codes, d).map(|g| (p, g))
    });
    let refuting_pair = match found {
        Some((p, g)) => Some((PolyOverRing::new(ring, p)?, PolyOverRing::new(ring, g)?)),
        None => None,
    };
    Ok(GaussOracle {
        requested_degree: requested,
        degree: d,
        reduced: d < requested,
        pairs: codes * codes,
        refutation: refuting_pair
            .as_ref()
            .map(|(p, g)| (p.to_string(), g.to_string())),
        refuting_pair,
    })
}

/// For every polynomial code of degree ≤ `d`: does it pass the bounded
/// oracle against every `g` of degree ≤ `d`? Errors when `|R|^(2(d+1))`
/// exceeds the pair budget.
pub fn certified_gauss(lat: &IdealLattice, d: usize, budget: &Budget) -> Result<Vec<bool>> {
    let ring = lat.ring();
    let n = ring.size();
    if oracle_degree(n, d, budget.gauss_pairs) != Some(d) {
        let c = (n as u128).saturating_pow(2 * (d as u32 + 1));
        return Err(over_budget("Gauss certification pairs", c, budget.gauss_pairs as u128));
    }
    let codes = count(n as u64, d).expect("fits by oracle_degree");
    let sweep = Sweep { lat, ring };
    Ok((0..codes)
        .into_par_iter()
        .map(|code| sweep.first_failure(&decode(code, n as u64, d), codes, d).is_none())
        .collect())
}

/// Index of a coefficient vector of length `d + 1` in code order.
pub fn encode(coeffs: &[usize], n: usize) -> u64 {
    coeffs.iter().rev().fold(0u64, |acc, &c| acc * n as u64 + c as u64)
}

/// Coefficient vector of length `d + 1` for `code`.
pub fn decode_code(code: u64, n: usize, d: usize) -> Vec<usize> {
    decode(code, n as u64, d)
}

/// The two-generator criterion on a local ring, phrased on the lattice of
/// that ring: `(a,b)² = (a²)` or `(b²)`, and `(a,b)² = (a²), ab = 0 ⟹ b² = 0`.
pub fn criterion_holds(lat: &IdealLattice, a: usize, b: usize) -> bool {
    let r = lat.ring();
    let i = lat.generated([a, b]);
    let sq = lat.product(i, i);
    let a2 = lat.principal(r.mul(a, a));
    let b2 = lat.principal(r.mul(b, b));
    if sq != a2 && sq != b2 {
        return false;
    }
    let ab_zero = r.mul(a, b) == r.zero();
    if ab_zero && sq == a2 && r.mul(b, b) != r.zero() {
        return false;
    }
    if ab_zero && sq == b2 && r.mul(a, a) != r.zero() {
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{mk_truncated_poly, mk_zmod};

    const B: Budget = Budget::DEFAULT;

    #[test]
    fn r63_refutation_at_degree_one() {
        let r = mk_truncated_poly(2, 2, 3, &B).unwrap();
        let p = PolyOverRing::from_names(&r, &["v", "u"]).unwrap();
        assert_eq!(p.to_string(), "uX+v");
        let g = is_gauss_polynomial(&p, 1, &B).unwrap().expect("uX+v is not Gauss");
        // the witness satisfies c(pg) ⊊ c(p)c(g)
        let lat = IdealLattice::new(&r, &B).unwrap();
        let pg = p.mul(&g).unwrap();
        let lhs = lat.generated(pg.coeffs().iter().copied());
        let rhs = lat.product(
            lat.generated(p.coeffs().iter().copied()),
            lat.generated(g.coeffs().iter().copied()),
        );
        assert!(lat.le(lhs, rhs) && lhs != rhs);

        let vx_u = PolyOverRing::from_names(&r, &["u", "v"]).unwrap();
        let c = lat.generated(p.mul(&vx_u).unwrap().coeffs().iter().copied());
        let u2 = r.mul(2, 2);
        assert!(!lat.set(c).contains(u2));
    }

    #[test]
    fn trivial_polynomials() {
        let z4 = mk_zmod(4, &B).unwrap();
        let one = PolyOverRing::new(&z4, vec![1]).unwrap();
        assert!(is_gauss_polynomial(&one, 2, &B).unwrap().is_none());
        let zero = PolyOverRing::zero(&z4);
        assert!(is_gauss_polynomial(&zero, 2, &B).unwrap().is_none());
    }

    #[test]
    fn degree_selection() {
        assert_eq!(oracle_degree(64, 2, 1 << 26), Some(1));
        assert_eq!(oracle_degree(6, 2, 1 << 26), Some(2));
        assert_eq!(oracle_degree(64, 2, 1 << 31), Some(1));
    }
}
