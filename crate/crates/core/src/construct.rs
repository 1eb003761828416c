//! Ring factories. Each one fixes a canonical element ordering, so the same
//! construction expression always yields bit-identical tables.

use std::sync::Arc;

use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Result, RingError};
use crate::hom::{mk_hom, RingHom};
use crate::ideal::Ideal;
use crate::poly::{format_univariate, PolyOverRing};
use crate::ring::{same_ring, ElementSet, FiniteRing, Ring};

pub(crate) fn build_tables<A, M>(n: usize, add: A, mul: M) -> (Vec<u32>, Vec<u32>)
where
    A: Fn(usize, usize) -> usize + Sync,
    M: Fn(usize, usize) -> usize + Sync,
{
    let row = |f: &(dyn Fn(usize, usize) -> usize + Sync)| -> Vec<u32> {
        let mut t = vec![0u32; n * n];
        t.par_chunks_mut(n.max(1)).enumerate().for_each(|(a, chunk)| {
            for (b, slot) in chunk.iter_mut().enumerate() {
                *slot = f(a, b) as u32;
            }
        });
        t
    };
    (row(&add), row(&mul))
}

/// Integers modulo `n`; element `i` is the residue `i`.
pub fn mk_zmod(n: usize, budget: &Budget) -> Result<Ring> {
    if n == 0 {
        return Err(RingError::InvalidParameter("zmod: n must be >= 1".into()));
    }
    budget.check_ring("zmod", n as u128)?;
    let (add, mul) = build_tables(n, |a, b| (a + b) % n, |a, b| (a * b) % n);
    let names = (0..n).map(|i| i.to_string()).collect();
    Ok(Arc::new(FiniteRing::from_tables(
        add,
        mul,
        0,
        1 % n,
        names,
        format!("(zmod {n})"),
    )?))
}

/// A product ring with its two projections.
#[derive(Debug, Clone)]
pub struct ProductRing {
    pub ring: Ring,
    pub proj1: RingHom,
    pub proj2: RingHom,
}

/// `R1 × R2`, with `(i, j)` stored at index `i·|R2| + j`.
pub fn mk_product(r1: &Ring, r2: &Ring, budget: &Budget) -> Result<ProductRing> {
    let (n1, n2) = (r1.size(), r2.size());
    budget.check_ring("product", n1 as u128 * n2 as u128)?;
    let n = n1 * n2;
    let split = |x: usize| (x / n2, x % n2);
    let (add, mul) = build_tables(
        n,
        |x, y| {
            let ((a, b), (c, d)) = (split(x), split(y));
            r1.add(a, c) * n2 + r2.add(b, d)
        },
        |x, y| {
            let ((a, b), (c, d)) = (split(x), split(y));
            r1.mul(a, c) * n2 + r2.mul(b, d)
        },
    );
    let names = (0..n)
        .map(|x| {
            let (a, b) = split(x);
            format!("[{},{}]", r1.name(a), r2.name(b))
        })
        .collect();
    let ring = Arc::new(FiniteRing::from_tables(
        add,
        mul,
        r1.zero() * n2 + r2.zero(),
        r1.one() * n2 + r2.one(),
        names,
        format!("(product {} {})", r1.provenance(), r2.provenance()),
    )?);
    let proj1 = mk_hom(&ring, r1, (0..n).map(|x| x / n2).collect())?;
    let proj2 = mk_hom(&ring, r2, (0..n).map(|x| x % n2).collect())?;
    Ok(ProductRing { ring, proj1, proj2 })
}

/// `R[x]/(modulus)` for a monic modulus of degree `d ≥ 1`. The coefficient
/// vector `(c0, …, c_{d-1})` sits at index `Σ cᵢ·|R|ⁱ`.
pub fn mk_poly_quot(modulus: &PolyOverRing, budget: &Budget) -> Result<Ring> {
    let r = modulus.ring();
    let d = match modulus.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(RingError::InvalidParameter(
                "polyquot: modulus must have degree >= 1".into(),
            ))
        }
    };
    if !modulus.is_monic() {
        return Err(RingError::InvalidParameter(
            "polyquot: modulus must be monic".into(),
        ));
    }
    let q = r.size();
    let size = (q as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    budget.check_ring("polyquot", size)?;
    let n = size as usize;
    let m = modulus.coeffs();

    let digits = |mut x: usize| -> Vec<usize> {
        (0..d)
            .map(|_| {
                let c = x % q;
                x /= q;
                c
            })
            .collect()
    };
    let encode = |c: &[usize]| c.iter().rev().fold(0usize, |acc, &ci| acc * q + ci);

    let add = |x: usize, y: usize| {
        let (a, b) = (digits(x), digits(y));
        let c: Vec<usize> = a.iter().zip(&b).map(|(&s, &t)| r.add(s, t)).collect();
        encode(&c)
    };
    let mul = |x: usize, y: usize| {
        let (a, b) = (digits(x), digits(y));
        let mut c = vec![r.zero(); 2 * d - 1];
        for i in 0..d {
            for j in 0..d {
                c[i + j] = r.add(c[i + j], r.mul(a[i], b[j]));
            }
        }
        // x^d = -(m_0 + … + m_{d-1} x^{d-1})
        for k in (d..2 * d - 1).rev() {
            let lead = c[k];
            if lead == r.zero() {
                continue;
            }
            c[k] = r.zero();
            for (i, &mi) in m.iter().enumerate().take(d) {
                let t = k - d + i;
                c[t] = r.sub(c[t], r.mul(lead, mi));
            }
        }
        encode(&c[..d])
    };
    let (add_t, mul_t) = build_tables(n, add, mul);
    let names = (0..n)
        .map(|x| {
            let ds = digits(x);
            let cn: Vec<&str> = ds.iter().map(|&c| r.name(c)).collect();
            format_univariate(&cn, r.name(r.one()), r.name(r.zero()), "x")
        })
        .collect();
    let coeff_names: Vec<&str> = m.iter().map(|&c| r.name(c)).collect();
    Ok(Arc::new(FiniteRing::from_tables(
        add_t,
        mul_t,
        r.zero(),
        r.one(),
        names,
        format!(
            "(polyquot {} (poly {}))",
            r.provenance(),
            coeff_names.join(" ")
        ),
    )?))
}

pub(crate) fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k: usize| !p.is_multiple_of(k))
}

/// Exponent vectors of total degree `< d` in `k` variables, graded first
/// and then lexicographically with `x1` the largest variable.
pub(crate) fn graded_lex_monomials(k: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, total: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k - 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=total).rev() {
            prefix.push(e);
            rec(k, total - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for total in 0..d {
        rec(k, total, &mut Vec::new(), &mut out);
    }
    out
}

fn variable_names(k: usize) -> Vec<String> {
    match k {
        1 => vec!["x".into()],
        2 | 3 => ["u", "v", "w"][..k].iter().map(|s| s.to_string()).collect(),
        _ => (1..=k).map(|i| format!("x{i}")).collect(),
    }
}

fn monomial_name(exps: &[usize], vars: &[String]) -> String {
    let sep = if vars.len() > 3 { "*" } else { "" };
    let parts: Vec<String> = exps
        .iter()
        .zip(vars)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect();
    parts.join(sep)
}

/// `F_p[x₁, …, x_k] / (x₁, …, x_k)^d`, coefficients over monomials of total
/// degree `< d` in graded-lex order, index `Σ cᵢ·pⁱ`.
///
/// Variables are named `x` (one variable), `u, v, w` (two or three), or
/// `x1 … xk`.
pub fn mk_truncated_poly(p: usize, k: usize, d: usize, budget: &Budget) -> Result<Ring> {
    if !is_prime(p) {
        return Err(RingError::InvalidParameter(format!(
            "truncpoly: {p} is not prime"
        )));
    }
    if k == 0 || d == 0 {
        return Err(RingError::InvalidParameter(
            "truncpoly: k and d must be >= 1".into(),
        ));
    }
    // number of monomials of degree < d in k variables is C(k+d-1, k)
    let mut count: u128 = 1;
    for i in 1..=k as u128 {
        count = count * (d as u128 - 1 + i) / i;
    }
    let size = if count >= 128 {
        u128::MAX
    } else {
        (p as u128).checked_pow(count as u32).unwrap_or(u128::MAX)
    };
    budget.check_ring("truncpoly", size)?;
    let monos = graded_lex_monomials(k, d);
    debug_assert_eq!(monos.len() as u128, count);
    let m = monos.len();
    let n = size as usize;
    let index_of_mono = |e: &[usize]| monos.iter().position(|x| x == e);
    // product table on monomials: None when the degree overflows
    let mono_mul: Vec<Option<usize>> = (0..m * m)
        .map(|ij| {
            let (i, j) = (ij / m, ij % m);
            let e: Vec<usize> = monos[i].iter().zip(&monos[j]).map(|(a, b)| a + b).collect();
            index_of_mono(&e)
        })
        .collect();
    let digits = |mut x: usize| -> Vec<usize> {
        (0..m)
            .map(|_| {
                let c = x % p;
                x /= p;
                c
            })
            .collect()
    };
    let encode = |c: &[usize]| c.iter().rev().fold(0usize, |acc, &ci| acc * p + ci);
    let add = |x: usize, y: usize| {
        let (a, b) = (digits(x), digits(y));
        let c: Vec<usize> = a.iter().zip(&b).map(|(s, t)| (s + t) % p).collect();
        encode(&c)
    };
    let mul = |x: usize, y: usize| {
        let (a, b) = (digits(x), digits(y));
        let mut c = vec![0usize; m];
        for i in 0..m {
            if a[i] == 0 {
                continue;
            }
            for j in 0..m {
                if let Some(t) = mono_mul[i * m + j] {
                    c[t] = (c[t] + a[i] * b[j]) % p;
                }
            }
        }
        encode(&c)
    };
    let (add_t, mul_t) = build_tables(n, add, mul);
    let vars = variable_names(k);
    let names = (0..n)
        .map(|x| {
            let ds = digits(x);
            let mut terms = Vec::new();
            for (i, &c) in ds.iter().enumerate().rev() {
                if c == 0 {
                    continue;
                }
                let mono = monomial_name(&monos[i], &vars);
                terms.push(match (mono.is_empty(), c) {
                    (true, _) => c.to_string(),
                    (false, 1) => mono,
                    (false, _) => format!("{c}{mono}"),
                });
            }
            if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join("+")
            }
        })
        .collect();
    Ok(Arc::new(FiniteRing::from_tables(
        add_t,
        mul_t,
        0,
        1,
        names,
        format!("(truncpoly {p} {k} {d})"),
    )?))
}

/// A quotient ring with its canonical projection.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    pub ring: Ring,
    pub projection: RingHom,
    pub ideal: Ideal,
}

/// `R/I`; cosets are ordered by their least member index and named `[rep]`.
pub fn mk_quotient(ideal: &Ideal) -> Result<QuotientRing> {
    let r = ideal.ring();
    // re-validate: callers may hand in sets built elsewhere
    let ideal = Ideal::from_members(r, ideal.members().clone())?;
    let members: Vec<usize> = ideal.member_list();
    let mut rep_of = vec![usize::MAX; r.size()];
    let mut reps = Vec::new();
    for x in r.elements() {
        if rep_of[x] != usize::MAX {
            continue;
        }
        // x is the least member of its coset because we scan ascending
        let class = reps.len();
        reps.push(x);
        for &i in &members {
            rep_of[r.add(x, i)] = class;
        }
    }
    let n = reps.len();
    let (add, mul) = build_tables(
        n,
        |a, b| rep_of[r.add(reps[a], reps[b])],
        |a, b| rep_of[r.mul(reps[a], reps[b])],
    );
    let names = reps.iter().map(|&x| format!("[{}]", r.name(x))).collect();
    let ring = Arc::new(FiniteRing::from_tables(
        add,
        mul,
        rep_of[r.zero()],
        rep_of[r.one()],
        names,
        format!("(quot {} {})", r.provenance(), ideal_expr(&ideal)),
    )?);
    let projection = mk_hom(r, &ring, rep_of.clone())?;
    if projection.kernel() != ideal {
        return Err(RingError::Defect("quotient projection kernel differs from I".into()));
    }
    Ok(QuotientRing {
        ring,
        projection,
        ideal,
    })
}

/// The grammar expression for an ideal via its recovered generators.
pub fn ideal_expr(ideal: &Ideal) -> String {
    let r = ideal.ring();
    let mut s = format!("(ideal {}", r.provenance());
    for &g in ideal.generators() {
        s.push(' ');
        s.push_str(r.name(g));
    }
    s.push(')');
    s
}

/// The grammar expression for a homomorphism as an explicit image list.
pub fn hom_expr(f: &RingHom) -> String {
    let t = f.target();
    let images: Vec<&str> = f.source().elements().map(|a| t.name(f.apply(a))).collect();
    format!(
        "(hom {} {} (images {}))",
        f.source().provenance(),
        t.provenance(),
        images.join(" ")
    )
}

/// The map `R/I → T` induced by `h: R → T`; fails unless `I ⊆ ker h`.
pub fn induced_map(q: &QuotientRing, h: &RingHom) -> Result<RingHom> {
    let p = &q.projection;
    if !same_ring(p.source(), h.source()) {
        return Err(RingError::RingMismatch("induced map needs a common source".into()));
    }
    let mut map = vec![usize::MAX; q.ring.size()];
    for x in p.source().elements() {
        let c = p.apply(x);
        if map[c] == usize::MAX {
            map[c] = h.apply(x);
        } else if map[c] != h.apply(x) {
            return Err(RingError::NotAHomomorphism(format!(
                "{} is not constant on the coset of {}",
                h.target().name(h.apply(x)),
                p.source().name(x)
            )));
        }
    }
    mk_hom(&q.ring, h.target(), map)
}

/// The subring on `members` (ascending index order, parent names kept) and
/// its inclusion into the parent.
pub fn mk_subring(parent: &Ring, members: &ElementSet, provenance: String) -> Result<(Ring, RingHom)> {
    let elems: Vec<usize> = members.ones().collect();
    let mut pos = vec![usize::MAX; parent.size()];
    for (i, &e) in elems.iter().enumerate() {
        pos[e] = i;
    }
    for (what, e) in [("0", parent.zero()), ("1", parent.one())] {
        if pos[e] == usize::MAX {
            return Err(RingError::InvalidParameter(format!(
                "subring candidate misses {what}"
            )));
        }
    }
    for &a in &elems {
        for &b in &elems {
            if pos[parent.add(a, b)] == usize::MAX || pos[parent.mul(a, b)] == usize::MAX {
                return Err(RingError::InvalidParameter(format!(
                    "subring candidate not closed at ({}, {})",
                    parent.name(a),
                    parent.name(b)
                )));
            }
        }
    }
    let n = elems.len();
    let (add, mul) = build_tables(
        n,
        |a, b| pos[parent.add(elems[a], elems[b])],
        |a, b| pos[parent.mul(elems[a], elems[b])],
    );
    let names = elems.iter().map(|&e| parent.name(e).to_string()).collect();
    let ring = Arc::new(FiniteRing::from_tables(
        add,
        mul,
        pos[parent.zero()],
        pos[parent.one()],
        names,
        provenance,
    )?);
    let incl = mk_hom(&ring, parent, elems)?;
    Ok((ring, incl))
}

/// The image `f(A)` as a ring, with its inclusion into the target.
pub fn image_ring(f: &RingHom) -> Result<(Ring, RingHom)> {
    mk_subring(
        f.target(),
        &f.image_set(),
        format!("(image of {} in {})", f.source().provenance(), f.target().provenance()),
    )
}

/// Corestriction of `f` onto a subring given by its inclusion.
pub fn corestrict(f: &RingHom, incl: &RingHom) -> Result<RingHom> {
    if !same_ring(f.target(), incl.target()) {
        return Err(RingError::RingMismatch("corestriction target mismatch".into()));
    }
    let mut pos = vec![usize::MAX; f.target().size()];
    for x in incl.source().elements() {
        pos[incl.apply(x)] = x;
    }
    let map: Vec<usize> = f.source().elements().map(|a| pos[f.apply(a)]).collect();
    if map.contains(&usize::MAX) {
        return Err(RingError::InvalidParameter(
            "image not contained in the subring".into(),
        ));
    }
    mk_hom(f.source(), incl.source(), map)
}

/// The unique homomorphism from `Z/n` (or any ring of characteristic `n`
/// generated by 1) sending `k ↦ k·1`.
pub fn prime_ring_hom(source: &Ring, target: &Ring) -> Result<RingHom> {
    let mut map = vec![usize::MAX; source.size()];
    let (mut x, mut y) = (source.zero(), target.zero());
    loop {
        if map[x] != usize::MAX {
            break;
        }
        map[x] = y;
        x = source.add(x, source.one());
        y = target.add(y, target.one());
    }
    if map.contains(&usize::MAX) {
        return Err(RingError::NotAHomomorphism(
            "source is not generated by 1; no canonical prime-ring map".into(),
        ));
    }
    mk_hom(source, target, map)
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: Budget = Budget::DEFAULT;

    #[test]
    fn zmod_basics() {
        assert!(mk_zmod(0, &B).is_err());
        let z1 = mk_zmod(1, &B).unwrap();
        assert!(z1.is_zero_ring());
        let z4 = mk_zmod(4, &B).unwrap();
        assert_eq!(z4.mul(2, 2), 0);
        assert_eq!(z4.mul(3, 3), 1);
        assert_eq!(z4.names(), &["0", "1", "2", "3"]);
    }

    #[test]
    fn polyquot_field_and_dual_numbers() {
        let z2 = mk_zmod(2, &B).unwrap();
        let f4 = mk_poly_quot(&PolyOverRing::new(&z2, vec![1, 1, 1]).unwrap(), &B).unwrap();
        assert_eq!(f4.size(), 4);
        assert!((1..4).all(|a| f4.is_unit(a)));
        let d2 = mk_poly_quot(&PolyOverRing::new(&z2, vec![0, 0, 1]).unwrap(), &B).unwrap();
        let x = d2.index_of("x").unwrap();
        assert_eq!(d2.mul(x, x), d2.zero());
        assert_eq!(d2.names(), &["0", "1", "x", "x+1"]);
        assert_eq!(d2.provenance(), "(polyquot (zmod 2) (poly 0 0 1))");
        let non_monic = PolyOverRing::new(&mk_zmod(4, &B).unwrap(), vec![1, 2]).unwrap();
        assert!(mk_poly_quot(&non_monic, &B).is_err());
    }

    #[test]
    fn truncpoly_r63_shape() {
        let r = mk_truncated_poly(2, 2, 3, &B).unwrap();
        assert_eq!(r.size(), 64);
        let (u, v) = (r.index_of("u").unwrap(), r.index_of("v").unwrap());
        assert_eq!((u, v), (2, 4));
        assert_eq!(r.name(r.mul(u, v)), "uv");
        assert_eq!(r.mul(r.mul(u, v), u), 0);
        assert_eq!(graded_lex_monomials(2, 3), vec![
            vec![0, 0],
            vec![1, 0],
            vec![0, 1],
            vec![2, 0],
            vec![1, 1],
            vec![0, 2]
        ]);
        assert!(mk_truncated_poly(4, 1, 2, &B).is_err());
        assert!(mk_truncated_poly(2, 4, 4, &B).is_err());
    }

    #[test]
    fn product_and_quotient() {
        let z4 = mk_zmod(4, &B).unwrap();
        let z2 = mk_zmod(2, &B).unwrap();
        let p = mk_product(&z4, &z2, &B).unwrap();
        assert_eq!(p.ring.size(), 8);
        assert!(p.proj1.is_surjective());
        assert_eq!(p.proj1.kernel().len(), 2);
        let i = Ideal::generate(&z4, &[2]).unwrap();
        let q = mk_quotient(&i).unwrap();
        assert_eq!(q.ring.size(), 2);
        assert_eq!(q.ring.names(), &["[0]", "[1]"]);
        assert_eq!(q.projection.kernel(), i);
        let unit = mk_quotient(&Ideal::unit(&z4)).unwrap();
        assert!(unit.ring.is_zero_ring());
    }

    #[test]
    fn quotient_rejects_non_ideal() {
        let z4 = mk_zmod(4, &B).unwrap();
        let bad = Ideal::from_members(&z4, z4.set_of([0, 1]));
        assert!(bad.is_err());
    }

    #[test]
    fn prime_ring_maps() {
        let z4 = mk_zmod(4, &B).unwrap();
        let z2 = mk_zmod(2, &B).unwrap();
        let f = prime_ring_hom(&z4, &z2).unwrap();
        assert_eq!(f.map(), vec![0, 1, 0, 1]);
        assert!(prime_ring_hom(&z2, &z4).is_err());
    }
}
