use crate::budget::Budget;
use crate::construct::{hom_expr, mk_product, mk_quotient, mk_subring, ProductRing};
use crate::error::{Result, RingError};
use crate::hom::RingHom;
use crate::report::Check;
use crate::ring::{same_ring, Ring};

use super::AmalgamatedRing;

/// `ρ ×_C σ = {(a, b) : ρ(a) = σ(b)} ⊆ A × B`.
#[derive(Clone)]
pub struct FiberProduct {
    pub rho: RingHom,
    pub sigma: RingHom,
    pub product: ProductRing,
    pub carrier: Ring,
    pub inclusion: RingHom,
    pub p_a: RingHom,
    pub p_b: RingHom,
}

impl std::fmt::Debug for FiberProduct {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiberProduct({})", self.carrier.provenance())
    }
}

pub fn build_fiber_product(rho: &RingHom, sigma: &RingHom, budget: &Budget) -> Result<FiberProduct> {
    let (c1, c2) = (rho.target(), sigma.target());
    if !same_ring(c1, c2) && !c1.same_tables(c2) {
        return Err(RingError::RingMismatch(
            "fiber product needs homomorphisms with a common target".into(),
        ));
    }
    let (a, b) = (rho.source(), sigma.source());
    let product = mk_product(a, b, budget)?;
    let nb = b.size();
    let mut members = product.ring.empty_set();
    for x in a.elements() {
        for y in b.elements() {
            if rho.apply(x) == sigma.apply(y) {
                members.insert(x * nb + y);
            }
        }
    }
    let provenance = format!("(fiber {} {})", hom_expr(rho), hom_expr(sigma));
    let (carrier, inclusion) = mk_subring(&product.ring, &members, provenance)?;
    let p_a = inclusion.then(&product.proj1)?;
    let p_b = inclusion.then(&product.proj2)?;

    let pair = |x: usize| (inclusion.apply(x) / nb, inclusion.apply(x) % nb);
    let ker_sigma = sigma.kernel();
    let ker_rho = rho.kernel();
    let expect_a = carrier.set_of(carrier.elements().filter(|&x| {
        let (u, v) = pair(x);
        u == a.zero() && ker_sigma.contains(v)
    }));
    let expect_b = carrier.set_of(carrier.elements().filter(|&x| {
        let (u, v) = pair(x);
        v == b.zero() && ker_rho.contains(u)
    }));
    if p_a.kernel().members() != &expect_a || p_b.kernel().members() != &expect_b {
        return Err(RingError::Defect(format!(
            "projection kernels of {} differ from {{0}}×Ker(σ) and Ker(ρ)×{{0}}",
            carrier.provenance()
        )));
    }
    Ok(FiberProduct {
        rho: rho.clone(),
        sigma: sigma.clone(),
        product,
        carrier,
        inclusion,
        p_a,
        p_b,
    })
}

/// Builds `f̌ ×_{B/𝔟} π` with `π: B → B/𝔟`, `f̌ = π ∘ f`, and compares it with
/// the amalgamation element for element inside `A × B`.
pub fn fiberproduct_identity_check(
    amalg: &AmalgamatedRing,
    budget: &Budget,
) -> Result<(FiberProduct, Check)> {
    let pi = mk_quotient(amalg.ideal())?.projection;
    let f_check = amalg.f().then(&pi)?;
    let fp = build_fiber_product(&f_check, &pi, budget)?;
    let ours: Vec<usize> = amalg.carrier.elements().map(|x| amalg.inclusion.apply(x)).collect();
    let theirs: Vec<usize> = fp.carrier.elements().map(|x| fp.inclusion.apply(x)).collect();
    let check = if ours == theirs {
        Check::direct(
            "carrier = f̌ ×_{B/𝔟} π",
            true,
            format!("{} elements equal", ours.len()),
        )
    } else {
        let extra = ours.iter().find(|x| !theirs.contains(x));
        let missing = theirs.iter().find(|x| !ours.contains(x));
        let name = |i: Option<&usize>| i.map(|&i| amalg.product.ring.name(i).to_string());
        Check::direct(
            "carrier = f̌ ×_{B/𝔟} π",
            false,
            format!(
                "only in amalgamation: {:?}; only in fiber product: {:?}",
                name(extra),
                name(missing)
            ),
        )
    };
    Ok((fp, check))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::mk_zmod;
    use crate::iso::find_isomorphism;

    const B: Budget = Budget::DEFAULT;

    #[test]
    fn e2_identity() {
        let am = super::super::tests::e2();
        let (fp, check) = fiberproduct_identity_check(&am, &B).unwrap();
        assert!(check.ok, "{check:?}");
        assert!(fp.rho.is_injective());
    }

    #[test]
    fn diagonal_of_identities() {
        let z4 = mk_zmod(4, &B).unwrap();
        let id = RingHom::identity(&z4);
        let fp = build_fiber_product(&id, &id, &B).unwrap();
        assert_eq!(fp.carrier.size(), 4);
        assert!(find_isomorphism(&fp.carrier, &z4, &B).unwrap().is_some());
    }

    #[test]
    fn target_mismatch() {
        let z2 = mk_zmod(2, &B).unwrap();
        let z3 = mk_zmod(3, &B).unwrap();
        let r = RingHom::identity(&z2);
        let s = RingHom::identity(&z3);
        assert!(matches!(
            build_fiber_product(&r, &s, &B),
            Err(RingError::RingMismatch(_))
        ));
    }
}
