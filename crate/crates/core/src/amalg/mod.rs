//! The amalgamation `A ⋈^f 𝔟 = {(a, f(a) + b) : a ∈ A, b ∈ 𝔟} ⊆ A × B` and
//! its structure: projections, quotient isomorphisms, fiber-product form,
//! spectrum and localizations.

mod fiber;
mod local;
mod spec;

pub use fiber::{build_fiber_product, fiberproduct_identity_check, FiberProduct};
pub use local::{
    localize_amalg_at_prime, localized_data, LocalizationIsoReport, LocalizedAmalgData, PrimeKind,
};
pub use spec::{is_local_amalg, prime_bar, prime_lift, spectrum_transfer, LocalityReport, SpectrumTransfer};

use crate::budget::Budget;
use crate::construct::{
    corestrict, hom_expr, ideal_expr, induced_map, mk_product, mk_quotient, mk_subring,
    ProductRing, QuotientRing,
};
use crate::error::{Result, RingError};
use crate::hom::{mk_hom, RingHom};
use crate::ideal::Ideal;
use crate::lattice::IdealLattice;
use crate::report::Check;
use crate::ring::{same_ring, ElementSet, Ring};

/// `f: A → B` together with an ideal `𝔟` of `B`.
#[derive(Clone, Debug)]
pub struct AmalgamationSpec {
    pub f: RingHom,
    pub ideal: Ideal,
}

impl AmalgamationSpec {
    pub fn new(f: RingHom, ideal: Ideal) -> Result<AmalgamationSpec> {
        if !same_ring(f.target(), ideal.ring()) {
            return Err(RingError::RingMismatch(
                "the ideal must live in the target of f".into(),
            ));
        }
        Ok(AmalgamationSpec { f, ideal })
    }

    pub fn a(&self) -> &Ring {
        self.f.source()
    }

    pub fn b(&self) -> &Ring {
        self.f.target()
    }
}

#[derive(Clone)]
pub struct AmalgamatedRing {
    pub spec: AmalgamationSpec,
    pub product: ProductRing,
    pub carrier: Ring,
    /// Carrier → `A × B`.
    pub inclusion: RingHom,
    pub iota: RingHom,
    pub p_a: RingHom,
    pub p_b: RingHom,
    /// `f(A) + 𝔟` as a subring of `B`, with its inclusion.
    pub image: (Ring, RingHom),
    /// `(f(A) + 𝔟)/𝔟`.
    pub gamma_target: QuotientRing,
    pub gamma: RingHom,
    /// `{0} × 𝔟`.
    pub b0: Ideal,
    /// `f⁻¹(𝔟)`.
    pub contraction: Ideal,
    /// `f⁻¹(𝔟) × 𝔟` as an ideal of `A × B`.
    pub conductor: Ideal,
    /// The same set as an ideal of the carrier.
    pub conductor_in_carrier: Ideal,
    pair_of: Vec<(usize, usize)>,
    position: Vec<u32>,
}

const ABSENT: u32 = u32::MAX;

impl std::fmt::Debug for AmalgamatedRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AmalgamatedRing({})", self.carrier.provenance())
    }
}

impl AmalgamatedRing {
    pub fn a(&self) -> &Ring {
        self.spec.a()
    }

    pub fn b(&self) -> &Ring {
        self.spec.b()
    }

    pub fn f(&self) -> &RingHom {
        &self.spec.f
    }

    pub fn ideal(&self) -> &Ideal {
        &self.spec.ideal
    }

    /// `(a, b)` components of a carrier element.
    pub fn pair(&self, x: usize) -> (usize, usize) {
        self.pair_of[x]
    }

    pub fn index_of_pair(&self, a: usize, b: usize) -> Option<usize> {
        let i = self.position[a * self.b().size() + b];
        (i != ABSENT).then_some(i as usize)
    }

    /// Carrier elements whose components satisfy `keep`.
    pub fn select(&self, keep: impl Fn(usize, usize) -> bool) -> ElementSet {
        self.carrier
            .set_of(self.carrier.elements().filter(|&x| keep(self.pair_of[x].0, self.pair_of[x].1)))
    }
}

fn defect(what: &str, spec: &AmalgamationSpec) -> RingError {
    RingError::Defect(format!(
        "{what} for the amalgamation of {} along {}",
        hom_expr(&spec.f),
        ideal_expr(&spec.ideal)
    ))
}

/// Builds the carrier and checks every structural invariant.
pub fn build_amalgamation(spec: &AmalgamationSpec, budget: &Budget) -> Result<AmalgamatedRing> {
    let provenance = format!(
        "(amalg {} {} {} {})",
        spec.a().provenance(),
        spec.b().provenance(),
        hom_expr(&spec.f),
        ideal_expr(&spec.ideal)
    );
    build_with_provenance(spec, provenance, budget)
}

/// `A ⋈ 𝔞`: the amalgamation of the identity of `A` along `𝔞`.
pub fn duplication(ideal: &Ideal, budget: &Budget) -> Result<AmalgamatedRing> {
    let a = ideal.ring();
    let spec = AmalgamationSpec::new(RingHom::identity(a), ideal.clone())?;
    let provenance = format!("(dup {} {})", a.provenance(), ideal_expr(ideal));
    build_with_provenance(&spec, provenance, budget)
}

fn build_with_provenance(
    spec: &AmalgamationSpec,
    provenance: String,
    budget: &Budget,
) -> Result<AmalgamatedRing> {
    let (a, b, f, bb) = (spec.a(), spec.b(), &spec.f, &spec.ideal);
    let product = mk_product(a, b, budget)?;
    let nb = b.size();
    let pr = &product.ring;

    let mut members = pr.empty_set();
    for x in a.elements() {
        for beta in bb.members().ones() {
            members.insert(x * nb + b.add(f.apply(x), beta));
        }
    }
    let (carrier, inclusion) = mk_subring(pr, &members, provenance)?;
    if carrier.size() != a.size() * bb.len() {
        return Err(defect("|carrier| ≠ |A|·|𝔟|", spec));
    }
    let pair_of: Vec<(usize, usize)> = carrier
        .elements()
        .map(|x| {
            let i = inclusion.apply(x);
            (i / nb, i % nb)
        })
        .collect();
    let mut position = vec![ABSENT; pr.size()];
    for x in carrier.elements() {
        position[inclusion.apply(x)] = x as u32;
    }

    let iota = mk_hom(
        a,
        &carrier,
        a.elements()
            .map(|x| position[x * nb + f.apply(x)] as usize)
            .collect(),
    )?;
    let p_a = inclusion.then(&product.proj1)?;
    let p_b = inclusion.then(&product.proj2)?;
    if !iota.is_injective() {
        return Err(defect("ι is not injective", spec));
    }
    if a.elements().any(|x| p_a.apply(iota.apply(x)) != x) {
        return Err(defect("p_A ∘ ι ≠ id_A", spec));
    }

    let sel = |keep: &dyn Fn(usize, usize) -> bool| -> ElementSet {
        carrier.set_of(carrier.elements().filter(|&x| keep(pair_of[x].0, pair_of[x].1)))
    };
    let b0 = Ideal::from_members(&carrier, sel(&|x, _| x == a.zero()))?;
    if p_a.kernel() != b0 {
        return Err(defect("Ker(p_A) ≠ {0}×𝔟", spec));
    }
    if !p_a.is_surjective() {
        return Err(defect("p_A is not surjective", spec));
    }
    let contraction = f.preimage_ideal(bb)?;
    let ker_pb = sel(&|x, y| contraction.contains(x) && y == b.zero());
    if p_b.kernel().members() != &ker_pb {
        return Err(defect("Ker(p_B) ≠ f⁻¹(𝔟)×{0}", spec));
    }

    let mut image_set = b.empty_set();
    for x in a.elements() {
        for beta in bb.members().ones() {
            image_set.insert(b.add(f.apply(x), beta));
        }
    }
    if p_b.image_set() != image_set {
        return Err(defect("p_B(carrier) ≠ f(A)+𝔟", spec));
    }
    let image = mk_subring(
        b,
        &image_set,
        format!("(image of {} plus {})", hom_expr(f), ideal_expr(bb)),
    )?;
    let b_in_image = image.1.preimage_ideal(bb)?;
    let gamma_target = mk_quotient(&b_in_image)?;
    let gamma = corestrict(&p_b, &image.1)?.then(&gamma_target.projection)?;
    if !gamma.is_surjective() {
        return Err(defect("γ is not surjective", spec));
    }

    let mut conductor_set = pr.empty_set();
    for x in contraction.members().ones() {
        for beta in bb.members().ones() {
            conductor_set.insert(x * nb + beta);
        }
    }
    if !conductor_set.is_subset(&members) {
        return Err(defect("conductor not contained in the carrier", spec));
    }
    let conductor = Ideal::from_members(pr, conductor_set)?;
    let conductor_in_carrier =
        Ideal::from_members(&carrier, sel(&|x, y| contraction.contains(x) && bb.contains(y)))?;
    if gamma.kernel() != conductor_in_carrier {
        return Err(defect("Ker(γ) ≠ f⁻¹(𝔟)×𝔟", spec));
    }

    Ok(AmalgamatedRing {
        spec: spec.clone(),
        product,
        carrier,
        inclusion,
        iota,
        p_a,
        p_b,
        image,
        gamma_target,
        gamma,
        b0,
        contraction,
        conductor,
        conductor_in_carrier,
        pair_of,
        position,
    })
}

/// Checks that `h` is bijective and names a witness otherwise.
pub(crate) fn bijection_check(name: &str, method: &str, h: &RingHom) -> Check {
    let (s, t) = (h.source(), h.target());
    if let Some(x) = h.kernel().members().ones().find(|&x| x != s.zero()) {
        return Check::new(
            name,
            false,
            method,
            format!("{} lies in the kernel", s.name(x)),
        );
    }
    let image = h.image_set();
    if let Some(y) = t.elements().find(|&y| !image.contains(y)) {
        return Check::new(name, false, method, format!("{} is not hit", t.name(y)));
    }
    Check::new(name, true, method, format!("{} elements matched", s.size()))
}

fn induced_check(name: &str, ideal: &Ideal, h: &RingHom) -> Check {
    match mk_quotient(ideal).and_then(|q| induced_map(&q, h)) {
        Ok(m) => bijection_check(name, "canonical", &m),
        Err(e) => Check::new(name, false, "canonical", e.to_string()),
    }
}

/// `𝔞 ⋈^f 𝔟 = {(a, f(a) + b) : a ∈ 𝔞, b ∈ 𝔟}` with the check that
/// `A → carrier/(𝔞 ⋈^f 𝔟)` induces `A/𝔞 ≅ carrier/(𝔞 ⋈^f 𝔟)`.
pub fn ideal_join(amalg: &AmalgamatedRing, ideal: &Ideal) -> Result<(Ideal, Check)> {
    if !same_ring(ideal.ring(), amalg.a()) {
        return Err(RingError::RingMismatch("ideal_join needs an ideal of A".into()));
    }
    let join = Ideal::from_members(&amalg.carrier, amalg.select(|x, _| ideal.contains(x)))?;
    let q = mk_quotient(&join)?;
    let composite = amalg.iota.then(&q.projection)?;
    let name = format!("A/{ideal} ≅ carrier/({ideal}⋈𝔟)");
    let check = if !composite.is_surjective() {
        Check::new(name, false, "canonical", "A → carrier/𝔞⋈𝔟 is not surjective")
    } else if composite.kernel() != *ideal {
        Check::new(name, false, "canonical", "kernel of A → carrier/𝔞⋈𝔟 differs from 𝔞")
    } else {
        induced_check(&name, ideal, &composite)
    };
    Ok((join, check))
}

/// The quotient isomorphisms of the construction, each via its canonical map;
/// `𝔞 ⋈^f 𝔟` is exercised for every ideal `𝔞` of `A` when its lattice fits.
pub fn quotient_isos_check(amalg: &AmalgamatedRing, budget: &Budget) -> Result<Vec<Check>> {
    let a = amalg.a();
    let mut checks = Vec::new();
    checks.push(induced_check("carrier/({0}×𝔟) ≅ A", &amalg.b0, &amalg.p_a));

    let ker_pb = amalg.p_b.kernel();
    let onto_image = corestrict(&amalg.p_b, &amalg.image.1)?;
    checks.push(induced_check("carrier/(f⁻¹(𝔟)×{0}) ≅ f(A)+𝔟", &ker_pb, &onto_image));

    let c = &amalg.conductor_in_carrier;
    checks.push(induced_check("carrier/(f⁻¹(𝔟)×𝔟) ≅ (f(A)+𝔟)/𝔟", c, &amalg.gamma));
    let a_mod = mk_quotient(&amalg.contraction)?;
    checks.push(induced_check(
        "carrier/(f⁻¹(𝔟)×𝔟) ≅ A/f⁻¹(𝔟)",
        c,
        &amalg.p_a.then(&a_mod.projection)?,
    ));
    if amalg.f().is_surjective() {
        let b_mod = mk_quotient(amalg.ideal())?;
        checks.push(induced_check(
            "carrier/(f⁻¹(𝔟)×𝔟) ≅ B/𝔟",
            c,
            &amalg.p_b.then(&b_mod.projection)?,
        ));
    }

    if let Ok(lat) = IdealLattice::new(a, budget) {
        for ideal in lat.ideals() {
            checks.push(ideal_join(amalg, &ideal)?.1);
        }
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{mk_poly_quot, mk_zmod};
    use crate::iso::find_isomorphism;
    use crate::poly::PolyOverRing;
    use crate::report::all_ok;

    const B: Budget = Budget::DEFAULT;

    pub(crate) fn e2() -> AmalgamatedRing {
        let z2 = mk_zmod(2, &B).unwrap();
        let d2 = mk_poly_quot(&PolyOverRing::new(&z2, vec![0, 0, 1]).unwrap(), &B).unwrap();
        let f = mk_hom(&z2, &d2, vec![0, 1]).unwrap();
        let x = d2.index_of("x").unwrap();
        let spec = AmalgamationSpec::new(f, Ideal::generate(&d2, &[x]).unwrap()).unwrap();
        build_amalgamation(&spec, &B).unwrap()
    }

    #[test]
    fn e1_is_full_product() {
        let z4 = mk_zmod(4, &B).unwrap();
        let z2 = mk_zmod(2, &B).unwrap();
        let f = mk_hom(&z4, &z2, vec![0, 1, 0, 1]).unwrap();
        let spec = AmalgamationSpec::new(f, Ideal::unit(&z2)).unwrap();
        let am = build_amalgamation(&spec, &B).unwrap();
        assert_eq!(am.carrier.size(), 8);
        assert!(am.carrier.same_tables(&am.product.ring));
        assert!(all_ok(&quotient_isos_check(&am, &B).unwrap()));
    }

    #[test]
    fn e2_local_square_zero() {
        let am = e2();
        assert_eq!(am.carrier.size(), 4);
        let names: Vec<&str> = am.carrier.names().iter().map(|s| s.as_str()).collect();
        assert_eq!(names, vec!["[0,0]", "[0,x]", "[1,1]", "[1,x+1]"]);
        let m = am.carrier.index_of("[0,x]").unwrap();
        assert_eq!(am.carrier.mul(m, m), am.carrier.zero());
        let checks = quotient_isos_check(&am, &B).unwrap();
        assert!(all_ok(&checks), "{checks:?}");
        // f is not surjective: four fixed isomorphisms plus one join per ideal of Z2
        assert_eq!(checks.len(), 4 + 2);
    }

    #[test]
    fn duplications() {
        let z6 = mk_zmod(6, &B).unwrap();
        let two = Ideal::generate(&z6, &[2]).unwrap();
        let am = duplication(&two, &B).unwrap();
        assert_eq!(am.carrier.size(), 18);
        assert_eq!(am.carrier.provenance(), "(dup (zmod 6) (ideal (zmod 6) 2))");
        let three = Ideal::generate(&z6, &[3]).unwrap();
        let (_, check) = ideal_join(&am, &three).unwrap();
        assert!(check.ok);

        let z4 = mk_zmod(4, &B).unwrap();
        let d0 = duplication(&Ideal::zero(&z4), &B).unwrap();
        assert!(find_isomorphism(&d0.carrier, &z4, &B).unwrap().is_some());
        let d1 = duplication(&Ideal::unit(&z4), &B).unwrap();
        assert!(find_isomorphism(&d1.carrier, &d1.product.ring, &B).unwrap().is_some());
    }
}
