use crate::budget::Budget;
use crate::error::{Result, RingError};
use crate::hom::{mk_hom, RingHom};
use crate::ideal::Ideal;
use crate::lattice::IdealLattice;
use crate::localize::{localize, localize_at_prime, LocalizedRing, MultiplicativeSet};
use crate::report::Check;
use crate::ring::same_ring;
use crate::spectrum::{is_prime, spectrum};

use super::{bijection_check, build_amalgamation, prime_bar, prime_lift, AmalgamatedRing, AmalgamationSpec};

/// Localization data at a prime `𝔭` of `A`: `S_𝔭 = f(A∖𝔭) + 𝔟`, `A_𝔭`,
/// `B_{S_𝔭}`, the induced `f_𝔭` and `𝔟_{S_𝔭} = 𝔟B_{S_𝔭}`.
#[derive(Debug, Clone)]
pub struct LocalizedAmalgData {
    pub prime: Ideal,
    pub s_p: MultiplicativeSet,
    pub a_p: LocalizedRing,
    pub b_sp: LocalizedRing,
    pub f_p: RingHom,
    pub b_loc: Ideal,
    /// `f⁻¹(𝔟)A_𝔭`.
    pub contraction_loc: Ideal,
    pub checks: Vec<Check>,
}

impl LocalizedAmalgData {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

pub fn localized_data(amalg: &AmalgamatedRing, p: &Ideal, budget: &Budget) -> Result<LocalizedAmalgData> {
    if !same_ring(p.ring(), amalg.a()) || !is_prime(p) {
        return Err(RingError::InvalidParameter(format!("{p:?} is not a prime of A")));
    }
    let (a, b, f, bb) = (amalg.a(), amalg.b(), amalg.f(), amalg.ideal());
    let s = MultiplicativeSet::complement_of_prime(p)?;
    let mut t = b.empty_set();
    for x in s.members().ones() {
        for beta in bb.members().ones() {
            t.insert(b.add(f.apply(x), beta));
        }
    }
    let s_p = MultiplicativeSet::new(b, t)?;
    let a_p = localize(&s, budget)?;
    let b_sp = localize(&s_p, budget)?;

    // f_𝔭(a/s) = f(a)/f(s), checked on every fraction pair
    let mut map = vec![usize::MAX; a_p.carrier.size()];
    let mut well_defined = None;
    for x in a.elements() {
        for &d in a_p.denominators() {
            let c = a_p.class(x, d).expect("denominator in S");
            let img = b_sp.class(f.apply(x), f.apply(d)).expect("f(S) ⊆ S_𝔭");
            if map[c] == usize::MAX {
                map[c] = img;
            } else if map[c] != img && well_defined.is_none() {
                well_defined = Some(format!("{}/{}", a.name(x), a.name(d)));
            }
        }
    }
    if let Some(w) = well_defined {
        return Err(RingError::Defect(format!("f_𝔭 is not well defined at {w}")));
    }
    let f_p = mk_hom(&a_p.carrier, &b_sp.carrier, map)?;
    let b_loc = b_sp.canonical.extend_ideal(bb)?;
    let contraction_loc = a_p.canonical.extend_ideal(&amalg.contraction)?;

    let mut checks = Vec::new();
    let pre = f_p.preimage_ideal(&b_loc)?;
    checks.push(Check::direct(
        "f_𝔭⁻¹(𝔟B_T) = f⁻¹(𝔟)A_𝔭",
        pre == contraction_loc,
        format!("{pre} vs {contraction_loc}"),
    ));
    let meets = amalg.contraction.members().ones().any(|x| s.contains(x));
    checks.push(Check::direct(
        "B_T = 0 ⟺ f⁻¹(𝔟) ∩ S ≠ ∅",
        b_sp.is_zero() == meets,
        format!("B_T zero {}, f⁻¹(𝔟) meets S {meets}", b_sp.is_zero()),
    ));
    if let Ok(lat) = IdealLattice::new(b, budget) {
        let mut bad = None;
        for d in lat.ideals() {
            let lhs = b_sp.canonical.extend_ideal(&d)?.is_unit_ideal();
            let sum = bb.sum(&d)?;
            let rhs = f.preimage_ideal(&sum)?.members().ones().any(|x| s.contains(x));
            if lhs != rhs {
                bad = Some(d);
                break;
            }
        }
        checks.push(Check::direct(
            "𝔡B_T = B_T ⟺ f⁻¹(𝔟+𝔡) ∩ S ≠ ∅ for every ideal 𝔡",
            bad.is_none(),
            match bad {
                None => format!("{} ideals", lat.len()),
                Some(d) => format!("fails at {d:?}"),
            },
        ));
    }
    Ok(LocalizedAmalgData {
        prime: p.clone(),
        s_p,
        a_p,
        b_sp,
        f_p,
        b_loc,
        contraction_loc,
        checks,
    })
}

#[derive(Debug, Clone)]
pub enum PrimeKind {
    /// `P = 𝔭′^f`.
    Lift(Ideal),
    /// `P = 𝔮̄^f`.
    Bar(Ideal),
}

#[derive(Debug, Clone)]
pub struct LocalizationIsoReport {
    pub prime: Ideal,
    pub kind: PrimeKind,
    /// `B_{S_𝔭}` was the zero ring.
    pub zero_branch: bool,
    pub checks: Vec<Check>,
}

impl LocalizationIsoReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

/// Verifies `carrier_P ≅ B_𝔮` for `P = 𝔮̄^f` and
/// `carrier_P ≅ A_𝔭 ⋈^{f_𝔭} 𝔟_{S_𝔭}` for `P = 𝔭′^f`, by canonical maps on
/// fraction representatives.
pub fn localize_amalg_at_prime(
    amalg: &AmalgamatedRing,
    prime: &Ideal,
    budget: &Budget,
) -> Result<LocalizationIsoReport> {
    if !same_ring(prime.ring(), &amalg.carrier) || !is_prime(prime) {
        return Err(RingError::InvalidParameter(format!(
            "{prime:?} is not a prime of the carrier"
        )));
    }
    let local = localize_at_prime(prime, budget)?;
    let mut checks = Vec::new();

    if amalg.b0.is_subset(prime) {
        let p = Ideal::from_members(amalg.a(), amalg.p_a.image_of(prime.members()))?;
        if prime_lift(amalg, &p)? != *prime {
            return Err(RingError::Defect(format!("{prime:?} is not the lift of {p:?}")));
        }
        let data = localized_data(amalg, &p, budget)?;
        checks.extend(data.checks.iter().cloned());
        let spec = AmalgamationSpec::new(data.f_p.clone(), data.b_loc.clone())?;
        let target = build_amalgamation(&spec, budget)?;
        let mut map = Vec::with_capacity(local.carrier.size());
        for c in local.carrier.elements() {
            let (x, y) = local.representative(c);
            let ((a, beta), (s, tau)) = (amalg.pair(x), amalg.pair(y));
            let u = data.a_p.class(a, s).expect("s ∉ 𝔭");
            let v = data.b_sp.class(beta, tau).expect("f(s)+β ∈ S_𝔭");
            match target.index_of_pair(u, v) {
                Some(i) => map.push(i),
                None => {
                    return Err(RingError::Defect(format!(
                        "fraction {} lands outside A_𝔭 ⋈ 𝔟_S",
                        local.carrier.name(c)
                    )))
                }
            }
        }
        let name = "carrier_{𝔭′} ≅ A_𝔭 ⋈^{f_𝔭} 𝔟_{S_𝔭}";
        checks.push(match mk_hom(&local.carrier, &target.carrier, map) {
            Ok(h) => bijection_check(name, "canonical", &h),
            Err(e) => Check::new(name, false, "canonical", e.to_string()),
        });

        let zero_branch = data.b_sp.is_zero();
        if !amalg.contraction.is_subset(&p) {
            checks.push(Check::direct(
                "𝔭 ⊉ f⁻¹(𝔟) ⟹ B_{S_𝔭} = 0",
                zero_branch,
                format!("|B_S| = {}", data.b_sp.carrier.size()),
            ));
            let map: Vec<usize> = local
                .carrier
                .elements()
                .map(|c| {
                    let (x, y) = local.representative(c);
                    data.a_p.class(amalg.pair(x).0, amalg.pair(y).0).expect("s ∉ 𝔭")
                })
                .collect();
            let name = "carrier_{𝔭′} ≅ A_𝔭";
            checks.push(match mk_hom(&local.carrier, &data.a_p.carrier, map) {
                Ok(h) => bijection_check(name, "canonical", &h),
                Err(e) => Check::new(name, false, "canonical", e.to_string()),
            });
        }
        return Ok(LocalizationIsoReport {
            prime: prime.clone(),
            kind: PrimeKind::Lift(p),
            zero_branch,
            checks,
        });
    }

    let spec_b = spectrum(amalg.b(), budget)?;
    let mut q_found = None;
    for q in spec_b.primes.iter().filter(|q| !amalg.ideal().is_subset(q)) {
        if prime_bar(amalg, q)? == *prime {
            q_found = Some(q.clone());
            break;
        }
    }
    let q = q_found.ok_or_else(|| {
        RingError::Defect(format!("{prime:?} is neither a lift nor a bar"))
    })?;
    let b_q = localize_at_prime(&q, budget)?;
    let map: Vec<usize> = local
        .carrier
        .elements()
        .map(|c| {
            let (x, y) = local.representative(c);
            b_q.class(amalg.pair(x).1, amalg.pair(y).1).expect("p_B(y) ∉ 𝔮")
        })
        .collect();
    let name = "carrier_{𝔮̄} ≅ B_𝔮";
    checks.push(match mk_hom(&local.carrier, &b_q.carrier, map) {
        Ok(h) => bijection_check(name, "canonical", &h),
        Err(e) => Check::new(name, false, "canonical", e.to_string()),
    });
    Ok(LocalizationIsoReport {
        prime: prime.clone(),
        kind: PrimeKind::Bar(q),
        zero_branch: false,
        checks,
    })
}
