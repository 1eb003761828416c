use crate::budget::Budget;
use crate::error::{Result, RingError};
use crate::ideal::Ideal;
use crate::report::Check;
use crate::ring::same_ring;
use crate::spectrum::{is_maximal, is_prime, jacobson_of, spectrum, SpectrumView};

use super::AmalgamatedRing;

fn require_prime(p: &Ideal, what: &str) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(RingError::InvalidParameter(format!("{what} {p:?} is not prime")))
    }
}

/// `𝔭′^f = {(p, f(p) + b) : p ∈ 𝔭, b ∈ 𝔟}`, verified prime, with the check
/// that it is maximal exactly when `𝔭` is.
pub fn prime_lift(amalg: &AmalgamatedRing, p: &Ideal) -> Result<Ideal> {
    if !same_ring(p.ring(), amalg.a()) {
        return Err(RingError::RingMismatch("prime_lift needs a prime of A".into()));
    }
    require_prime(p, "ideal of A")?;
    let lift = Ideal::from_members(&amalg.carrier, amalg.p_a.preimage_set(p.members()))?;
    if !is_prime(&lift) {
        return Err(RingError::Defect(format!("lift of {p:?} is not prime")));
    }
    if is_maximal(&lift) != is_maximal(p) {
        return Err(RingError::Defect(format!(
            "lift of {p:?} is maximal iff the prime is fails"
        )));
    }
    Ok(lift)
}

/// `𝔮̄^f = {(a, f(a) + b) : f(a) + b ∈ 𝔮}` for a prime `𝔮 ⊉ 𝔟` of `B`.
pub fn prime_bar(amalg: &AmalgamatedRing, q: &Ideal) -> Result<Ideal> {
    if !same_ring(q.ring(), amalg.b()) {
        return Err(RingError::RingMismatch("prime_bar needs a prime of B".into()));
    }
    require_prime(q, "ideal of B")?;
    if amalg.ideal().is_subset(q) {
        return Err(RingError::InvalidParameter(format!(
            "{q:?} contains 𝔟; the bar construction applies only off V(𝔟)"
        )));
    }
    let bar = Ideal::from_members(&amalg.carrier, amalg.p_b.preimage_set(q.members()))?;
    if !is_prime(&bar) {
        return Err(RingError::Defect(format!("bar of {q:?} is not prime")));
    }
    if is_maximal(&bar) != is_maximal(q) {
        return Err(RingError::Defect(format!(
            "bar of {q:?} is maximal iff the prime is fails"
        )));
    }
    Ok(bar)
}

/// Direct and transferred spectra of an amalgamation.
#[derive(Debug, Clone)]
pub struct SpectrumTransfer {
    pub direct: SpectrumView,
    /// `(𝔭, 𝔭′^f)` for every prime of `A`.
    pub lifts: Vec<(Ideal, Ideal)>,
    /// `(𝔮, 𝔮̄^f)` for every prime of `B` off `V(𝔟)`.
    pub bars: Vec<(Ideal, Ideal)>,
    pub max_lifts: usize,
    pub max_bars: usize,
    pub checks: Vec<Check>,
}

impl SpectrumTransfer {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

/// `i ↦ j` is injective and `x ⊆ y ⟺ φ(x) ⊆ φ(y)`.
fn order_embedding(pairs: &[(Ideal, Ideal)]) -> std::result::Result<(), String> {
    for (i, (p1, l1)) in pairs.iter().enumerate() {
        for (p2, l2) in &pairs[i + 1..] {
            if l1 == l2 {
                return Err(format!("{p1:?} and {p2:?} have the same image"));
            }
        }
        for (p2, l2) in pairs {
            if p1.is_subset(p2) != l1.is_subset(l2) {
                return Err(format!("containment of {p1:?} in {p2:?} is not preserved"));
            }
        }
    }
    Ok(())
}

pub fn spectrum_transfer(amalg: &AmalgamatedRing, budget: &Budget) -> Result<SpectrumTransfer> {
    let direct = spectrum(&amalg.carrier, budget)?;
    let spec_a = spectrum(amalg.a(), budget)?;
    let spec_b = spectrum(amalg.b(), budget)?;
    let bb = amalg.ideal();

    let mut lifts = Vec::new();
    for p in &spec_a.primes {
        lifts.push((p.clone(), prime_lift(amalg, p)?));
    }
    let mut bars = Vec::new();
    for q in &spec_b.primes {
        if !bb.is_subset(q) {
            bars.push((q.clone(), prime_bar(amalg, q)?));
        }
    }

    let mut checks = Vec::new();
    let mut transferred: Vec<Ideal> = lifts.iter().chain(&bars).map(|(_, l)| l.clone()).collect();
    transferred.sort_by_key(|i| (i.len(), i.member_list()));
    transferred.dedup();
    let mut direct_sorted = direct.primes.clone();
    direct_sorted.sort_by_key(|i| (i.len(), i.member_list()));
    let same = transferred == direct_sorted;
    checks.push(Check::direct(
        "transferred primes = direct primes",
        same,
        if same {
            format!("{} primes", direct_sorted.len())
        } else {
            let missing = direct_sorted.iter().find(|p| !transferred.contains(p));
            let extra = transferred.iter().find(|p| !direct_sorted.contains(p));
            format!("missing {missing:?}, extra {extra:?}")
        },
    ));

    let v_b0: Vec<&Ideal> = direct.primes.iter().filter(|p| amalg.b0.is_subset(p)).collect();
    let lift_image: Vec<&Ideal> = lifts.iter().map(|(_, l)| l).collect();
    let image_is_v = v_b0.len() == lift_image.len() && v_b0.iter().all(|p| lift_image.contains(p));
    checks.push(Check::direct(
        "lift image = V(b0)",
        image_is_v,
        format!("{} lifts, |V(b0)| = {}", lift_image.len(), v_b0.len()),
    ));
    let bars_outside = bars.iter().all(|(_, l)| !amalg.b0.is_subset(l));
    let off_count = direct.primes.len() - v_b0.len();
    checks.push(Check::direct(
        "bar image = Spec ∖ V(b0)",
        bars_outside && off_count == bars.len(),
        format!("{} bars, {} primes off V(b0)", bars.len(), off_count),
    ));
    for (name, pairs) in [("lift map is an order embedding", &lifts), ("bar map is an order embedding", &bars)] {
        let r = order_embedding(pairs);
        checks.push(Check::direct(name, r.is_ok(), r.err().unwrap_or_default()));
    }

    let max_lifts: Vec<&Ideal> = lifts
        .iter()
        .filter(|(p, _)| spec_a.maximals.contains(p))
        .map(|(_, l)| l)
        .collect();
    let max_bars: Vec<&Ideal> = bars
        .iter()
        .filter(|(q, _)| spec_b.maximals.contains(q))
        .map(|(_, l)| l)
        .collect();
    let predicted = max_lifts.len() + max_bars.len();
    let exact = predicted == direct.maximals.len()
        && max_lifts.iter().chain(&max_bars).all(|m| direct.maximals.contains(m));
    checks.push(Check::direct(
        "Max = lifts of Max(A) ∪ bars of Max(B)∖V(𝔟)",
        exact,
        format!(
            "lift: {}, bar: {}, direct: {}",
            max_lifts.len(),
            max_bars.len(),
            direct.maximals.len()
        ),
    ));
    let (nl, nb) = (max_lifts.len(), max_bars.len());
    Ok(SpectrumTransfer {
        direct,
        lifts,
        bars,
        max_lifts: nl,
        max_bars: nb,
        checks,
    })
}

/// Locality decided directly and by `A local ∧ 𝔟 ⊆ Jac(B)`.
#[derive(Debug, Clone)]
pub struct LocalityReport {
    pub direct: bool,
    pub a_local: bool,
    pub ideal_in_jacobson: bool,
    pub check: Check,
}

impl LocalityReport {
    pub fn verdict(&self) -> bool {
        self.direct
    }
}

pub fn is_local_amalg(amalg: &AmalgamatedRing, budget: &Budget) -> Result<LocalityReport> {
    let direct_spec = spectrum(&amalg.carrier, budget)?;
    let spec_a = spectrum(amalg.a(), budget)?;
    let spec_b = spectrum(amalg.b(), budget)?;
    let direct = direct_spec.is_local();
    let a_local = spec_a.is_local();
    let jac = jacobson_of(amalg.b(), &spec_b.maximals);
    let in_jac = amalg.ideal().is_subset(&jac);
    let criterion = a_local && in_jac;
    let mut ok = direct == criterion;
    let mut detail = format!(
        "direct {direct}; A local {a_local}, 𝔟 ⊆ Jac(B) {in_jac}"
    );
    if ok && direct {
        let m = prime_lift(amalg, &spec_a.maximals[0])?;
        if direct_spec.maximals[0] != m {
            ok = false;
            detail.push_str("; the maximal ideal is not the lift of A's");
        }
    }
    Ok(LocalityReport {
        direct,
        a_local,
        ideal_in_jacobson: in_jac,
        check: Check::direct("local ⟺ A local ∧ 𝔟 ⊆ Jac(B)", ok, detail),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalg::{build_amalgamation, duplication, AmalgamationSpec};
    use crate::construct::{mk_product, mk_zmod};
    use crate::hom::mk_hom;

    const B: Budget = Budget::DEFAULT;

    #[test]
    fn e8_two_maximals() {
        let z2 = mk_zmod(2, &B).unwrap();
        let v = mk_product(&z2, &z2, &B).unwrap().ring;
        let diag = mk_hom(&z2, &v, vec![0, 3]).unwrap();
        let bb = Ideal::generate(&v, &[v.index_of("[0,1]").unwrap()]).unwrap();
        let am = build_amalgamation(&AmalgamationSpec::new(diag, bb).unwrap(), &B).unwrap();
        assert_eq!(am.carrier.size(), 4);
        let t = spectrum_transfer(&am, &B).unwrap();
        assert!(t.ok(), "{:?}", t.checks);
        assert_eq!((t.max_lifts, t.max_bars), (1, 1));
        let q = v.index_of("[1,0]").unwrap();
        let z2x0 = Ideal::generate(&v, &[q]).unwrap();
        let bar = prime_bar(&am, &z2x0).unwrap();
        assert!(t.direct.maximals.contains(&bar));
        // (0,1) generates a prime that contains 𝔟
        let zx2 = Ideal::generate(&v, &[v.index_of("[0,1]").unwrap()]).unwrap();
        assert!(prime_bar(&am, &zx2).is_err());
    }

    #[test]
    fn dup_z6_three_maximals() {
        let z6 = mk_zmod(6, &B).unwrap();
        let am = duplication(&Ideal::generate(&z6, &[2]).unwrap(), &B).unwrap();
        let t = spectrum_transfer(&am, &B).unwrap();
        assert!(t.ok(), "{:?}", t.checks);
        assert_eq!((t.max_lifts, t.max_bars), (2, 1));
        assert!(!is_local_amalg(&am, &B).unwrap().verdict());
    }

    #[test]
    fn locality() {
        let z4 = mk_zmod(4, &B).unwrap();
        let am = duplication(&Ideal::generate(&z4, &[2]).unwrap(), &B).unwrap();
        let r = is_local_amalg(&am, &B).unwrap();
        assert!(r.check.ok && r.verdict());
        let am = crate::amalg::tests::e2();
        assert!(is_local_amalg(&am, &B).unwrap().verdict());
    }
}
