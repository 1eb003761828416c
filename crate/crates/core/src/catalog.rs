//! Building specification files into rings, ideals, homomorphisms,
//! amalgamations and fiber products.

use std::collections::HashMap;
use std::sync::Arc;

use crate::amalg::{build_amalgamation, build_fiber_product, duplication, AmalgamatedRing, AmalgamationSpec, FiberProduct};
use crate::budget::Budget;
use crate::construct::{mk_poly_quot, mk_product, mk_quotient, mk_truncated_poly, mk_zmod, prime_ring_hom};
use crate::error::{Result, RingError};
use crate::hom::{mk_hom, RingHom};
use crate::ideal::Ideal;
use crate::poly::PolyOverRing;
use crate::ring::{same_ring, FiniteRing, Ring};
use crate::syntax::{parse_spec, read_one, Kind, Sexp, SpecFile, SyntaxError};

/// The catalog shipped with the crate.
pub const DEFAULT_CATALOG: &str = include_str!("../catalog/default.sexp");

#[derive(Debug, Clone)]
pub enum Value {
    Ring(Ring),
    Ideal(Ideal),
    Hom(RingHom),
    Amalgamation(Arc<AmalgamatedRing>),
    FiberProduct(Arc<FiberProduct>),
}

impl Value {
    pub fn kind(&self) -> Kind {
        match self {
            Value::Ring(_) => Kind::Ring,
            Value::Ideal(_) => Kind::Ideal,
            Value::Hom(_) => Kind::Hom,
            Value::Amalgamation(_) => Kind::Amalgamation,
            Value::FiberProduct(_) => Kind::FiberProduct,
        }
    }

    /// The ring a ring-like value stands for.
    pub fn ring(&self) -> Option<&Ring> {
        match self {
            Value::Ring(r) => Some(r),
            Value::Amalgamation(a) => Some(&a.carrier),
            Value::FiberProduct(f) => Some(&f.carrier),
            _ => None,
        }
    }
}

/// Structure remembered about a ring so that named homomorphisms resolve.
#[derive(Clone, Default)]
struct Shape {
    projection: Option<RingHom>,
    factors: Option<(RingHom, RingHom)>,
}

/// Evaluation state. Rings are interned by construction expression, so equal
/// expressions evaluate to the same ring.
pub struct Env {
    budget: Budget,
    values: HashMap<String, Value>,
    rings: HashMap<String, (Ring, Shape)>,
    amalgs: HashMap<String, Arc<AmalgamatedRing>>,
    fibers: HashMap<String, Arc<FiberProduct>>,
}

fn invalid(e: &Sexp, message: impl std::fmt::Display) -> RingError {
    RingError::InvalidParameter(format!("{}: {message}", e.pos()))
}

fn number(e: &Sexp) -> Result<usize> {
    e.atom()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| invalid(e, format!("{e} is not a natural number")))
}

fn args(e: &Sexp) -> &[Sexp] {
    e.list().map(|l| &l[1..]).unwrap_or(&[])
}

impl Env {
    pub fn new(budget: &Budget) -> Env {
        Env {
            budget: *budget,
            values: HashMap::new(),
            rings: HashMap::new(),
            amalgs: HashMap::new(),
            fibers: HashMap::new(),
        }
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.values.get(name)
    }

    pub fn bind(&mut self, name: &str, value: Value) {
        self.values.insert(name.to_string(), value);
    }

    fn intern(&mut self, ring: Ring, shape: Shape) -> Ring {
        let key = ring.provenance().to_string();
        if let Some((r, _)) = self.rings.get(&key) {
            return r.clone();
        }
        self.rings.insert(key, (ring.clone(), shape));
        ring
    }

    fn shape(&self, ring: &Ring) -> Shape {
        match self.rings.get(ring.provenance()) {
            Some((r, s)) if same_ring(r, ring) => s.clone(),
            _ => Shape::default(),
        }
    }

    pub fn eval(&mut self, e: &Sexp) -> Result<Value> {
        if let Some(name) = e.atom() {
            return self
                .values
                .get(name)
                .cloned()
                .ok_or_else(|| invalid(e, format!("unresolved reference {name}")));
        }
        let a = args(e);
        match e.head().unwrap_or("") {
            "zmod" => {
                let r = mk_zmod(number(&a[0])?, &self.budget)?;
                Ok(Value::Ring(self.intern(r, Shape::default())))
            }
            "truncpoly" => {
                let (p, k, d) = (number(&a[0])?, number(&a[1])?, number(&a[2])?);
                let r = mk_truncated_poly(p, k, d, &self.budget)?;
                Ok(Value::Ring(self.intern(r, Shape::default())))
            }
            "polyquot" => {
                let base = self.ring(&a[0])?;
                let names: Vec<&str> = args(&a[1]).iter().filter_map(Sexp::atom).collect();
                let modulus = PolyOverRing::from_names(&base, &names)?;
                let r = mk_poly_quot(&modulus, &self.budget)?;
                Ok(Value::Ring(self.intern(r, Shape::default())))
            }
            "product" => {
                let (r1, r2) = (self.ring(&a[0])?, self.ring(&a[1])?);
                let p = mk_product(&r1, &r2, &self.budget)?;
                let ring = self.intern(
                    p.ring.clone(),
                    Shape {
                        projection: None,
                        factors: Some((p.proj1.clone(), p.proj2.clone())),
                    },
                );
                Ok(Value::Ring(ring))
            }
            "quot" => {
                let r = self.ring(&a[0])?;
                let i = self.ideal_of(&a[1], &r)?;
                let q = mk_quotient(&i)?;
                let ring = self.intern(
                    q.ring.clone(),
                    Shape {
                        projection: Some(q.projection.clone()),
                        factors: None,
                    },
                );
                Ok(Value::Ring(ring))
            }
            "ideal" => {
                let r = self.ring(&a[0])?;
                let gens = a[1..]
                    .iter()
                    .map(|g| r.index_of(g.atom().unwrap_or_default()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Value::Ideal(Ideal::generate(&r, &gens)?))
            }
            "hom" => {
                if a.len() != 3 {
                    return Err(invalid(e, "(hom NAMED) needs the amalg context"));
                }
                let (s, t) = (self.ring(&a[0])?, self.ring(&a[1])?);
                Ok(Value::Hom(self.hom_between(&s, &t, &a[2])?))
            }
            "amalg" => {
                let (ra, rb) = (self.ring(&a[0])?, self.ring(&a[1])?);
                let f = if a[2].head() == Some("hom") && args(&a[2]).len() == 1 {
                    self.hom_between(&ra, &rb, &args(&a[2])[0])?
                } else {
                    self.hom(&a[2])?
                };
                let i = self.ideal_of(&a[3], &rb)?;
                let am = build_amalgamation(&AmalgamationSpec::new(f, i)?, &self.budget)?;
                Ok(Value::Amalgamation(self.intern_amalg(am)))
            }
            "dup" => {
                let r = self.ring(&a[0])?;
                let i = self.ideal_of(&a[1], &r)?;
                let am = duplication(&i, &self.budget)?;
                Ok(Value::Amalgamation(self.intern_amalg(am)))
            }
            "fiber" => {
                let (rho, sigma) = (self.hom(&a[0])?, self.hom(&a[1])?);
                let fp = build_fiber_product(&rho, &sigma, &self.budget)?;
                let key = fp.carrier.provenance().to_string();
                let fp = self.fibers.entry(key).or_insert_with(|| Arc::new(fp)).clone();
                self.intern(fp.carrier.clone(), Shape::default());
                Ok(Value::FiberProduct(fp))
            }
            "table" => {
                let r = self.table(e)?;
                Ok(Value::Ring(self.intern(r, Shape::default())))
            }
            other => Err(invalid(e, format!("unknown constructor {other}"))),
        }
    }

    fn intern_amalg(&mut self, am: AmalgamatedRing) -> Arc<AmalgamatedRing> {
        let key = am.carrier.provenance().to_string();
        let am = self.amalgs.entry(key).or_insert_with(|| Arc::new(am)).clone();
        self.intern(am.carrier.clone(), Shape::default());
        am
    }

    fn table(&self, e: &Sexp) -> Result<Ring> {
        let a = args(e);
        let part = |i: usize| -> Vec<&str> { args(&a[i]).iter().filter_map(Sexp::atom).collect() };
        let names = part(0);
        let n = names.len();
        self.budget.check_ring("table", n as u128)?;
        let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        if index.len() != n {
            return Err(invalid(e, "table: element names repeat"));
        }
        let lookup = |s: &str| -> Result<usize> {
            index
                .get(s)
                .copied()
                .ok_or_else(|| invalid(e, format!("table: unknown element {s}")))
        };
        let one_of = |i: usize| -> Result<usize> {
            match part(i).as_slice() {
                [x] => lookup(x),
                _ => Err(invalid(&a[i], "expected one element")),
            }
        };
        let grid = |i: usize| -> Result<Vec<u32>> {
            let cells = part(i);
            if cells.len() != n * n {
                return Err(invalid(&a[i], format!("table needs {} entries, found {}", n * n, cells.len())));
            }
            cells.iter().map(|s| lookup(s).map(|x| x as u32)).collect()
        };
        let ring = FiniteRing::from_tables(
            grid(3)?,
            grid(4)?,
            one_of(1)?,
            one_of(2)?,
            names.iter().map(|s| s.to_string()).collect(),
            e.to_string(),
        )?;
        Ok(Arc::new(ring))
    }

    fn ring(&mut self, e: &Sexp) -> Result<Ring> {
        let v = self.eval(e)?;
        v.ring()
            .cloned()
            .ok_or_else(|| invalid(e, format!("expected a ring, found a {}", v.kind())))
    }

    fn hom(&mut self, e: &Sexp) -> Result<RingHom> {
        match self.eval(e)? {
            Value::Hom(h) => Ok(h),
            v => Err(invalid(e, format!("expected a hom, found a {}", v.kind()))),
        }
    }

    fn ideal_of(&mut self, e: &Sexp, ring: &Ring) -> Result<Ideal> {
        match self.eval(e)? {
            Value::Ideal(i) if same_ring(i.ring(), ring) => Ok(i),
            Value::Ideal(i) => Err(invalid(
                e,
                format!("ideal of {} where {} was expected", i.ring().provenance(), ring.provenance()),
            )),
            v => Err(invalid(e, format!("expected an ideal, found a {}", v.kind()))),
        }
    }

    fn hom_between(&self, s: &Ring, t: &Ring, how: &Sexp) -> Result<RingHom> {
        if how.head() == Some("images") {
            let map = args(how)
                .iter()
                .map(|x| t.index_of(x.atom().unwrap_or_default()))
                .collect::<Result<Vec<_>>>()?;
            if map.len() != s.size() {
                return Err(invalid(how, format!("{} images for {} elements", map.len(), s.size())));
            }
            return mk_hom(s, t, map);
        }
        let name = how.atom().unwrap_or_default();
        let none = || invalid(how, format!("no {name} map from {} to {}", s.provenance(), t.provenance()));
        match name {
            "identity" => {
                if same_ring(s, t) || s.same_tables(t) {
                    mk_hom(s, t, s.elements().collect())
                } else {
                    Err(none())
                }
            }
            "reduction" => match self.shape(t).projection {
                Some(p) if same_ring(p.source(), s) => Ok(p),
                _ => prime_ring_hom(s, t).map_err(|_| none()),
            },
            "inclusion" => {
                let by_name: Option<Vec<usize>> =
                    s.elements().map(|x| t.index_of(s.name(x)).ok()).collect();
                match by_name.map(|m| mk_hom(s, t, m)) {
                    Some(Ok(h)) if h.is_injective() => Ok(h),
                    _ => match prime_ring_hom(s, t) {
                        Ok(h) if h.is_injective() => Ok(h),
                        _ => Err(none()),
                    },
                }
            }
            "proj1" | "proj2" => match self.shape(s).factors {
                Some((p1, p2)) => {
                    let p = if name == "proj1" { p1 } else { p2 };
                    if same_ring(p.target(), t) {
                        Ok(p)
                    } else {
                        Err(none())
                    }
                }
                None => Err(none()),
            },
            "diagonal" => match self.shape(t).factors {
                Some((p1, p2)) if same_ring(p1.target(), s) && same_ring(p2.target(), s) => {
                    let n = s.size();
                    mk_hom(s, t, s.elements().map(|x| x * n + x).collect())
                }
                _ => Err(none()),
            },
            _ => Err(none()),
        }
    }
}

/// Evaluates a single construction expression in a fresh environment.
pub fn build_expr(text: &str, budget: &Budget) -> std::result::Result<Value, String> {
    let e = read_one(text).map_err(|es| es.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))?;
    Env::new(budget).eval(&e).map_err(|e| e.to_string())
}

/// Evaluates `text` after binding every definition of `spec` that builds.
pub fn eval_with(spec: &SpecFile, text: &str, budget: &Budget) -> std::result::Result<Value, String> {
    let e = read_one(text).map_err(|es| es.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))?;
    let mut env = Env::new(budget);
    for d in &spec.definitions {
        if let Ok(v) = env.eval(&d.expr) {
            env.bind(&d.name, v);
        }
    }
    env.eval(&e).map_err(|e| e.to_string())
}

/// Serializes a ring to its construction expression, rebuilds it and checks
/// that tables, names and expression are identical.
pub fn round_trip(ring: &Ring, budget: &Budget) -> std::result::Result<(), String> {
    let v = build_expr(ring.provenance(), budget)?;
    let r = v.ring().ok_or("expression does not denote a ring")?;
    if !r.same_tables(ring) {
        return Err("tables differ".into());
    }
    if r.names() != ring.names() {
        return Err("element names differ".into());
    }
    if r.provenance() != ring.provenance() {
        return Err(format!("expression changed to {}", r.provenance()));
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: String,
    pub kind: Kind,
    pub value: Value,
    pub expected: Vec<(String, bool)>,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct BuildError {
    pub id: String,
    pub position: String,
    pub message: String,
}

/// A built catalog. Definitions that fail to build are listed in `errors`,
/// along with everything depending on them.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
    pub errors: Vec<BuildError>,
}

impl Catalog {
    pub fn build(spec: &SpecFile, budget: &Budget) -> Catalog {
        let mut env = Env::new(budget);
        let mut cat = Catalog::default();
        for d in &spec.definitions {
            match env.eval(&d.expr) {
                Ok(v) => {
                    env.bind(&d.name, v.clone());
                    if d.kind != Kind::Ideal {
                        cat.entries.push(CatalogEntry {
                            id: d.name.clone(),
                            kind: d.kind,
                            value: v,
                            expected: Vec::new(),
                        });
                    }
                }
                Err(e) => cat.errors.push(BuildError {
                    id: d.name.clone(),
                    position: d.pos.to_string(),
                    message: e.to_string(),
                }),
            }
        }
        for x in &spec.expectations {
            if let Some(entry) = cat.entries.iter_mut().find(|e| e.id == x.name) {
                entry.expected.extend(x.verdicts.iter().cloned());
            }
        }
        cat
    }

    pub fn parse(text: &str, budget: &Budget) -> std::result::Result<Catalog, Vec<SyntaxError>> {
        Ok(Catalog::build(&parse_spec(text)?, budget))
    }

    pub fn default_catalog(budget: &Budget) -> Catalog {
        Catalog::parse(DEFAULT_CATALOG, budget).expect("the default catalog parses")
    }

    pub fn entry(&self, id: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn amalgamations(&self) -> impl Iterator<Item = (&str, &Arc<AmalgamatedRing>)> {
        self.entries.iter().filter_map(|e| match &e.value {
            Value::Amalgamation(a) => Some((e.id.as_str(), a)),
            _ => None,
        })
    }

    pub fn fiber_products(&self) -> impl Iterator<Item = (&str, &Arc<FiberProduct>)> {
        self.entries.iter().filter_map(|e| match &e.value {
            Value::FiberProduct(f) => Some((e.id.as_str(), f)),
            _ => None,
        })
    }

    pub fn homs(&self) -> impl Iterator<Item = (&str, &RingHom)> {
        self.entries.iter().filter_map(|e| match &e.value {
            Value::Hom(h) => Some((e.id.as_str(), h)),
            _ => None,
        })
    }

    /// Every ring-like entry with its ring.
    pub fn rings(&self) -> impl Iterator<Item = (&str, &Ring)> {
        self.entries.iter().filter_map(|e| e.value.ring().map(|r| (e.id.as_str(), r)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: Budget = Budget::DEFAULT;

    #[test]
    fn default_catalog_builds() {
        let cat = Catalog::default_catalog(&B);
        assert!(cat.errors.is_empty(), "{:?}", cat.errors);
        assert!(cat.entries.iter().filter(|e| e.kind == Kind::Ring).count() >= 12);
        assert!(cat.amalgamations().count() >= 6);
        for id in ["E1", "E2", "E8", "DUP_Z4", "DUP_Z6"] {
            assert!(matches!(cat.entry(id).unwrap().value, Value::Amalgamation(_)), "{id}");
        }
    }

    #[test]
    fn every_entry_round_trips() {
        let cat = Catalog::default_catalog(&B);
        for (id, r) in cat.rings() {
            round_trip(r, &B).unwrap_or_else(|e| panic!("{id}: {e}"));
        }
    }

    #[test]
    fn named_homs() {
        let text = "(def Z4 (zmod 4)) (def Z2 (zmod 2)) (def P (product Z4 Z2))\n\
                    (def Q (quot Z4 (ideal Z4 2)))\n\
                    (def r (hom Z4 Z2 reduction)) (def q (hom Z4 Q reduction))\n\
                    (def p1 (hom P Z4 proj1)) (def p2 (hom P Z2 proj2))\n\
                    (def d (hom Z2 (product Z2 Z2) diagonal)) (def i (hom Z2 Z2 identity))";
        let cat = Catalog::parse(text, &B).unwrap();
        assert!(cat.errors.is_empty(), "{:?}", cat.errors);
        let hom = |id: &str| match &cat.entry(id).unwrap().value {
            Value::Hom(h) => h.clone(),
            _ => panic!(),
        };
        assert_eq!(hom("r").map(), vec![0, 1, 0, 1]);
        assert_eq!(hom("q").kernel().member_list(), vec![0, 2]);
        assert_eq!(hom("p1").apply(5), 2);
        assert_eq!(hom("d").map(), vec![0, 3]);
    }

    #[test]
    fn corrupted_table_is_a_build_error() {
        let good = "(def T (table (elements 0 1) (zero 0) (one 1) (add 0 1 1 0) (mul 0 0 0 1)))";
        let cat = Catalog::parse(good, &B).unwrap();
        assert!(cat.errors.is_empty());
        round_trip(cat.entries[0].value.ring().unwrap(), &B).unwrap();

        let bad = "(def T (table (elements 0 1) (zero 0) (one 1) (add 0 1 1 0) (mul 0 1 0 1)))\n\
                   (def U (product T T))\n(def V (zmod 3))";
        let cat = Catalog::parse(bad, &B).unwrap();
        assert_eq!(cat.errors.len(), 2);
        assert_eq!(cat.errors[0].id, "T");
        assert_eq!(cat.entries.len(), 1);
    }

    #[test]
    fn not_a_hom() {
        let cat = Catalog::parse("(def Z4 (zmod 4)) (def Z3 (zmod 3)) (def f (hom Z4 Z3 (images 0 1 2 0)))", &B).unwrap();
        assert_eq!(cat.errors.len(), 1);
        assert!(cat.errors[0].message.contains("homomorphism"), "{}", cat.errors[0].message);
    }
}
