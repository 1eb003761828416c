//! Exact computations over finite commutative rings: amalgamated algebras
//! along ideals, ideal lattices, prime spectra, localizations, and the
//! semihereditary / w.gl.dim ≤ 1 / arithmetical / Gauss / Prüfer hierarchy.

pub mod amalg;
pub mod budget;
pub mod catalog;
pub mod classify;
pub mod construct;
pub mod error;
pub mod hom;
pub mod ideal;
pub mod iso;
pub mod lattice;
pub mod localize;
pub mod poly;
pub mod report;
pub mod ring;
pub mod spectrum;
pub mod syntax;
pub mod theorems;

pub use budget::Budget;
pub use catalog::{Catalog, CatalogEntry, Value};
pub use classify::{classify, ClassificationReport, Verdict, Verdicts};
pub use construct::{mk_poly_quot, mk_product, mk_quotient, mk_truncated_poly, mk_zmod};
pub use error::{Result, RingError};
pub use hom::{mk_hom, RingHom};
pub use ideal::Ideal;
pub use poly::PolyOverRing;
pub use ring::{Element, ElementSet, FiniteRing, Ring};
pub use syntax::{parse_spec, SpecFile};
pub use theorems::{run_catalog, CatalogReport, SuiteConfig, TheoremCheckResult};
