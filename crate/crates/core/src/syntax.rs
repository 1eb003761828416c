//! Specification files: s-expressions of the form `(def NAME EXPR)` and
//! `(expect NAME (VERDICT BOOL) ...)`, with `;` line comments.
//!
//! Constructors: `zmod n`, `polyquot R (poly c0 .. ck)`, `truncpoly p k d`,
//! `product R S`, `quot R I`, `ideal R g1 ..`, `hom R S (images ..)`,
//! `hom R S NAMED` with `NAMED` one of `reduction inclusion identity proj1
//! proj2 diagonal`, `hom NAMED` inside `amalg`, `amalg A B F I`, `dup A I`,
//! `fiber RHO SIGMA` and `table (elements ..) (zero z) (one o) (add ..) (mul ..)`.

use std::collections::HashMap;
use std::fmt;

use crate::classify::Verdicts;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone)]
pub enum Sexp {
    Atom(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl Sexp {
    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }

    pub fn atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(s, _) => Some(s),
            Sexp::List(..) => None,
        }
    }

    pub fn list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items, _) => Some(items),
            Sexp::Atom(..) => None,
        }
    }

    /// The head atom of a non-empty list.
    pub fn head(&self) -> Option<&str> {
        self.list().and_then(|l| l.first()).and_then(Sexp::atom)
    }
}

/// Positions are ignored; this compares the printed form.
impl PartialEq for Sexp {
    fn eq(&self, other: &Sexp) -> bool {
        match (self, other) {
            (Sexp::Atom(a, _), Sexp::Atom(b, _)) => a == b,
            (Sexp::List(a, _), Sexp::List(b, _)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Sexp {}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(s, _) => f.write_str(s),
            Sexp::List(items, _) => {
                f.write_str("(")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {message}")]
pub struct SyntaxError {
    pub pos: Pos,
    pub message: String,
}

fn err(pos: Pos, message: impl Into<String>) -> SyntaxError {
    SyntaxError {
        pos,
        message: message.into(),
    }
}

/// Reads every top-level s-expression.
pub fn read_sexps(text: &str) -> Result<Vec<Sexp>, Vec<SyntaxError>> {
    let mut stack: Vec<(Vec<Sexp>, Pos)> = Vec::new();
    let mut top = Vec::new();
    let mut errors = Vec::new();
    let mut atom: Option<(String, Pos)> = None;
    let (mut line, mut col) = (1, 0);
    let mut in_comment = false;

    fn push(stack: &mut [(Vec<Sexp>, Pos)], top: &mut Vec<Sexp>, x: Sexp) {
        match stack.last_mut() {
            Some((items, _)) => items.push(x),
            None => top.push(x),
        }
    }

    for ch in text.chars().chain(std::iter::once('\n')) {
        if ch == '\n' {
            line += 1;
            col = 0;
        } else {
            col += 1;
        }
        let pos = Pos { line, col };
        if in_comment {
            if ch == '\n' {
                in_comment = false;
            }
            continue;
        }
        let delimiter = ch.is_whitespace() || matches!(ch, '(' | ')' | ';');
        if !delimiter {
            match &mut atom {
                Some((s, _)) => s.push(ch),
                None => atom = Some((ch.to_string(), pos)),
            }
            continue;
        }
        if let Some((s, p)) = atom.take() {
            push(&mut stack, &mut top, Sexp::Atom(s, p));
        }
        match ch {
            ';' => in_comment = true,
            '(' => stack.push((Vec::new(), pos)),
            ')' => match stack.pop() {
                Some((items, p)) => push(&mut stack, &mut top, Sexp::List(items, p)),
                None => errors.push(err(pos, "unmatched ')'")),
            },
            _ => {}
        }
    }
    for (_, p) in stack {
        errors.push(err(p, "unclosed '('"));
    }
    if errors.is_empty() {
        Ok(top)
    } else {
        Err(errors)
    }
}

/// Reads exactly one expression.
pub fn read_one(text: &str) -> Result<Sexp, Vec<SyntaxError>> {
    let mut all = read_sexps(text)?;
    match all.len() {
        1 => Ok(all.pop().expect("one")),
        0 => Err(vec![err(Pos { line: 1, col: 1 }, "empty expression")]),
        _ => Err(vec![err(all[1].pos(), "more than one expression")]),
    }
}

/// What a definition denotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Ring,
    Ideal,
    Hom,
    Amalgamation,
    FiberProduct,
}

impl Kind {
    /// Amalgamations and fiber products stand for their carriers.
    pub fn is_ring_like(self) -> bool {
        matches!(self, Kind::Ring | Kind::Amalgamation | Kind::FiberProduct)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Ring => "ring",
            Kind::Ideal => "ideal",
            Kind::Hom => "hom",
            Kind::Amalgamation => "amalgamation",
            Kind::FiberProduct => "fiber-product",
        })
    }
}

pub const NAMED_HOMS: [&str; 6] = ["reduction", "inclusion", "identity", "proj1", "proj2", "diagonal"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Definition {
    pub name: String,
    pub kind: Kind,
    pub expr: Sexp,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectation {
    pub name: String,
    pub verdicts: Vec<(String, bool)>,
    pub pos: Pos,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpecFile {
    pub definitions: Vec<Definition>,
    pub expectations: Vec<Expectation>,
}

impl SpecFile {
    pub fn definition(&self, name: &str) -> Option<&Definition> {
        self.definitions.iter().find(|d| d.name == name)
    }

    /// The file in canonical layout: one form per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for d in &self.definitions {
            s.push_str(&format!("(def {} {})\n", d.name, d.expr));
        }
        for e in &self.expectations {
            s.push_str(&format!("(expect {}", e.name));
            for (k, v) in &e.verdicts {
                s.push_str(&format!(" ({k} {v})"));
            }
            s.push_str(")\n");
        }
        s
    }
}

struct Checker<'a> {
    kinds: &'a HashMap<String, Kind>,
    errors: Vec<SyntaxError>,
}

fn natural(e: &Sexp) -> Option<usize> {
    e.atom().and_then(|s| s.parse().ok())
}

impl Checker<'_> {
    fn fail(&mut self, pos: Pos, message: impl Into<String>) -> Option<Kind> {
        self.errors.push(err(pos, message));
        None
    }

    fn arity(&mut self, items: &[Sexp], n: usize, what: &str, pos: Pos) -> bool {
        if items.len() != n + 1 {
            self.fail(pos, format!("{what} takes {n} arguments, found {}", items.len() - 1));
            return false;
        }
        true
    }

    fn expect_kind(&mut self, e: &Sexp, want: Kind, short_hom: bool) {
        let got = if short_hom && e.head() == Some("hom") && e.list().map(|l| l.len()) == Some(2) {
            self.named_hom(&e.list().expect("list")[1]);
            Some(Kind::Hom)
        } else {
            self.kind(e)
        };
        match got {
            Some(k) if k == want || (want == Kind::Ring && k.is_ring_like()) => {}
            Some(k) => {
                self.fail(e.pos(), format!("expected a {want}, found a {k}"));
            }
            None => {}
        }
    }

    fn named_hom(&mut self, e: &Sexp) {
        match e.atom() {
            Some(n) if NAMED_HOMS.contains(&n) => {}
            _ => {
                self.fail(e.pos(), format!("unknown named homomorphism {e}"));
            }
        }
    }

    fn sublist<'e>(&mut self, e: &'e Sexp, head: &str) -> Option<&'e [Sexp]> {
        if e.head() == Some(head) {
            e.list().map(|l| &l[1..])
        } else {
            self.fail(e.pos(), format!("expected ({head} ...)"));
            None
        }
    }

    fn kind(&mut self, e: &Sexp) -> Option<Kind> {
        let pos = e.pos();
        let items = match e {
            Sexp::Atom(name, _) => {
                return match self.kinds.get(name) {
                    Some(&k) => Some(k),
                    None => self.fail(pos, format!("unresolved reference {name}")),
                }
            }
            Sexp::List(items, _) => items,
        };
        let head = match items.first().and_then(Sexp::atom) {
            Some(h) => h,
            None => return self.fail(pos, "expected a constructor name"),
        };
        match head {
            "zmod" => {
                if self.arity(items, 1, "zmod", pos) {
                    match natural(&items[1]) {
                        Some(n) if n >= 1 => {}
                        _ => return self.fail(items[1].pos(), "zmod: n must be >= 1"),
                    }
                }
                Some(Kind::Ring)
            }
            "truncpoly" => {
                if self.arity(items, 3, "truncpoly", pos) {
                    for x in &items[1..] {
                        if natural(x).is_none() {
                            self.fail(x.pos(), format!("truncpoly: {x} is not a natural number"));
                        }
                    }
                }
                Some(Kind::Ring)
            }
            "polyquot" => {
                if self.arity(items, 2, "polyquot", pos) {
                    self.expect_kind(&items[1], Kind::Ring, false);
                    if let Some(cs) = self.sublist(&items[2], "poly") {
                        if cs.len() < 2 {
                            self.fail(items[2].pos(), "polyquot: modulus must have degree >= 1");
                        }
                        if let Some(x) = cs.iter().find(|c| c.atom().is_none()) {
                            self.fail(x.pos(), "coefficients are element names");
                        }
                    }
                }
                Some(Kind::Ring)
            }
            "product" => {
                if self.arity(items, 2, "product", pos) {
                    self.expect_kind(&items[1], Kind::Ring, false);
                    self.expect_kind(&items[2], Kind::Ring, false);
                }
                Some(Kind::Ring)
            }
            "quot" => {
                if self.arity(items, 2, "quot", pos) {
                    self.expect_kind(&items[1], Kind::Ring, false);
                    self.expect_kind(&items[2], Kind::Ideal, false);
                }
                Some(Kind::Ring)
            }
            "ideal" => {
                if items.len() < 2 {
                    return self.fail(pos, "ideal needs a ring");
                }
                self.expect_kind(&items[1], Kind::Ring, false);
                if let Some(x) = items[2..].iter().find(|g| g.atom().is_none()) {
                    self.fail(x.pos(), "generators are element names");
                }
                Some(Kind::Ideal)
            }
            "hom" => {
                match items.len() {
                    2 => {
                        self.fail(pos, "(hom NAMED) is only allowed inside amalg");
                    }
                    4 => {
                        self.expect_kind(&items[1], Kind::Ring, false);
                        self.expect_kind(&items[2], Kind::Ring, false);
                        match &items[3] {
                            Sexp::Atom(..) => self.named_hom(&items[3]),
                            images => {
                                if let Some(xs) = self.sublist(images, "images") {
                                    if let Some(x) = xs.iter().find(|x| x.atom().is_none()) {
                                        self.fail(x.pos(), "images are element names");
                                    }
                                }
                            }
                        }
                    }
                    _ => {
                        self.fail(pos, "hom takes R S (images ..) or R S NAMED");
                    }
                }
                Some(Kind::Hom)
            }
            "amalg" => {
                if self.arity(items, 4, "amalg", pos) {
                    self.expect_kind(&items[1], Kind::Ring, false);
                    self.expect_kind(&items[2], Kind::Ring, false);
                    self.expect_kind(&items[3], Kind::Hom, true);
                    self.expect_kind(&items[4], Kind::Ideal, false);
                }
                Some(Kind::Amalgamation)
            }
            "dup" => {
                if self.arity(items, 2, "dup", pos) {
                    self.expect_kind(&items[1], Kind::Ring, false);
                    self.expect_kind(&items[2], Kind::Ideal, false);
                }
                Some(Kind::Amalgamation)
            }
            "fiber" => {
                if self.arity(items, 2, "fiber", pos) {
                    self.expect_kind(&items[1], Kind::Hom, false);
                    self.expect_kind(&items[2], Kind::Hom, false);
                }
                Some(Kind::FiberProduct)
            }
            "table" => {
                if self.arity(items, 5, "table", pos) {
                    for (x, h) in items[1..].iter().zip(["elements", "zero", "one", "add", "mul"]) {
                        if let Some(xs) = self.sublist(x, h) {
                            if let Some(y) = xs.iter().find(|y| y.atom().is_none()) {
                                self.fail(y.pos(), "table entries are element names");
                            }
                        }
                    }
                }
                Some(Kind::Ring)
            }
            other => self.fail(items[0].pos(), format!("unknown constructor {other}")),
        }
    }
}

/// Parses and statically checks a specification: syntax, constructor names,
/// arities, numeric parameters, reference resolution and kinds. References
/// must point to earlier definitions.
pub fn parse_spec(text: &str) -> Result<SpecFile, Vec<SyntaxError>> {
    let forms = read_sexps(text)?;
    let mut kinds: HashMap<String, Kind> = HashMap::new();
    let mut spec = SpecFile::default();
    let mut errors = Vec::new();
    let verdict_names: Vec<&str> = Verdicts::NAMES.to_vec();

    for form in &forms {
        let pos = form.pos();
        let items = match form.list() {
            Some(items) => items,
            None => {
                errors.push(err(pos, format!("expected (def ..) or (expect ..), found {form}")));
                continue;
            }
        };
        match form.head() {
            Some("def") => {
                if items.len() != 3 {
                    errors.push(err(pos, "def takes a name and an expression"));
                    continue;
                }
                let name = match items[1].atom() {
                    Some(n) => n.to_string(),
                    None => {
                        errors.push(err(items[1].pos(), "definition name must be an atom"));
                        continue;
                    }
                };
                if kinds.contains_key(&name) {
                    errors.push(err(items[1].pos(), format!("duplicate definition {name}")));
                    continue;
                }
                let mut checker = Checker {
                    kinds: &kinds,
                    errors: Vec::new(),
                };
                let kind = checker.kind(&items[2]);
                let failed = !checker.errors.is_empty();
                errors.extend(checker.errors);
                if let (Some(kind), false) = (kind, failed) {
                    kinds.insert(name.clone(), kind);
                    spec.definitions.push(Definition {
                        name,
                        kind,
                        expr: items[2].clone(),
                        pos,
                    });
                }
            }
            Some("expect") => {
                let name = match items.get(1).and_then(Sexp::atom) {
                    Some(n) => n.to_string(),
                    None => {
                        errors.push(err(pos, "expect needs a definition name"));
                        continue;
                    }
                };
                match kinds.get(&name) {
                    Some(k) if k.is_ring_like() => {}
                    Some(k) => errors.push(err(items[1].pos(), format!("{name} is a {k}, not a ring"))),
                    None => errors.push(err(items[1].pos(), format!("unresolved reference {name}"))),
                }
                let mut verdicts = Vec::new();
                for v in &items[2..] {
                    let pair = v.list().filter(|l| l.len() == 2);
                    let parsed = pair.and_then(|l| {
                        let key = l[0].atom()?;
                        let value = l[1].atom()?.parse::<bool>().ok()?;
                        Some((key.to_string(), value))
                    });
                    match parsed {
                        Some((key, value)) if verdict_names.contains(&key.as_str()) => {
                            verdicts.push((key, value))
                        }
                        Some((key, _)) => errors.push(err(v.pos(), format!("unknown verdict {key}"))),
                        None => errors.push(err(v.pos(), "expected (VERDICT true|false)")),
                    }
                }
                spec.expectations.push(Expectation { name, verdicts, pos });
            }
            _ => errors.push(err(pos, format!("expected (def ..) or (expect ..), found {form}"))),
        }
    }
    if errors.is_empty() {
        Ok(spec)
    } else {
        errors.sort_by_key(|e| e.pos);
        Err(errors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_definition() {
        let s = parse_spec("(def Z4 (zmod 4))").unwrap();
        assert_eq!(s.definitions.len(), 1);
        assert_eq!(s.definitions[0].kind, Kind::Ring);
        assert_eq!(s.definitions[0].expr.to_string(), "(zmod 4)");
    }

    #[test]
    fn amalgamation_with_named_hom() {
        let text = "(def Z2 (zmod 2))\n(def D2 (polyquot Z2 (poly 0 0 1)))\n\
                    (def E2 (amalg Z2 D2 (hom inclusion) (ideal D2 x)))";
        let s = parse_spec(text).unwrap();
        assert_eq!(s.definition("E2").unwrap().kind, Kind::Amalgamation);
    }

    #[test]
    fn zmod_zero_rejected() {
        let e = parse_spec("(def X (zmod 0))").unwrap_err();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].pos, Pos { line: 1, col: 14 });
        assert!(e[0].message.contains("n must be >= 1"));
    }

    #[test]
    fn positioned_errors() {
        let e = parse_spec("(def A (zmod 2))\n  (def B (frob A))\n(def C (product A Q))").unwrap_err();
        let msgs: Vec<String> = e.iter().map(|x| x.to_string()).collect();
        assert_eq!(msgs, vec!["2:11: unknown constructor frob", "3:19: unresolved reference Q"]);

        let e = read_sexps("(def A (zmod 2)").unwrap_err();
        assert_eq!(e[0].to_string(), "1:1: unclosed '('");
        let e = read_sexps("; c\n(a))").unwrap_err();
        assert_eq!(e[0].to_string(), "2:4: unmatched ')'");
    }

    #[test]
    fn kinds_and_duplicates() {
        let e = parse_spec("(def A (zmod 2))\n(def A (zmod 3))").unwrap_err();
        assert!(e[0].message.contains("duplicate"));
        let e = parse_spec("(def A (zmod 2))\n(def I (ideal A 1))\n(def B (product A I))").unwrap_err();
        assert!(e[0].message.contains("expected a ring, found a ideal"));
        let e = parse_spec("(def A (zmod 2))\n(def f (hom identity))").unwrap_err();
        assert!(e[0].message.contains("only allowed inside amalg"));
    }

    #[test]
    fn expectations_and_text_round_trip() {
        let text = "(def Z4 (zmod 4)) ; four\n(expect Z4 (p2_wgd_le_1 false) (p3_arithmetical true))";
        let s = parse_spec(text).unwrap();
        assert_eq!(s.expectations[0].verdicts.len(), 2);
        assert_eq!(parse_spec(&s.to_text()).unwrap(), s);
        let e = parse_spec("(def Z4 (zmod 4))\n(expect Z4 (p9 true))").unwrap_err();
        assert!(e[0].message.contains("unknown verdict"));
    }
}
