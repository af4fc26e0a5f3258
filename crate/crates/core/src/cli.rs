//! Text documents, command dispatch and reports.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::affine::{
    grperm_window, induced, induced_co, windowed_algebra_check, windowed_bialgebra_check, windowed_coalgebra_check, AdmissibleRegion,
    InduceKind, PairIndex, PermAlgebra, PermSide, QuadraticPermAlgebra, PROBE_MARGIN,
};
use crate::algkit::{
    build_coregular_rep, build_regular_rep, verify_representation, verify_structure, AlgebraBundle, AlgebraKind, CheckReport, Residual,
    StructureConstants,
};
use crate::coalgkit::{verify_bialgebra, verify_costructure, BialgebraBundle, BialgebraKind, CoalgebraBundle, CoalgebraKind, Coproduct};
use crate::error::{Error, Result};
use crate::exactlin::{parse_rational, BasisSpace, BilinearForm, LinearMap, Rational, Symmetry, Tensor};
use crate::ybe;

/// A parsed input file. Section order is kept for serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub space: BasisSpace,
    pub kind: Option<String>,
    /// Window radius and margin, for documents describing a windowed object.
    pub window: Option<(usize, usize)>,
    pub products: Vec<(String, StructureConstants)>,
    pub coproducts: Vec<(String, Coproduct)>,
    pub forms: Vec<(String, BilinearForm)>,
    pub elements: Vec<(String, Tensor)>,
    pub operators: Vec<(String, LinearMap)>,
}

impl Document {
    pub fn new(space: BasisSpace) -> Self {
        Document {
            space,
            kind: None,
            window: None,
            products: vec![],
            coproducts: vec![],
            forms: vec![],
            elements: vec![],
            operators: vec![],
        }
    }

    pub fn element(&self, name: &str) -> Result<&Tensor> {
        lookup(&self.elements, name, "element")
    }

    pub fn form(&self, name: &str) -> Result<&BilinearForm> {
        lookup(&self.forms, name, "form")
    }

    pub fn operator(&self, name: &str) -> Result<&LinearMap> {
        lookup(&self.operators, name, "operator")
    }

    pub fn product(&self, name: &str) -> Option<&StructureConstants> {
        self.products.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    fn coproduct(&self, name: &str) -> Option<&Coproduct> {
        self.coproducts.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    /// The algebra of the given kind, or of the kind implied by the
    /// document's [kind] section or product names.
    pub fn algebra(&self, kind: Option<AlgebraKind>) -> Result<AlgebraBundle> {
        let kind = match kind {
            Some(k) => k,
            None => self.algebra_kind()?,
        };
        let mut prods = Vec::new();
        for name in kind.product_names() {
            let p = self
                .product(name)
                .ok_or_else(|| Error::Usage(format!("a {kind} algebra needs a [product {name}] section")))?;
            prods.push((*name, p.clone()));
        }
        AlgebraBundle::new(self.space.clone(), kind, prods)
    }

    fn algebra_kind(&self) -> Result<AlgebraKind> {
        if let Some(k) = &self.kind {
            if let Some(a) = AlgebraKind::parse(k) {
                return Ok(a);
            }
            if let Some(b) = BialgebraKind::parse(k) {
                return Ok(b.parts().0);
            }
        }
        let has = |n: &str| self.product(n).is_some();
        Ok(match (has("zinbiel"), has("prelie"), has("dot"), has("bracket"), has("perm")) {
            (true, true, ..) => AlgebraKind::PrePoisson,
            (true, false, ..) => AlgebraKind::Zinbiel,
            (false, true, ..) => AlgebraKind::PreLie,
            (_, _, true, true, _) => AlgebraKind::Poisson,
            (_, _, true, false, _) => AlgebraKind::CommAssoc,
            (_, _, false, true, _) => AlgebraKind::Lie,
            (_, _, _, _, true) => AlgebraKind::Perm,
            _ => return Err(Error::Usage("cannot tell the algebra kind; add a [kind] section".into())),
        })
    }

    pub fn coalgebra(&self, kind: Option<CoalgebraKind>) -> Result<CoalgebraBundle> {
        let kind = match kind {
            Some(k) => k,
            None => self.coalgebra_kind()?,
        };
        let mut cos = Vec::new();
        for name in kind.coproduct_names() {
            let c = self
                .coproduct(name)
                .ok_or_else(|| Error::Usage(format!("a {kind} coalgebra needs a [coproduct {name}] section")))?;
            cos.push((*name, c.clone()));
        }
        CoalgebraBundle::new(self.space.clone(), kind, cos)
    }

    fn coalgebra_kind(&self) -> Result<CoalgebraKind> {
        if let Some(k) = &self.kind {
            if let Some(c) = CoalgebraKind::parse(k) {
                return Ok(c);
            }
            if let Some(b) = BialgebraKind::parse(k) {
                return Ok(b.parts().1);
            }
        }
        let has = |n: &str| self.coproduct(n).is_some();
        Ok(match (has("vartheta"), has("theta"), has("Delta"), has("delta")) {
            (true, true, ..) => CoalgebraKind::PrePoissonCo,
            (true, false, ..) => CoalgebraKind::ZinbielCo,
            (false, true, ..) => CoalgebraKind::PreLieCo,
            (_, _, true, true) => CoalgebraKind::PoissonCo,
            (_, _, true, false) => CoalgebraKind::CocommCoassoc,
            (_, _, false, true) => CoalgebraKind::LieCo,
            _ => return Err(Error::Usage("the document has no coproducts".into())),
        })
    }

    pub fn bialgebra(&self, kind: BialgebraKind) -> Result<BialgebraBundle> {
        let (ak, ck) = kind.parts();
        BialgebraBundle::new(self.algebra(Some(ak))?, self.coalgebra(Some(ck))?, kind)
    }
}

fn lookup<'a, T>(items: &'a [(String, T)], name: &str, what: &str) -> Result<&'a T> {
    items
        .iter()
        .find(|(n, _)| n == name)
        .map(|(_, x)| x)
        .ok_or_else(|| Error::Usage(format!("no {what} named {name}")))
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Splits on commas outside parentheses.
fn split_terms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out.into_iter().map(str::trim).filter(|t| !t.is_empty()).collect()
}

enum Header {
    Space,
    Kind,
    Window,
    Product(String),
    Coproduct(String),
    Form(String, Symmetry),
    Element(String),
    Operator(String),
}

fn parse_header(line: usize, h: &str) -> Result<Header> {
    let words: Vec<&str> = h.split_whitespace().collect();
    let named = |what: &str| -> Result<String> {
        match words.get(1) {
            Some(n) => Ok(n.to_string()),
            None => Err(perr(line, format!("[{what}] needs a name"))),
        }
    };
    let header = match words.first().copied() {
        Some("space") => Header::Space,
        Some("kind") => Header::Kind,
        Some("window") => Header::Window,
        Some("product") => Header::Product(named("product")?),
        Some("coproduct") => Header::Coproduct(named("coproduct")?),
        Some("element") => Header::Element(named("element")?),
        Some("operator") => Header::Operator(named("operator")?),
        Some("form") => {
            let sym = match words.get(2).copied() {
                None | Some("general") => Symmetry::General,
                Some("symmetric") => Symmetry::Symmetric,
                Some("antisymmetric") => Symmetry::Antisymmetric,
                Some(s) => return Err(perr(line, format!("unknown form symmetry {s}"))),
            };
            Header::Form(named("form")?, sym)
        }
        _ => return Err(perr(line, format!("unknown section [{h}]"))),
    };
    let max = match header {
        Header::Form(..) => 3,
        Header::Space | Header::Kind | Header::Window => 1,
        _ => 2,
    };
    if words.len() > max {
        return Err(perr(line, format!("unexpected words in [{h}]")));
    }
    Ok(header)
}

enum Pending {
    None,
    Space { name: Option<String>, dim: Option<usize>, labels: Option<Vec<String>>, line: usize },
    Kind,
    Window,
    Product(String, StructureConstants, std::collections::BTreeSet<(usize, usize)>),
    Coproduct(String, Coproduct, std::collections::BTreeSet<usize>),
    Form(String, BilinearForm, std::collections::BTreeSet<(usize, usize)>),
    Element(String, Tensor, std::collections::BTreeSet<(usize, usize)>),
    Operator(String, LinearMap, std::collections::BTreeSet<usize>),
}

struct Builder {
    space: Option<BasisSpace>,
    doc: Option<Document>,
    seen_space: bool,
}

fn label_idx(space: &BasisSpace, line: usize, l: &str) -> Result<usize> {
    space
        .index_of(l)
        .or_else(|| l.strip_suffix('*').and_then(|b| space.index_of(b)))
        .ok_or_else(|| perr(line, format!("unknown label {l}")))
}

fn scalar(line: usize, s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| perr(line, format!("malformed scalar {s}")))
}

/// "c l1 l2 …" with `n` labels; the coefficient may be omitted.
fn term(space: &BasisSpace, line: usize, t: &str, n: usize) -> Result<(Rational, Vec<usize>)> {
    let words: Vec<&str> = t.split_whitespace().collect();
    let (c, labels) = if words.len() == n + 1 {
        (scalar(line, words[0])?, &words[1..])
    } else if words.len() == n {
        (Rational::from_integer(1.into()), &words[..])
    } else {
        return Err(perr(line, format!("expected a coefficient and {n} label(s) in '{t}'")));
    };
    let idx = labels.iter().map(|l| label_idx(space, line, l)).collect::<Result<Vec<_>>>()?;
    Ok((c, idx))
}

/// Right-hand sides "c l [, c l]*" or "0".
fn rhs(space: &BasisSpace, line: usize, s: &str, n: usize) -> Result<Vec<(Rational, Vec<usize>)>> {
    if s.trim() == "0" {
        return Ok(vec![]);
    }
    split_terms(s).into_iter().map(|t| term(space, line, t, n)).collect()
}

fn arrow(line: usize, s: &str) -> Result<(String, String)> {
    s.split_once("->")
        .map(|(a, b)| (a.trim().to_string(), b.trim().to_string()))
        .ok_or_else(|| perr(line, "expected '->'"))
}

fn labels_on(space: &BasisSpace, line: usize, s: &str, n: usize) -> Result<Vec<usize>> {
    let words: Vec<&str> = s.split_whitespace().collect();
    if words.len() != n {
        return Err(perr(line, format!("expected {n} label(s) before '->'")));
    }
    words.iter().map(|l| label_idx(space, line, l)).collect()
}

pub fn parse_document(text: &str) -> Result<Document> {
    use std::collections::BTreeSet;
    let mut p = Builder { space: None, doc: None, seen_space: false };
    let mut pending = Pending::None;
    let mut kind_seen = false;
    let mut window: (Option<usize>, Option<usize>) = (None, None);

    fn close(p: &mut Builder, pending: Pending) -> Result<()> {
        match pending {
            Pending::None | Pending::Kind | Pending::Window => {}
            Pending::Space { name, dim, labels, line } => {
                let labels = match (dim, labels) {
                    (Some(d), Some(l)) if d != l.len() => {
                        return Err(perr(line, format!("dim={d} but {} basis labels", l.len())));
                    }
                    (_, Some(l)) => l,
                    (Some(d), None) => (1..=d).map(|i| format!("e{i}")).collect(),
                    (None, None) => return Err(perr(line, "[space] needs dim= or basis=")),
                };
                let mut seen = BTreeSet::new();
                for l in &labels {
                    if !seen.insert(l) {
                        return Err(perr(line, format!("duplicate label {l}")));
                    }
                }
                let space = BasisSpace::new(name.as_deref().unwrap_or("A"), labels).map_err(|e| perr(line, e.to_string()))?;
                p.space = Some(space.clone());
                p.doc = Some(Document::new(space));
            }
            Pending::Product(n, s, _) => p.doc.as_mut().expect("space first").products.push((n, s)),
            Pending::Coproduct(n, c, _) => p.doc.as_mut().expect("space first").coproducts.push((n, c)),
            Pending::Form(n, f, _) => p.doc.as_mut().expect("space first").forms.push((n, f)),
            Pending::Element(n, t, _) => p.doc.as_mut().expect("space first").elements.push((n, t)),
            Pending::Operator(n, m, _) => p.doc.as_mut().expect("space first").operators.push((n, m)),
        }
        Ok(())
    }

    let mut kind: Option<String> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let s = raw.split('#').next().unwrap_or("").trim();
        if s.is_empty() {
            continue;
        }
        if let Some(h) = s.strip_prefix('[') {
            let h = h.strip_suffix(']').ok_or_else(|| perr(line, "unterminated section header"))?;
            let header = parse_header(line, h.trim())?;
            close(&mut p, std::mem::replace(&mut pending, Pending::None))?;
            if !matches!(header, Header::Space) && !p.seen_space {
                return Err(perr(line, "the [space] section must come first"));
            }
            let dim = p.space.as_ref().map(|s| s.dim()).unwrap_or(0);
            let doc = p.doc.as_ref();
            let dup = |list: Vec<&String>, n: &String| list.contains(&n);
            pending = match header {
                Header::Space => {
                    if p.seen_space {
                        return Err(perr(line, "more than one [space] section"));
                    }
                    p.seen_space = true;
                    Pending::Space { name: None, dim: None, labels: None, line }
                }
                Header::Kind => {
                    if kind_seen {
                        return Err(perr(line, "more than one [kind] section"));
                    }
                    kind_seen = true;
                    Pending::Kind
                }
                Header::Window => Pending::Window,
                Header::Product(n) => {
                    if dup(doc.unwrap().products.iter().map(|x| &x.0).collect(), &n) {
                        return Err(perr(line, format!("duplicate product {n}")));
                    }
                    Pending::Product(n, StructureConstants::zero(dim), BTreeSet::new())
                }
                Header::Coproduct(n) => {
                    if dup(doc.unwrap().coproducts.iter().map(|x| &x.0).collect(), &n) {
                        return Err(perr(line, format!("duplicate coproduct {n}")));
                    }
                    Pending::Coproduct(n, Coproduct::zero(dim), BTreeSet::new())
                }
                Header::Form(n, sym) => {
                    if dup(doc.unwrap().forms.iter().map(|x| &x.0).collect(), &n) {
                        return Err(perr(line, format!("duplicate form {n}")));
                    }
                    Pending::Form(n, BilinearForm::zero(dim, sym), BTreeSet::new())
                }
                Header::Element(n) => {
                    if dup(doc.unwrap().elements.iter().map(|x| &x.0).collect(), &n) {
                        return Err(perr(line, format!("duplicate element {n}")));
                    }
                    Pending::Element(n, Tensor::zero(2), BTreeSet::new())
                }
                Header::Operator(n) => {
                    if dup(doc.unwrap().operators.iter().map(|x| &x.0).collect(), &n) {
                        return Err(perr(line, format!("duplicate operator {n}")));
                    }
                    Pending::Operator(n, LinearMap::zero(dim, dim), BTreeSet::new())
                }
            };
            continue;
        }
        let space = p.space.clone();
        match &mut pending {
            Pending::None => return Err(perr(line, "entry outside any section")),
            Pending::Space { name, dim, labels, .. } => {
                let (key, val) = s.split_once('=').ok_or_else(|| perr(line, "expected key=value in [space]"))?;
                match key.trim() {
                    "name" => *name = Some(val.trim().to_string()),
                    "dim" => *dim = Some(val.trim().parse().map_err(|_| perr(line, format!("bad dimension {}", val.trim())))?),
                    "basis" => *labels = Some(val.split_whitespace().map(String::from).collect()),
                    k => return Err(perr(line, format!("unknown key {k} in [space]"))),
                }
            }
            Pending::Kind => {
                if kind.is_some() {
                    return Err(perr(line, "[kind] takes a single line"));
                }
                kind = Some(s.to_string());
            }
            Pending::Window => {
                let (key, val) = s.split_once('=').ok_or_else(|| perr(line, "expected key=value in [window]"))?;
                let v: usize = val.trim().parse().map_err(|_| perr(line, format!("bad number {}", val.trim())))?;
                match key.trim() {
                    "n" | "N" => window.0 = Some(v),
                    "margin" => window.1 = Some(v),
                    k => return Err(perr(line, format!("unknown key {k} in [window]"))),
                }
            }
            Pending::Product(_, sc, seen) => {
                let space = space.expect("space first");
                let (l, r) = arrow(line, s)?;
                let ij = labels_on(&space, line, &l, 2)?;
                if !seen.insert((ij[0], ij[1])) {
                    return Err(perr(line, format!("duplicate entry {l}")));
                }
                for (c, k) in rhs(&space, line, &r, 1)? {
                    sc.add(ij[0], ij[1], k[0], c);
                }
            }
            Pending::Coproduct(_, co, seen) => {
                let space = space.expect("space first");
                let (l, r) = arrow(line, s)?;
                let i = labels_on(&space, line, &l, 1)?[0];
                if !seen.insert(i) {
                    return Err(perr(line, format!("duplicate entry {l}")));
                }
                for (c, jk) in rhs(&space, line, &r, 2)? {
                    co.add(i, jk[0], jk[1], c);
                }
            }
            Pending::Form(_, f, seen) => {
                let space = space.expect("space first");
                let (l, r) = arrow(line, s)?;
                let ij = labels_on(&space, line, &l, 2)?;
                if !seen.insert((ij[0], ij[1])) {
                    return Err(perr(line, format!("duplicate entry {l}")));
                }
                f.set(ij[0], ij[1], scalar(line, &r)?);
            }
            Pending::Element(_, t, seen) => {
                let space = space.expect("space first");
                for (c, ij) in rhs(&space, line, s, 2)? {
                    if !seen.insert((ij[0], ij[1])) {
                        return Err(perr(line, "duplicate entry in element"));
                    }
                    t.add_term(&ij, c);
                }
            }
            Pending::Operator(_, m, seen) => {
                let space = space.expect("space first");
                let (l, r) = arrow(line, s)?;
                let i = labels_on(&space, line, &l, 1)?[0];
                if !seen.insert(i) {
                    return Err(perr(line, format!("duplicate entry {l}")));
                }
                for (c, k) in rhs(&space, line, &r, 1)? {
                    m.set(k[0], i, c);
                }
            }
        }
    }
    close(&mut p, pending)?;
    let mut doc = p.doc.ok_or_else(|| perr(0, "missing [space] section"))?;
    doc.kind = kind;
    doc.window = match window {
        (Some(n), m) => Some((n, m.unwrap_or(PROBE_MARGIN))),
        (None, Some(_)) => return Err(perr(0, "[window] needs n=")),
        (None, None) => None,
    };
    Ok(doc)
}

pub fn serialize(doc: &Document) -> String {
    let sp = &doc.space;
    let l = |i: usize| sp.label(i).to_string();
    let mut s = String::new();
    let _ = writeln!(s, "[space]\nname={}\ndim={}\nbasis= {}", sp.name, sp.dim(), sp.labels().join(" "));
    if let Some(k) = &doc.kind {
        let _ = writeln!(s, "[kind]\n{k}");
    }
    if let Some((n, m)) = doc.window {
        let _ = writeln!(s, "[window]\nn={n}\nmargin={m}");
    }
    let terms1 = |t: &Tensor| {
        split_join(t.terms().map(|(k, c)| format!("{c} {}", k.iter().map(|&i| l(i)).collect::<Vec<_>>().join(" "))))
    };
    for (name, p) in &doc.products {
        let _ = writeln!(s, "[product {name}]");
        for i in 0..sp.dim() {
            for j in 0..sp.dim() {
                let t = p.basis_product(i, j);
                if !t.is_zero() {
                    let _ = writeln!(s, "{} {} -> {}", l(i), l(j), terms1(t));
                }
            }
        }
    }
    for (name, c) in &doc.coproducts {
        let _ = writeln!(s, "[coproduct {name}]");
        for i in 0..sp.dim() {
            let t = c.image(i);
            if !t.is_zero() {
                let _ = writeln!(s, "{} -> {}", l(i), terms1(t));
            }
        }
    }
    for (name, f) in &doc.forms {
        let sym = match f.symmetry {
            Symmetry::General => "",
            Symmetry::Symmetric => " symmetric",
            Symmetry::Antisymmetric => " antisymmetric",
        };
        let _ = writeln!(s, "[form {name}{sym}]");
        for (&(i, j), v) in f.entries() {
            let _ = writeln!(s, "{} {} -> {v}", l(i), l(j));
        }
    }
    for (name, t) in &doc.elements {
        let _ = writeln!(s, "[element {name}]");
        for (k, c) in t.terms() {
            let _ = writeln!(s, "{c} {} {}", l(k[0]), l(k[1]));
        }
    }
    for (name, m) in &doc.operators {
        let _ = writeln!(s, "[operator {name}]");
        for i in 0..m.cols() {
            let col = m.column(i);
            if !col.is_zero() {
                let _ = writeln!(s, "{} -> {}", l(i), terms1(&col));
            }
        }
    }
    s
}

fn split_join(it: impl Iterator<Item = String>) -> String {
    it.collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "ppaff", about = "Exact checks for pre-Poisson and Poisson (bi)algebras and their affinizations")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    /// Window radius N of the graded perm algebra.
    #[arg(long, global = true)]
    pub window: Option<usize>,
    /// Margin of the admissible region.
    #[arg(long, global = true)]
    pub margin: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Verify an algebra, coalgebra, bialgebra, perm side or representation.
    Check {
        kind: String,
        file: PathBuf,
        #[arg(long, default_value = "omega")]
        form: String,
    },
    /// Induce structures on A⊗B.
    Induce {
        file: PathBuf,
        /// Perm algebra document ([product perm], [form omega]); default is the 2-dim one.
        #[arg(long)]
        perm: Option<PathBuf>,
        #[arg(long)]
        form: Option<String>,
    },
    /// Residual of a Yang-Baxter type equation.
    Ybe {
        kind: String,
        file: PathBuf,
        #[arg(long)]
        element: String,
    },
    /// Lift r to r̂ on A⊗B.
    Lift {
        file: PathBuf,
        #[arg(long)]
        element: String,
        #[arg(long)]
        perm: Option<PathBuf>,
    },
    /// Coboundary coproduct of r, with a check of the resulting bialgebra.
    Coboundary {
        kind: String,
        file: PathBuf,
        #[arg(long)]
        element: String,
    },
    /// O-operator identities, or their equivalence with the YBE for r♯.
    Ooperator {
        kind: String,
        file: PathBuf,
        #[arg(long)]
        operator: Option<String>,
        #[arg(long)]
        element: Option<String>,
        #[arg(long, default_value = "coregular")]
        rep: String,
    },
    /// Quasi-Frobenius check of a form.
    Qf {
        kind: String,
        file: PathBuf,
        #[arg(long)]
        form: String,
    },
    /// Four-way equivalence harness (thm-quasi-ass or thm-quasi-P).
    Equiv {
        theorem: String,
        file: PathBuf,
        #[arg(long)]
        form: String,
    },
    /// Run the built-in examples.
    Examples,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JsonViolation {
    pub identity: String,
    pub at: Vec<String>,
    pub residual: String,
}

/// The report printed by every verb.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub verb: String,
    pub kind: String,
    pub passed: bool,
    pub violations: Vec<JsonViolation>,
    pub skipped: usize,
    pub window: Option<usize>,
    pub margin: Option<usize>,
    pub notes: Vec<(String, bool)>,
    pub output: Option<String>,
}

/// JSON schema of [`Report`].
pub const REPORT_SCHEMA: &str = r#"{
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "type": "object",
  "required": ["verb", "kind", "passed", "violations", "skipped", "window", "margin", "notes", "output"],
  "additionalProperties": false,
  "properties": {
    "verb": {"type": "string"},
    "kind": {"type": "string"},
    "passed": {"type": "boolean"},
    "violations": {"type": "array", "items": {
      "type": "object",
      "required": ["identity", "at", "residual"],
      "additionalProperties": false,
      "properties": {
        "identity": {"type": "string"},
        "at": {"type": "array", "items": {"type": "string"}},
        "residual": {"type": "string"}
      }
    }},
    "skipped": {"type": "integer", "minimum": 0},
    "window": {"type": ["integer", "null"], "minimum": 0},
    "margin": {"type": ["integer", "null"], "minimum": 0},
    "notes": {"type": "array", "items": {"type": "array", "prefixItems": [{"type": "string"}, {"type": "boolean"}]}},
    "output": {"type": ["string", "null"]}
  }
}"#;

/// Checks a JSON value against [`REPORT_SCHEMA`].
pub fn validate_report(v: &serde_json::Value) -> std::result::Result<(), String> {
    let obj = v.as_object().ok_or("report is not an object")?;
    let keys = ["verb", "kind", "passed", "violations", "skipped", "window", "margin", "notes", "output"];
    for k in keys {
        if !obj.contains_key(k) {
            return Err(format!("missing field {k}"));
        }
    }
    if let Some(k) = obj.keys().find(|k| !keys.contains(&k.as_str())) {
        return Err(format!("unexpected field {k}"));
    }
    let is_uint_or_null = |x: &serde_json::Value| x.is_null() || x.is_u64();
    if !obj["verb"].is_string() || !obj["kind"].is_string() {
        return Err("verb and kind must be strings".into());
    }
    if !obj["passed"].is_boolean() {
        return Err("passed must be a boolean".into());
    }
    if !obj["skipped"].is_u64() || !is_uint_or_null(&obj["window"]) || !is_uint_or_null(&obj["margin"]) {
        return Err("skipped, window and margin must be non-negative integers".into());
    }
    if !(obj["output"].is_null() || obj["output"].is_string()) {
        return Err("output must be a string or null".into());
    }
    for viol in obj["violations"].as_array().ok_or("violations must be an array")? {
        let o = viol.as_object().ok_or("violation is not an object")?;
        if o.len() != 3
            || !o.get("identity").is_some_and(|x| x.is_string())
            || !o.get("residual").is_some_and(|x| x.is_string())
            || !o.get("at").and_then(|x| x.as_array()).is_some_and(|a| a.iter().all(|x| x.is_string()))
        {
            return Err("malformed violation".into());
        }
    }
    for n in obj["notes"].as_array().ok_or("notes must be an array")? {
        let ok = n.as_array().is_some_and(|a| a.len() == 2 && a[0].is_string() && a[1].is_boolean());
        if !ok {
            return Err("malformed note".into());
        }
    }
    Ok(())
}

impl Report {
    fn from_check(verb: &str, kind: &str, r: &CheckReport, label: &dyn Fn(usize) -> String) -> Self {
        let violations = r
            .violations
            .iter()
            .map(|v| JsonViolation {
                identity: v.identity.clone(),
                at: v.indices.iter().map(|&i| label(i)).collect(),
                residual: match &v.residual {
                    Residual::Tensor(t) => t.fmt_with(label),
                    Residual::Scalar(s) => s.to_string(),
                },
            })
            .collect();
        Report {
            verb: verb.into(),
            kind: kind.into(),
            passed: r.passed,
            violations,
            skipped: r.skipped,
            window: r.window,
            margin: r.margin,
            notes: r.notes.clone(),
            output: None,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}: {}", self.verb, self.kind, if self.passed { "passed" } else { "FAILED" });
        if let Some(n) = self.window {
            let _ = writeln!(s, "window N={n} margin={} skipped={}", self.margin.unwrap_or(0), self.skipped);
        } else if self.skipped > 0 {
            let _ = writeln!(s, "skipped={}", self.skipped);
        }
        for (n, b) in &self.notes {
            let _ = writeln!(s, "  {n}: {b}");
        }
        for v in &self.violations {
            let _ = writeln!(s, "  {} at ({}): {}", v.identity, v.at.join(", "), v.residual);
        }
        if let Some(o) = &self.output {
            s.push_str(o);
            if !o.ends_with('\n') {
                s.push('\n');
            }
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Exit code, standard output and standard error of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let format = cli.format;
    match dispatch(&cli) {
        Ok(report) => Outcome {
            code: if report.passed { 0 } else { 1 },
            stdout: match format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json() + "\n",
            },
            stderr: String::new(),
        },
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn read_doc(path: &PathBuf) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
    parse_document(&text)
}

fn region(cli: &Cli) -> Result<Option<AdmissibleRegion>> {
    match (cli.window, cli.margin) {
        (Some(n), m) => Ok(Some(AdmissibleRegion::new(n, m.unwrap_or(PROBE_MARGIN))?)),
        (None, Some(_)) => Err(Error::Usage("--margin needs --window".into())),
        (None, None) => Ok(None),
    }
}

fn perm_side(path: &Option<PathBuf>) -> Result<QuadraticPermAlgebra> {
    match path {
        None => Ok(QuadraticPermAlgebra::two_dim()),
        Some(p) => {
            let d = read_doc(p)?;
            let perm = PermAlgebra::new(d.algebra(Some(AlgebraKind::Perm))?)?;
            let mut omega = d.form("omega")?.clone();
            omega.symmetry = Symmetry::Antisymmetric;
            QuadraticPermAlgebra::new(perm, omega)
        }
    }
}

fn space_label(space: &BasisSpace) -> impl Fn(usize) -> String + '_ {
    move |i| space.label(i).to_string()
}

fn dispatch(cli: &Cli) -> Result<Report> {
    match &cli.verb {
        Verb::Check { kind, file, form } => check(cli, kind, &read_doc(file)?, form),
        Verb::Induce { file, perm, form } => induce(cli, &read_doc(file)?, perm, form.as_deref()),
        Verb::Ybe { kind, file, element } => {
            let doc = read_doc(file)?;
            let k = ybe::YbeKind::parse(kind).ok_or_else(|| Error::Usage(format!("unknown equation {kind}")))?;
            let alg = doc.algebra(None)?;
            let r = doc.element(element)?;
            let mut report = CheckReport::new();
            for (part, t) in ybe::residual(k, &alg, r)? {
                report.push_tensor(part.name(), &[], t);
            }
            let out = Report::from_check("ybe", k.name(), &report, &space_label(&doc.space));
            Ok(out)
        }
        Verb::Lift { file, element, perm } => lift(cli, &read_doc(file)?, element, perm),
        Verb::Coboundary { kind, file, element } => {
            let doc = read_doc(file)?;
            let ck = ybe::CoboundaryKind::parse(kind).ok_or_else(|| Error::Usage(format!("unknown coboundary kind {kind}")))?;
            let alg = doc.algebra(None)?;
            let r = doc.element(element)?;
            let co = ybe::coboundary_coproduct(ck, &alg, r)?;
            let (ak, bk, name) = match ck {
                ybe::CoboundaryKind::Zinbiel => (AlgebraKind::Zinbiel, BialgebraKind::ZinbielBi, "vartheta"),
                ybe::CoboundaryKind::PreLie => (AlgebraKind::PreLie, BialgebraKind::PreLieBi, "theta"),
                ybe::CoboundaryKind::Assoc => (AlgebraKind::CommAssoc, BialgebraKind::Infinitesimal, "Delta"),
                ybe::CoboundaryKind::Lie => (AlgebraKind::Lie, BialgebraKind::LieBi, "delta"),
            };
            let a = doc.algebra(Some(ak))?;
            let coalg = CoalgebraBundle::new(doc.space.clone(), bk.parts().1, vec![(name, co.clone())])?;
            let report = verify_bialgebra(&BialgebraBundle::new(a, coalg, bk)?);
            let mut out = Document::new(doc.space.clone());
            out.coproducts.push((name.into(), co));
            let mut rep = Report::from_check("coboundary", bk.name(), &report, &space_label(&doc.space));
            rep.output = Some(serialize(&out));
            Ok(rep)
        }
        Verb::Ooperator { kind, file, operator, element, rep } => {
            let doc = read_doc(file)?;
            let ok = ybe::OKind::parse(kind).ok_or_else(|| Error::Usage(format!("unknown O-operator kind {kind}")))?;
            let alg = doc.algebra(Some(ok.algebra_kind()))?;
            let label = |i: usize| format!("{}*", doc.space.label(i));
            match (operator, element) {
                (Some(t), None) => {
                    let r = match rep.as_str() {
                        "regular" => build_regular_rep(&alg)?,
                        "coregular" => build_coregular_rep(&alg)?,
                        other => return Err(Error::Usage(format!("unknown representation {other}"))),
                    };
                    let prob = ybe::OOperatorProblem::new(r, doc.operator(t)?.clone())?;
                    let report = ybe::o_operator_check(ok, &prob)?;
                    Ok(Report::from_check("ooperator", kind, &report, &label))
                }
                (None, Some(e)) => {
                    let report = ybe::o_operator_equiv(ok, &alg, doc.element(e)?)?;
                    Ok(Report::from_check("ooperator", kind, &report, &label))
                }
                _ => Err(Error::Usage("give exactly one of --operator and --element".into())),
            }
        }
        Verb::Qf { kind, file, form } => {
            let doc = read_doc(file)?;
            let qk = ybe::QfKind::parse(kind).ok_or_else(|| Error::Usage(format!("unknown quasi-Frobenius kind {kind}")))?;
            let qf = ybe::QuasiFrobenius::new(doc.algebra(Some(qk.algebra_kind()))?, doc.form(form)?.clone(), qk)?;
            let report = ybe::qf_check(&qf)?;
            let mut rep = Report::from_check("qf", kind, &report, &space_label(&doc.space));
            if report.passed && qk.wants_symmetric() {
                let mut out = Document::new(doc.space.clone());
                out.elements.push(("r".into(), ybe::qf_to_r(&qf)?));
                rep.output = Some(serialize(&out));
            }
            Ok(rep)
        }
        Verb::Equiv { theorem, file, form } => {
            let doc = read_doc(file)?;
            let h = ybe::Harness::parse(theorem).ok_or_else(|| Error::Usage(format!("unknown theorem {theorem}")))?;
            let ak = match h {
                ybe::Harness::QuasiAss => AlgebraKind::Zinbiel,
                ybe::Harness::QuasiP => AlgebraKind::PrePoisson,
            };
            if cli.margin.is_some_and(|m| m != PROBE_MARGIN) {
                return Err(Error::Usage(format!("the harness runs at margin {PROBE_MARGIN}")));
            }
            let e = ybe::equivalence_harness(h, &doc.algebra(Some(ak))?, doc.form(form)?, cli.window.unwrap_or(3))?;
            let mut rep = Report::from_check("equiv", theorem, &e.summary(), &|i| i.to_string());
            if !e.agree() {
                rep.violations.truncate(20);
            }
            Ok(rep)
        }
        Verb::Examples => {
            let results = crate::examples::run_all();
            let mut report = CheckReport::new();
            let mut out = String::new();
            for r in &results {
                for f in &r.failures {
                    let _ = writeln!(out, "{}: {f}", r.name);
                }
                report.notes.push((r.name.clone(), r.passed()));
                if !r.passed() {
                    report.passed = false;
                }
            }
            let mut rep = Report::from_check("examples", "builtin", &report, &|i| i.to_string());
            rep.output = (!out.is_empty()).then_some(out);
            Ok(rep)
        }
    }
}

fn check(cli: &Cli, kind: &str, doc: &Document, form: &str) -> Result<Report> {
    let label = space_label(&doc.space);
    let report = if let Some(ak) = AlgebraKind::parse(kind) {
        verify_structure(&doc.algebra(Some(ak))?)
    } else if let Some(ck) = CoalgebraKind::parse(kind) {
        verify_costructure(&doc.coalgebra(Some(ck))?)
    } else if let Some(bk) = BialgebraKind::parse(kind) {
        verify_bialgebra(&doc.bialgebra(bk)?)
    } else {
        match kind {
            "quadratic-perm" => {
                let perm = PermAlgebra::new(doc.algebra(Some(AlgebraKind::Perm))?)?;
                let mut omega = doc.form(form)?.clone();
                omega.symmetry = Symmetry::Antisymmetric;
                QuadraticPermAlgebra::new(perm, omega)?.verify()
            }
            "graded-perm" => {
                let n = cli.window.unwrap_or(3);
                let reg = AdmissibleRegion::new(n, cli.margin.unwrap_or(PROBE_MARGIN))?;
                grperm_window(n)?.verify(&reg)?
            }
            "regular-rep" => verify_representation(&build_regular_rep(&doc.algebra(None)?)?),
            "coregular-rep" => verify_representation(&build_coregular_rep(&doc.algebra(None)?)?),
            _ => return Err(Error::Usage(format!("unknown kind {kind}"))),
        }
    };
    Ok(Report::from_check("check", kind, &report, &label))
}

fn induce(cli: &Cli, doc: &Document, perm: &Option<PathBuf>, form: Option<&str>) -> Result<Report> {
    let alg = doc.algebra(None)?;
    let ik = InduceKind::for_input(alg.kind).ok_or_else(|| Error::UnsupportedKind(format!("nothing is induced from {}", alg.kind)))?;
    let coalg = if doc.coproducts.is_empty() { None } else { Some(doc.coalgebra(None)?) };
    let kind_name = ik.output().name();
    if let Some(reg) = region(cli)? {
        if perm.is_some() {
            return Err(Error::Usage("--perm and --window are exclusive".into()));
        }
        let w = grperm_window(reg.window)?;
        let ind = induced(ik, &alg, &w)?;
        let mut report = windowed_algebra_check(&ind, &reg)?;
        if let Some(c) = &coalg {
            let co = induced_co(c, &w)?;
            report.merge(windowed_coalgebra_check(&co, &reg)?);
            let bk = BialgebraKind::ALL
                .into_iter()
                .find(|b| b.parts() == (alg.kind, c.kind))
                .and_then(crate::affine::induced_bialgebra_kind);
            if let Some(bk) = bk {
                report.merge(windowed_bialgebra_check(bk, &ind, &co, &reg)?);
            }
        }
        if let Some(f) = form {
            report.merge(ybe::windowed_qf_check(&ind, doc.form(f)?, &w, &reg)?);
        }
        let ix = PairIndex::new(alg.dim(), &w);
        let label = |p: usize| crate::affine::pair_label(&alg.space, &w, p);
        let mut rep = Report::from_check("induce", kind_name, &report, &label);
        rep.output = Some(windowed_products(&ind, &reg, &w, ix, &label));
        return Ok(rep);
    }
    let b = perm_side(perm)?;
    let ind = induced(ik, &alg, &b)?;
    let bundle = ind.materialize()?;
    let mut report = verify_structure(&bundle);
    let mut out = Document::new(bundle.space.clone());
    out.kind = Some(kind_name.into());
    out.products = bundle.products().map(|(n, p)| (n.to_string(), p.clone())).collect();
    if let Some(c) = &coalg {
        let co = induced_co(c, &b)?.materialize(bundle.space.clone())?;
        report.merge(verify_costructure(&co));
        let bk = BialgebraKind::ALL
            .into_iter()
            .find(|k| k.parts() == (bundle.kind, co.kind));
        if let Some(bk) = bk {
            let bi = BialgebraBundle::new(bundle.clone(), co.clone(), bk)?;
            let compat = verify_bialgebra(&bi);
            report.merge(compat);
            out.kind = Some(bk.name().into());
        }
        out.coproducts = co.coproducts().map(|(n, c)| (n.to_string(), c.clone())).collect();
    }
    if let Some(f) = form {
        let mut bf = crate::affine::induce_form(doc.form(f)?, &b.omega);
        bf.symmetry = Symmetry::General;
        out.forms.push(("B".into(), bf));
    }
    let mut rep = Report::from_check("induce", kind_name, &report, &space_label(&bundle.space));
    rep.output = Some(serialize(&out));
    Ok(rep)
}

/// Nonzero products of region elements, as a document over the labels used.
fn windowed_products(
    ind: &crate::affine::InducedAlgebra,
    reg: &AdmissibleRegion,
    w: &dyn PermSide,
    ix: PairIndex,
    label: &dyn Fn(usize) -> String,
) -> String {
    let inputs = reg.inputs(ix.a_dim, w);
    let mut used = std::collections::BTreeSet::new();
    let mut lines: Vec<(String, Vec<String>)> = Vec::new();
    let names: Vec<(&str, &dyn crate::algkit::Product)> = [("dot", ind.dot().map(|p| p as &dyn crate::algkit::Product)), ("bracket", ind.bracket().map(|p| p as _))]
        .into_iter()
        .filter_map(|(n, p)| p.map(|p| (n, p)))
        .collect();
    for (name, m) in names {
        let mut entries = Vec::new();
        for &i in &inputs {
            for &j in &inputs {
                let Ok(t) = m.mul_basis(i, j) else { continue };
                if t.is_zero() {
                    continue;
                }
                used.insert(i);
                used.insert(j);
                for (k, _) in t.terms() {
                    used.insert(k[0]);
                }
                let rhs = split_join(t.terms().map(|(k, c)| format!("{c} {}", label(k[0]))));
                entries.push(format!("{} {} -> {rhs}", label(i), label(j)));
            }
        }
        lines.push((name.to_string(), entries));
    }
    let mut s = String::new();
    let labels: Vec<String> = used.iter().map(|&p| label(p)).collect();
    let _ = writeln!(s, "[space]\nname={}\ndim={}\nbasis= {}", "A⊗B", labels.len(), labels.join(" "));
    let _ = writeln!(s, "[kind]\n{}", ind.kind.name());
    let _ = writeln!(s, "[window]\nn={}\nmargin={}", reg.window, reg.margin);
    for (name, entries) in lines {
        let _ = writeln!(s, "[product {name}]");
        for e in entries {
            let _ = writeln!(s, "{e}");
        }
    }
    s
}

fn lift(cli: &Cli, doc: &Document, element: &str, perm: &Option<PathBuf>) -> Result<Report> {
    let alg = doc.algebra(None)?;
    let r = doc.element(element)?;
    let lifted_kind = match alg.kind {
        AlgebraKind::Zinbiel => Some((InduceKind::Assoc, ybe::YbeKind::Aybe)),
        AlgebraKind::PrePoisson => Some((InduceKind::Poisson, ybe::YbeKind::Pybe)),
        AlgebraKind::PreLie => Some((InduceKind::Lie, ybe::YbeKind::Cybe)),
        _ => None,
    };
    let mut report = CheckReport::new();
    if let Some(reg) = region(cli)? {
        if perm.is_some() {
            return Err(Error::Usage("--perm and --window are exclusive".into()));
        }
        let w = grperm_window(reg.window)?;
        let rhat = ybe::lift_solution(r, alg.dim(), &w)?;
        report.window = Some(reg.window);
        report.margin = Some(reg.margin);
        let label = |p: usize| crate::affine::pair_label(&alg.space, &w, p);
        report.push_tensor("skew-symmetry", &[], reg.observe(alg.dim(), &w, &rhat.add(&rhat.flip()?)));
        if let Some((ik, yk)) = lifted_kind {
            let ind = induced(ik, &alg, &w)?;
            let (parts, dropped) = ybe::windowed_residual(yk, &ind, &rhat, &reg, &w)?;
            for (k, t) in parts {
                report.push_tensor(k.name(), &[], t);
            }
            report.skipped += dropped;
        }
        let shown = reg.observe(alg.dim(), &w, &rhat);
        let mut rep = Report::from_check("lift", alg.kind.name(), &report, &label);
        let mut s = String::new();
        let _ = writeln!(s, "[window]\nn={}\nmargin={}\n[element rhat]", reg.window, reg.margin);
        for (k, c) in shown.terms() {
            let _ = writeln!(s, "{c} {} {}", label(k[0]), label(k[1]));
        }
        rep.output = Some(s);
        return Ok(rep);
    }
    let b = perm_side(perm)?;
    let rhat = ybe::lift_solution(r, alg.dim(), &b)?;
    report.push_tensor("skew-symmetry", &[], rhat.add(&rhat.flip()?));
    let space = match lifted_kind {
        Some((ik, yk)) => {
            let bundle = induced(ik, &alg, &b)?.materialize()?;
            for (k, t) in ybe::residual(yk, &bundle, &rhat)? {
                report.push_tensor(k.name(), &[], t);
            }
            bundle.space
        }
        None => induced(InduceKind::Assoc, &alg, &b).ok().map(|i| i.space()).transpose()?.unwrap_or_else(|| {
            let labels = (0..alg.dim() * b.dim()).map(|p| crate::affine::pair_label(&alg.space, &b, p)).collect();
            BasisSpace::new("A⊗B", labels).expect("nonempty")
        }),
    };
    let mut out = Document::new(space.clone());
    out.elements.push(("rhat".into(), rhat));
    let mut rep = Report::from_check("lift", alg.kind.name(), &report, &space_label(&space));
    rep.output = Some(serialize(&out));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::DOCUMENTS;
    use crate::exactlin::q;

    fn parse_err(text: &str) -> (usize, String) {
        match parse_document(text) {
            Err(Error::Parse { line, msg }) => (line, msg),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn zinbiel_document() {
        let doc = parse_document("[space]\ndim=2\nbasis= e1 e2\n[product zinbiel]\ne1 e1 -> 1 e2").unwrap();
        let a = doc.algebra(Some(AlgebraKind::Zinbiel)).unwrap();
        assert_eq!(a.dim(), 2);
        let sc = a.product("zinbiel");
        assert_eq!(sc.get(0, 0, 1), q(1));
        assert_eq!(sc.get(0, 1, 1), q(0));
        assert!(crate::algkit::verify_structure(&a).passed);
    }

    #[test]
    fn empty_product_is_zero() {
        let doc = parse_document("[space]\ndim=3\n[product prelie]\n# nothing\n").unwrap();
        assert_eq!(doc.space.labels(), ["e1", "e2", "e3"]);
        let a = doc.algebra(Some(AlgebraKind::PreLie)).unwrap();
        assert!((0..3).all(|i| (0..3).all(|j| (0..3).all(|k| a.product("prelie").get(i, j, k) == q(0)))));
    }

    #[test]
    fn errors_carry_lines() {
        let (line, msg) = parse_err("[space]\ndim=2\n[product zinbiel]\ne1 e3 -> 1 e2");
        assert_eq!(line, 4);
        assert!(msg.contains("e3"), "{msg}");
        let (line, msg) = parse_err("[space]\ndim=2\n[product zinbiel]\ne1 e1 -> 1 e2\n\ne1 e1 -> 1 e1");
        assert_eq!(line, 6);
        assert!(msg.contains("duplicate"), "{msg}");
        assert_eq!(parse_err("[space]\ndim=2\n[form w symmetric]\ne1 e2 -> 1/0").0, 4);
        assert_eq!(parse_err("[space]\ndim=2\n[element r]\nx e1 e2").0, 4);
        assert_eq!(parse_err("[space]\ndim=2\n[element r]\n1 e1 e2, 2 e1 e2").0, 4);
        assert_eq!(parse_err("[product zinbiel]\n[space]\ndim=2").0, 1);
        assert_eq!(parse_err("[space]\ndim=3\nbasis= a b").0, 1);
    }

    #[test]
    fn comments_and_fractions() {
        let doc = parse_document("[space] # a\nbasis= x y\n[element r]\n-3/2 x y, 1/2 y x # tail\n").unwrap();
        let r = doc.element("r").unwrap();
        assert_eq!(r.get(&[0, 1]), q(-3) / q(2));
        assert_eq!(r.get(&[1, 0]), q(1) / q(2));
    }

    #[test]
    fn round_trip() {
        for (name, text) in DOCUMENTS {
            let doc = parse_document(text).unwrap();
            assert_eq!(parse_document(&serialize(&doc)).unwrap(), doc, "{name}");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run(["ppaff", "examples"]);
        let b = run(["ppaff", "examples"]);
        assert_eq!(a, b);
        assert_eq!(a.code, 0);
        let j = run(["ppaff", "--format", "json", "examples"]);
        let v: serde_json::Value = serde_json::from_str(&j.stdout).unwrap();
        validate_report(&v).unwrap();
        assert_eq!(run(["ppaff", "bogus"]).code, 2);
    }
}
