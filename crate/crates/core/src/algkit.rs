//! Algebras given by structure constants, their axiom catalogs, derived
//! structures, Rota-Baxter operators and representations.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactlin::{dual_map, q, BasisSpace, DualVariant, LinearMap, Rational, Tensor};

/// A product term left the exponent window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutOfWindow;

pub type Partial<T> = std::result::Result<T, OutOfWindow>;

/// A bilinear product known on basis pairs. Finite algebras never report
/// `OutOfWindow`; windowed ones do when a product leaves the window.
pub trait Product {
    fn dim(&self) -> usize;
    fn mul_basis(&self, i: usize, j: usize) -> Partial<Tensor>;

    fn mul(&self, x: &Tensor, y: &Tensor) -> Partial<Tensor> {
        let mut out = Tensor::zero(1);
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let p = self.mul_basis(a[0], b[0])?;
                out.add_scaled(&p, &(ca * cb));
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    table: Vec<Tensor>,
}

impl StructureConstants {
    pub fn zero(dim: usize) -> Self {
        StructureConstants { dim, table: vec![Tensor::zero(1); dim * dim] }
    }

    pub fn from_coeffs(dim: usize, coeffs: &[((usize, usize, usize), Rational)]) -> Result<Self> {
        let mut s = Self::zero(dim);
        for ((i, j, k), c) in coeffs {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::Shape(format!("structure constant ({i},{j},{k}) out of range")));
            }
            s.add(*i, *j, *k, c.clone());
        }
        Ok(s)
    }

    /// Builds the table from a function computing eᵢ·eⱼ.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Tensor) -> Self {
        let mut s = Self::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                s.table[i * dim + j] = f(i, j);
            }
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add(&mut self, i: usize, j: usize, k: usize, c: Rational) {
        self.table[i * self.dim + j].add_term(&[k], c);
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Rational {
        self.table[i * self.dim + j].get(&[k])
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Tensor {
        &self.table[i * self.dim + j]
    }

    pub fn coeffs(&self) -> Vec<((usize, usize, usize), Rational)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.basis_product(i, j).terms() {
                    out.push(((i, j, k[0]), c.clone()));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(Tensor::is_zero)
    }

    pub fn mul_vec(&self, x: &Tensor, y: &Tensor) -> Tensor {
        self.mul(x, y).expect("finite products never leave a window")
    }

    /// Matrix of x ↦ a·x.
    pub fn left_mult(&self, a: usize) -> LinearMap {
        let cols: Vec<Tensor> = (0..self.dim).map(|x| self.basis_product(a, x).clone()).collect();
        LinearMap::from_columns(self.dim, &cols)
    }

    /// Matrix of x ↦ x·a.
    pub fn right_mult(&self, a: usize) -> LinearMap {
        let cols: Vec<Tensor> = (0..self.dim).map(|x| self.basis_product(x, a).clone()).collect();
        LinearMap::from_columns(self.dim, &cols)
    }
}

impl Product for StructureConstants {
    fn dim(&self) -> usize {
        self.dim
    }

    fn mul_basis(&self, i: usize, j: usize) -> Partial<Tensor> {
        Ok(self.basis_product(i, j).clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlgebraKind {
    CommAssoc,
    Lie,
    Perm,
    Zinbiel,
    PreLie,
    Poisson,
    PrePoisson,
}

impl AlgebraKind {
    pub const ALL: [AlgebraKind; 7] = [
        AlgebraKind::CommAssoc,
        AlgebraKind::Lie,
        AlgebraKind::Perm,
        AlgebraKind::Zinbiel,
        AlgebraKind::PreLie,
        AlgebraKind::Poisson,
        AlgebraKind::PrePoisson,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgebraKind::CommAssoc => "comm-assoc",
            AlgebraKind::Lie => "lie",
            AlgebraKind::Perm => "perm",
            AlgebraKind::Zinbiel => "zinbiel",
            AlgebraKind::PreLie => "prelie",
            AlgebraKind::Poisson => "poisson",
            AlgebraKind::PrePoisson => "prepoisson",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Required product names, in canonical order.
    pub fn product_names(self) -> &'static [&'static str] {
        match self {
            AlgebraKind::CommAssoc => &["dot"],
            AlgebraKind::Lie => &["bracket"],
            AlgebraKind::Perm => &["perm"],
            AlgebraKind::Zinbiel => &["zinbiel"],
            AlgebraKind::PreLie => &["prelie"],
            AlgebraKind::Poisson => &["dot", "bracket"],
            AlgebraKind::PrePoisson => &["zinbiel", "prelie"],
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraBundle {
    pub space: BasisSpace,
    pub kind: AlgebraKind,
    products: BTreeMap<String, StructureConstants>,
}

impl AlgebraBundle {
    pub fn new(space: BasisSpace, kind: AlgebraKind, products: Vec<(&str, StructureConstants)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (name, sc) in products {
            if sc.dim() != space.dim() {
                return Err(Error::Malformed(format!(
                    "product {name} has dimension {} but the space has {}",
                    sc.dim(),
                    space.dim()
                )));
            }
            if map.insert(name.to_string(), sc).is_some() {
                return Err(Error::Malformed(format!("product {name} given twice")));
            }
        }
        let mut want: Vec<&str> = kind.product_names().to_vec();
        want.sort_unstable();
        let have: Vec<&str> = map.keys().map(String::as_str).collect();
        if want != have {
            return Err(Error::Malformed(format!(
                "kind {kind} needs products {{{}}}, got {{{}}}",
                want.join(", "),
                have.join(", ")
            )));
        }
        Ok(AlgebraBundle { space, kind, products: map })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn product(&self, name: &str) -> &StructureConstants {
        self.products.get(name).unwrap_or_else(|| panic!("bundle has no product {name}"))
    }

    pub fn products(&self) -> impl Iterator<Item = (&str, &StructureConstants)> {
        self.products.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn product_mut(&mut self, name: &str) -> Option<&mut StructureConstants> {
        self.products.get_mut(name)
    }

    /// The single product of a one-product kind.
    pub fn main(&self) -> &StructureConstants {
        self.product(self.kind.product_names()[0])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Residual {
    Tensor(Tensor),
    Scalar(Rational),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Tensor(t) => t.is_zero(),
            Residual::Scalar(s) => s.is_zero(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    pub indices: Vec<usize>,
    pub residual: Residual,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CheckReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
    pub skipped: usize,
    pub window: Option<usize>,
    pub margin: Option<usize>,
    /// Named sub-results, used by harnesses that compare several checks.
    pub notes: Vec<(String, bool)>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport { passed: true, ..Default::default() }
    }

    pub fn push(&mut self, identity: &str, indices: &[usize], residual: Residual) {
        if residual.is_zero() {
            return;
        }
        self.passed = false;
        self.violations.push(Violation { identity: identity.to_string(), indices: indices.to_vec(), residual });
    }

    pub fn push_tensor(&mut self, identity: &str, indices: &[usize], t: Tensor) {
        self.push(identity, indices, Residual::Tensor(t));
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.passed &= other.passed;
        self.violations.extend(other.violations);
        self.skipped += other.skipped;
        self.notes.extend(other.notes);
        self.window = self.window.or(other.window);
        self.margin = self.margin.or(other.margin);
    }

    pub fn violations_of<'a>(&'a self, identity: &'a str) -> impl Iterator<Item = &'a Violation> + 'a {
        self.violations.iter().filter(move |v| v.identity == identity)
    }
}

pub(crate) fn e(i: usize) -> Tensor {
    Tensor::basis(i)
}

/// Runs `f` on every ordered triple of `inputs`; `OutOfWindow` counts as skipped.
pub(crate) fn each_triple(
    report: &mut CheckReport,
    id: &str,
    inputs: &[usize],
    f: impl Fn(usize, usize, usize) -> Partial<Tensor>,
) {
    for &i in inputs {
        for &j in inputs {
            for &k in inputs {
                match f(i, j, k) {
                    Ok(t) => report.push_tensor(id, &[i, j, k], t),
                    Err(OutOfWindow) => report.skipped += 1,
                }
            }
        }
    }
}

pub(crate) fn each_pair(
    report: &mut CheckReport,
    id: &str,
    inputs: &[usize],
    f: impl Fn(usize, usize) -> Partial<Tensor>,
) {
    for &i in inputs {
        for &j in inputs {
            match f(i, j) {
                Ok(t) => report.push_tensor(id, &[i, j], t),
                Err(OutOfWindow) => report.skipped += 1,
            }
        }
    }
}

fn sum(terms: &[(i64, Tensor)]) -> Tensor {
    let mut t = Tensor::zero(1);
    for (c, x) in terms {
        t.add_scaled(x, &q(*c));
    }
    t
}

/// Axiom catalog for products given as trait objects. `first` is the only
/// product of one-product kinds, `dot`/`zinbiel` for the two-product kinds;
/// `second` is `bracket`/`prelie`.
pub fn check_algebra_axioms(
    kind: AlgebraKind,
    first: &dyn Product,
    second: Option<&dyn Product>,
    inputs: &[usize],
    report: &mut CheckReport,
) {
    match kind {
        AlgebraKind::CommAssoc => comm_assoc(first, inputs, report),
        AlgebraKind::Lie => lie(first, inputs, report),
        AlgebraKind::Perm => {
            let m = first;
            each_triple(report, "perm-assoc", inputs, |i, j, k| {
                Ok(m.mul(&e(i), &m.mul(&e(j), &e(k))?)?.sub(&m.mul(&m.mul(&e(i), &e(j))?, &e(k))?))
            });
            each_triple(report, "perm-left-comm", inputs, |i, j, k| {
                Ok(m.mul(&m.mul(&e(i), &e(j))?, &e(k))?.sub(&m.mul(&m.mul(&e(j), &e(i))?, &e(k))?))
            });
        }
        AlgebraKind::Zinbiel => zinbiel(first, inputs, report),
        AlgebraKind::PreLie => prelie(first, inputs, report),
        AlgebraKind::Poisson => {
            let (dot, br) = (first, second.expect("poisson needs a bracket"));
            comm_assoc(dot, inputs, report);
            lie(br, inputs, report);
            each_triple(report, "leibniz", inputs, |i, j, k| {
                let lhs = br.mul(&e(i), &dot.mul(&e(j), &e(k))?)?;
                let t1 = dot.mul(&br.mul(&e(i), &e(j))?, &e(k))?;
                let t2 = dot.mul(&e(j), &br.mul(&e(i), &e(k))?)?;
                Ok(sum(&[(1, lhs), (-1, t1), (-1, t2)]))
            });
        }
        AlgebraKind::PrePoisson => {
            let (z, p) = (first, second.expect("prepoisson needs a pre-Lie product"));
            zinbiel(z, inputs, report);
            prelie(p, inputs, report);
            each_triple(report, "pp-compat-1", inputs, |i, j, k| {
                let comm = p.mul(&e(i), &e(j))?.sub(&p.mul(&e(j), &e(i))?);
                let lhs = z.mul(&comm, &e(k))?;
                let t1 = p.mul(&e(i), &z.mul(&e(j), &e(k))?)?;
                let t2 = z.mul(&e(j), &p.mul(&e(i), &e(k))?)?;
                Ok(sum(&[(1, lhs), (-1, t1), (1, t2)]))
            });
            each_triple(report, "pp-compat-2", inputs, |i, j, k| {
                let anti = z.mul(&e(i), &e(j))?.add(&z.mul(&e(j), &e(i))?);
                let lhs = p.mul(&anti, &e(k))?;
                let t1 = z.mul(&e(i), &p.mul(&e(j), &e(k))?)?;
                let t2 = z.mul(&e(j), &p.mul(&e(i), &e(k))?)?;
                Ok(sum(&[(1, lhs), (-1, t1), (-1, t2)]))
            });
        }
    }
}

fn comm_assoc(m: &dyn Product, inputs: &[usize], report: &mut CheckReport) {
    each_pair(report, "commutativity", inputs, |i, j| Ok(m.mul_basis(i, j)?.sub(&m.mul_basis(j, i)?)));
    each_triple(report, "associativity", inputs, |i, j, k| {
        Ok(m.mul(&m.mul_basis(i, j)?, &e(k))?.sub(&m.mul(&e(i), &m.mul_basis(j, k)?)?))
    });
}

fn lie(m: &dyn Product, inputs: &[usize], report: &mut CheckReport) {
    each_pair(report, "antisymmetry", inputs, |i, j| Ok(m.mul_basis(i, j)?.add(&m.mul_basis(j, i)?)));
    each_triple(report, "jacobi", inputs, |i, j, k| {
        let a = m.mul(&e(i), &m.mul_basis(j, k)?)?;
        let b = m.mul(&e(j), &m.mul_basis(k, i)?)?;
        let c = m.mul(&e(k), &m.mul_basis(i, j)?)?;
        Ok(sum(&[(1, a), (1, b), (1, c)]))
    });
}

fn zinbiel(m: &dyn Product, inputs: &[usize], report: &mut CheckReport) {
    each_triple(report, "zinbiel", inputs, |i, j, k| {
        let lhs = m.mul(&e(i), &m.mul_basis(j, k)?)?;
        let t1 = m.mul(&m.mul_basis(i, j)?, &e(k))?;
        let t2 = m.mul(&m.mul_basis(j, i)?, &e(k))?;
        Ok(sum(&[(1, lhs), (-1, t1), (-1, t2)]))
    });
}

fn prelie(m: &dyn Product, inputs: &[usize], report: &mut CheckReport) {
    each_triple(report, "prelie", inputs, |i, j, k| {
        let a = m.mul(&m.mul_basis(i, j)?, &e(k))?;
        let b = m.mul(&e(i), &m.mul_basis(j, k)?)?;
        let c = m.mul(&m.mul_basis(j, i)?, &e(k))?;
        let d = m.mul(&e(j), &m.mul_basis(i, k)?)?;
        Ok(sum(&[(1, a), (-1, b), (-1, c), (1, d)]))
    });
}

/// The two products of a bundle in the order `check_algebra_axioms` expects.
pub fn bundle_ops(bundle: &AlgebraBundle) -> (&StructureConstants, Option<&StructureConstants>) {
    let names = bundle.kind.product_names();
    (bundle.product(names[0]), names.get(1).map(|n| bundle.product(n)))
}

pub fn verify_structure(bundle: &AlgebraBundle) -> CheckReport {
    let mut report = CheckReport::new();
    let inputs: Vec<usize> = (0..bundle.dim()).collect();
    let (a, b) = bundle_ops(bundle);
    check_algebra_axioms(bundle.kind, a, b.map(|x| x as &dyn Product), &inputs, &mut report);
    report
}

/// Structure constant whose value is affine in the template slots.
#[derive(Debug, Clone)]
pub struct ParamEntry {
    pub product: String,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub constant: Rational,
    pub linear: Vec<(usize, Rational)>,
}

#[derive(Debug, Clone)]
pub struct ParametricBundle {
    pub space: BasisSpace,
    pub kind: AlgebraKind,
    pub slots: usize,
    pub entries: Vec<ParamEntry>,
}

impl ParametricBundle {
    pub fn instantiate(&self, sample: &[Rational]) -> Result<AlgebraBundle> {
        if sample.len() != self.slots {
            return Err(Error::Arity { expected: self.slots, got: sample.len() });
        }
        let dim = self.space.dim();
        let mut prods: BTreeMap<&str, StructureConstants> =
            self.kind.product_names().iter().map(|n| (*n, StructureConstants::zero(dim))).collect();
        for en in &self.entries {
            let mut v = en.constant.clone();
            for (s, c) in &en.linear {
                v += c * &sample[*s];
            }
            let sc = prods
                .get_mut(en.product.as_str())
                .ok_or_else(|| Error::Malformed(format!("unknown product {}", en.product)))?;
            sc.add(en.i, en.j, en.k, v);
        }
        AlgebraBundle::new(self.space.clone(), self.kind, prods.into_iter().collect())
    }
}

pub fn verify_parametric_family(template: &ParametricBundle, samples: &[Vec<Rational>]) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    for (n, s) in samples.iter().enumerate() {
        let r = verify_structure(&template.instantiate(s)?);
        for mut v in r.violations {
            v.identity = format!("sample{n}:{}", v.identity);
            report.passed = false;
            report.violations.push(v);
        }
    }
    Ok(report)
}

/// Anticommutator of ∗ and commutator of ∘.
pub fn subadjacent(bundle: &AlgebraBundle) -> Result<AlgebraBundle> {
    let dim = bundle.dim();
    let anti = |m: &StructureConstants| {
        StructureConstants::from_fn(dim, |i, j| m.basis_product(i, j).add(m.basis_product(j, i)))
    };
    let comm = |m: &StructureConstants| {
        StructureConstants::from_fn(dim, |i, j| m.basis_product(i, j).sub(m.basis_product(j, i)))
    };
    let space = bundle.space.clone();
    match bundle.kind {
        AlgebraKind::Zinbiel => AlgebraBundle::new(space, AlgebraKind::CommAssoc, vec![("dot", anti(bundle.main()))]),
        AlgebraKind::PreLie => AlgebraBundle::new(space, AlgebraKind::Lie, vec![("bracket", comm(bundle.main()))]),
        AlgebraKind::PrePoisson => AlgebraBundle::new(
            space,
            AlgebraKind::Poisson,
            vec![("dot", anti(bundle.product("zinbiel"))), ("bracket", comm(bundle.product("prelie")))],
        ),
        k => Err(Error::UnsupportedKind(format!("no sub-adjacent structure for {k}"))),
    }
}

fn require_endo(bundle: &AlgebraBundle, r: &LinearMap) -> Result<()> {
    if r.rows() != bundle.dim() || r.cols() != bundle.dim() {
        return Err(Error::Shape(format!(
            "operator is {}x{} but the algebra has dimension {}",
            r.rows(),
            r.cols(),
            bundle.dim()
        )));
    }
    Ok(())
}

pub fn rota_baxter_check(poisson: &AlgebraBundle, r: &LinearMap) -> Result<CheckReport> {
    if poisson.kind != AlgebraKind::Poisson {
        return Err(Error::UnsupportedKind(format!("Rota-Baxter check needs a poisson bundle, got {}", poisson.kind)));
    }
    require_endo(poisson, r)?;
    let mut report = CheckReport::new();
    let inputs: Vec<usize> = (0..poisson.dim()).collect();
    for (name, id) in [("dot", "rota-baxter-dot"), ("bracket", "rota-baxter-bracket")] {
        let m = poisson.product(name);
        each_pair(&mut report, id, &inputs, |i, j| {
            let (rx, ry) = (r.column(i), r.column(j));
            let lhs = m.mul_vec(&rx, &ry);
            let inner = m.mul_vec(&rx, &e(j)).add(&m.mul_vec(&e(i), &ry));
            Ok(lhs.sub(&r.apply(&inner)))
        });
    }
    Ok(report)
}

/// p₁∗p₂ = R(p₁)p₂ and p₁∘p₂ = [R(p₁), p₂].
pub fn rota_baxter_induce(poisson: &AlgebraBundle, r: &LinearMap) -> Result<AlgebraBundle> {
    let check = rota_baxter_check(poisson, r)?;
    if !check.passed {
        return Err(Error::Precondition("operator is not a Rota-Baxter operator".into()));
    }
    let dim = poisson.dim();
    let (dot, br) = (poisson.product("dot"), poisson.product("bracket"));
    let z = StructureConstants::from_fn(dim, |i, j| dot.mul_vec(&r.column(i), &e(j)));
    let p = StructureConstants::from_fn(dim, |i, j| br.mul_vec(&r.column(i), &e(j)));
    AlgebraBundle::new(poisson.space.clone(), AlgebraKind::PrePoisson, vec![("zinbiel", z), ("prelie", p)])
}

pub const MU: &str = "mu";
pub const RHO: &str = "rho";
pub const L: &str = "l";
pub const R: &str = "r";
pub const LHAT: &str = "lhat";
pub const RHAT: &str = "rhat";

pub fn action_names(kind: AlgebraKind) -> Result<&'static [&'static str]> {
    Ok(match kind {
        AlgebraKind::CommAssoc => &[MU],
        AlgebraKind::Lie => &[RHO],
        AlgebraKind::Poisson => &[MU, RHO],
        AlgebraKind::Zinbiel => &[L, R],
        AlgebraKind::PreLie => &[LHAT, RHAT],
        AlgebraKind::PrePoisson => &[L, R, LHAT, RHAT],
        AlgebraKind::Perm => return Err(Error::UnsupportedKind("representations of perm algebras".into())),
    })
}

/// Each action is stored as one endomorphism of V per algebra basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub algebra: AlgebraBundle,
    pub space: BasisSpace,
    pub actions: BTreeMap<String, Vec<LinearMap>>,
}

impl Representation {
    pub fn new(algebra: AlgebraBundle, space: BasisSpace, actions: Vec<(&str, Vec<LinearMap>)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (name, maps) in actions {
            if maps.len() != algebra.dim() {
                return Err(Error::Shape(format!("action {name} needs one matrix per algebra basis vector")));
            }
            if maps.iter().any(|m| m.rows() != space.dim() || m.cols() != space.dim()) {
                return Err(Error::Shape(format!("action {name} has a matrix of the wrong size")));
            }
            map.insert(name.to_string(), maps);
        }
        let mut want: Vec<&str> = action_names(algebra.kind)?.to_vec();
        want.sort_unstable();
        let have: Vec<&str> = map.keys().map(String::as_str).collect();
        if want != have {
            return Err(Error::Malformed(format!("kind {} needs actions {{{}}}", algebra.kind, want.join(", "))));
        }
        Ok(Representation { algebra, space, actions: map })
    }

    /// The action of an algebra element (rank-1 tensor).
    pub fn act(&self, name: &str, a: &Tensor) -> LinearMap {
        let maps = &self.actions[name];
        let n = self.space.dim();
        let mut out = LinearMap::zero(n, n);
        for (i, c) in a.terms() {
            out = out.add_scaled(&maps[i[0]], c);
        }
        out
    }

    pub fn act_basis(&self, name: &str, i: usize) -> &LinearMap {
        &self.actions[name][i]
    }
}

fn mults(m: &StructureConstants, left: bool) -> Vec<LinearMap> {
    (0..m.dim()).map(|a| if left { m.left_mult(a) } else { m.right_mult(a) }).collect()
}

pub fn build_regular_rep(bundle: &AlgebraBundle) -> Result<Representation> {
    let actions: Vec<(&str, Vec<LinearMap>)> = match bundle.kind {
        AlgebraKind::CommAssoc => vec![(MU, mults(bundle.main(), true))],
        AlgebraKind::Lie => vec![(RHO, mults(bundle.main(), true))],
        AlgebraKind::Poisson => {
            vec![(MU, mults(bundle.product("dot"), true)), (RHO, mults(bundle.product("bracket"), true))]
        }
        AlgebraKind::Zinbiel => vec![(L, mults(bundle.main(), true)), (R, mults(bundle.main(), false))],
        AlgebraKind::PreLie => vec![(LHAT, mults(bundle.main(), true)), (RHAT, mults(bundle.main(), false))],
        AlgebraKind::PrePoisson => {
            let (z, p) = (bundle.product("zinbiel"), bundle.product("prelie"));
            vec![(L, mults(z, true)), (R, mults(z, false)), (LHAT, mults(p, true)), (RHAT, mults(p, false))]
        }
        AlgebraKind::Perm => return Err(Error::UnsupportedKind("representations of perm algebras".into())),
    };
    Representation::new(bundle.clone(), bundle.space.clone(), actions)
}

fn star(maps: &[LinearMap]) -> Vec<LinearMap> {
    maps.iter().map(|m| dual_map(m, DualVariant::Negated)).collect()
}

fn combine(a: &[LinearMap], b: &[LinearMap], cb: i64) -> Vec<LinearMap> {
    a.iter().zip(b).map(|(x, y)| x.add_scaled(y, &q(cb))).collect()
}

fn negate(a: &[LinearMap]) -> Vec<LinearMap> {
    a.iter().map(LinearMap::neg).collect()
}

/// Coregular representations on the dual space, with f* the negated transpose:
/// comm-assoc (−𝔲*), lie (ad*), zinbiel (−𝔩*−𝔯*, 𝔯*), prelie (𝔩̂*−𝔯̂*, −𝔯̂*),
/// and the combinations for poisson and prepoisson.
pub fn build_coregular_rep(bundle: &AlgebraBundle) -> Result<Representation> {
    let zin = |m: &StructureConstants| {
        let (l, r) = (star(&mults(m, true)), star(&mults(m, false)));
        (negate(&combine(&l, &r, 1)), r)
    };
    let pre = |m: &StructureConstants| {
        let (l, r) = (star(&mults(m, true)), star(&mults(m, false)));
        (combine(&l, &r, -1), negate(&r))
    };
    let actions: Vec<(&str, Vec<LinearMap>)> = match bundle.kind {
        AlgebraKind::CommAssoc => vec![(MU, negate(&star(&mults(bundle.main(), true))))],
        AlgebraKind::Lie => vec![(RHO, star(&mults(bundle.main(), true)))],
        AlgebraKind::Poisson => vec![
            (MU, negate(&star(&mults(bundle.product("dot"), true)))),
            (RHO, star(&mults(bundle.product("bracket"), true))),
        ],
        AlgebraKind::Zinbiel => {
            let (l, r) = zin(bundle.main());
            vec![(L, l), (R, r)]
        }
        AlgebraKind::PreLie => {
            let (lh, rh) = pre(bundle.main());
            vec![(LHAT, lh), (RHAT, rh)]
        }
        AlgebraKind::PrePoisson => {
            let (l, r) = zin(bundle.product("zinbiel"));
            let (lh, rh) = pre(bundle.product("prelie"));
            vec![(L, l), (R, r), (LHAT, lh), (RHAT, rh)]
        }
        AlgebraKind::Perm => return Err(Error::UnsupportedKind("representations of perm algebras".into())),
    };
    Representation::new(bundle.clone(), bundle.space.dual(), actions)
}

fn matrix_residual(m: &LinearMap) -> Tensor {
    let mut t = Tensor::zero(2);
    for (&(i, j), v) in m.entries() {
        t.add_term(&[i, j], v.clone());
    }
    t
}

pub fn verify_representation(rep: &Representation) -> CheckReport {
    let mut report = CheckReport::new();
    let alg = &rep.algebra;
    let n = alg.dim();
    let act = |name: &str, a: &Tensor| rep.act(name, a);
    let b = |name: &str, i: usize| rep.act_basis(name, i).clone();
    let mut check = |id: &str, f: &dyn Fn(usize, usize) -> LinearMap| {
        for i in 0..n {
            for j in 0..n {
                let m = f(i, j);
                if !m.is_zero() {
                    report.push_tensor(id, &[i, j], matrix_residual(&m));
                }
            }
        }
    };
    let prod = |name: &str, i: usize, j: usize| alg.product(name).basis_product(i, j).clone();
    match alg.kind {
        AlgebraKind::CommAssoc => {
            check("rep-assoc", &|i, j| b(MU, i).compose(&b(MU, j)).sub(&act(MU, &prod("dot", i, j))));
        }
        AlgebraKind::Lie => {
            check("rep-lie", &|i, j| lie_rep(&act, &b, "bracket", &prod, i, j));
        }
        AlgebraKind::Poisson => {
            check("rep-assoc", &|i, j| b(MU, i).compose(&b(MU, j)).sub(&act(MU, &prod("dot", i, j))));
            check("rep-lie", &|i, j| lie_rep(&act, &b, "bracket", &prod, i, j));
            check("rep-poisson-1", &|i, j| {
                act(RHO, &prod("dot", i, j)).sub(&b(MU, j).compose(&b(RHO, i))).sub(&b(MU, i).compose(&b(RHO, j)))
            });
            check("rep-poisson-2", &|i, j| {
                act(MU, &prod("bracket", i, j)).sub(&b(RHO, i).compose(&b(MU, j))).add(&b(MU, j).compose(&b(RHO, i)))
            });
        }
        AlgebraKind::Zinbiel => zinbiel_rep(&mut check, &act, &b, "zinbiel", &prod),
        AlgebraKind::PreLie => prelie_rep(&mut check, &act, &b, "prelie", &prod),
        AlgebraKind::PrePoisson => {
            zinbiel_rep(&mut check, &act, &b, "zinbiel", &prod);
            prelie_rep(&mut check, &act, &b, "prelie", &prod);
            let circ = |i, j| prod("prelie", i, j);
            let ast = |i, j| prod("zinbiel", i, j);
            check("rep-pp-1", &|i, j| {
                act(L, &circ(i, j).sub(&circ(j, i))).sub(&b(LHAT, i).compose(&b(L, j))).add(&b(L, j).compose(&b(LHAT, i)))
            });
            check("rep-pp-2", &|i, j| {
                act(R, &circ(i, j))
                    .sub(&b(R, j).compose(&b(RHAT, i)))
                    .add(&b(R, j).compose(&b(LHAT, i)))
                    .sub(&b(LHAT, i).compose(&b(R, j)))
            });
            check("rep-pp-3", &|i, j| {
                act(R, &circ(i, j))
                    .sub(&b(RHAT, j).compose(&b(L, i)))
                    .sub(&b(RHAT, j).compose(&b(R, i)))
                    .add(&b(L, i).compose(&b(RHAT, j)))
            });
            check("rep-pp-4", &|i, j| {
                act(LHAT, &ast(i, j).add(&ast(j, i))).sub(&b(L, i).compose(&b(LHAT, j))).sub(&b(L, j).compose(&b(LHAT, i)))
            });
            check("rep-pp-5", &|i, j| {
                act(RHAT, &ast(i, j))
                    .sub(&b(L, i).compose(&b(RHAT, j)))
                    .sub(&b(R, j).compose(&b(RHAT, i)))
                    .add(&b(R, j).compose(&b(LHAT, i)))
            });
        }
        AlgebraKind::Perm => {}
    }
    report
}

type Act<'a> = dyn Fn(&str, &Tensor) -> LinearMap + 'a;
type BasisAct<'a> = dyn Fn(&str, usize) -> LinearMap + 'a;
type Prod<'a> = dyn Fn(&str, usize, usize) -> Tensor + 'a;

fn lie_rep(act: &Act, b: &BasisAct, name: &str, prod: &Prod, i: usize, j: usize) -> LinearMap {
    act(RHO, &prod(name, i, j)).sub(&b(RHO, i).compose(&b(RHO, j))).add(&b(RHO, j).compose(&b(RHO, i)))
}

fn zinbiel_rep(check: &mut dyn FnMut(&str, &dyn Fn(usize, usize) -> LinearMap), act: &Act, b: &BasisAct, name: &str, prod: &Prod) {
    check("rep-zinbiel-1", &|i, j| {
        b(L, i).compose(&b(L, j)).sub(&act(L, &prod(name, i, j))).sub(&act(L, &prod(name, j, i)))
    });
    check("rep-zinbiel-2", &|i, j| act(R, &prod(name, i, j)).sub(&b(L, i).compose(&b(R, j))));
    check("rep-zinbiel-3", &|i, j| {
        act(R, &prod(name, i, j)).sub(&b(R, j).compose(&b(L, i))).sub(&b(R, j).compose(&b(R, i)))
    });
}

fn prelie_rep(check: &mut dyn FnMut(&str, &dyn Fn(usize, usize) -> LinearMap), act: &Act, b: &BasisAct, name: &str, prod: &Prod) {
    check("rep-prelie-1", &|i, j| {
        b(LHAT, i)
            .compose(&b(LHAT, j))
            .sub(&act(LHAT, &prod(name, i, j)))
            .sub(&b(LHAT, j).compose(&b(LHAT, i)))
            .add(&act(LHAT, &prod(name, j, i)))
    });
    check("rep-prelie-2", &|i, j| {
        b(LHAT, i)
            .compose(&b(RHAT, j))
            .sub(&b(RHAT, j).compose(&b(LHAT, i)))
            .sub(&act(RHAT, &prod(name, i, j)))
            .add(&b(RHAT, j).compose(&b(RHAT, i)))
    });
}

impl Residual {
    pub fn as_tensor(&self) -> Option<&Tensor> {
        match self {
            Residual::Tensor(t) => Some(t),
            Residual::Scalar(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::qf;
    use crate::fixtures::*;

    fn all_fixtures() -> Vec<AlgebraBundle> {
        vec![
            zinbiel_2d(),
            zinbiel_3d(),
            prelie_2d(),
            prelie_affine(),
            prepoisson_2d(),
            comm_assoc_2d(),
            comm_assoc_3d(),
            heisenberg(),
            lie_3d(),
            poisson_3d(),
        ]
    }

    #[test]
    fn fixtures_verify() {
        for a in all_fixtures() {
            let r = verify_structure(&a);
            assert!(r.passed, "{}: {:?}", a.kind, r.violations.first());
        }
        for k in AlgebraKind::ALL {
            assert!(verify_structure(&zero_algebra(k, 2)).passed);
        }
    }

    #[test]
    fn broken_candidates_name_the_identity() {
        let r = verify_structure(&broken_zinbiel());
        assert!(!r.passed);
        // e1∗(e1∗e1) = e1 but (e1∗e1)∗e1 + (e1∗e1)∗e1 = 2e1.
        let v = r.violations_of("zinbiel").find(|v| v.indices == [0, 0, 0]).unwrap();
        assert_eq!(v.residual, Residual::Tensor(Tensor::pure(&[0], q(-1))));
        assert!(!verify_structure(&broken_prelie()).passed);
    }

    #[test]
    fn wrong_product_names_are_rejected() {
        let s = BasisSpace::numbered("A", "e", 2);
        assert!(AlgebraBundle::new(s.clone(), AlgebraKind::Zinbiel, vec![("dot", StructureConstants::zero(2))]).is_err());
        assert!(AlgebraBundle::new(s, AlgebraKind::Zinbiel, vec![("zinbiel", StructureConstants::zero(3))]).is_err());
        assert!(StructureConstants::from_coeffs(2, &[((0, 0, 2), q(1))]).is_err());
    }

    #[test]
    fn subadjacent_structures() {
        let c = subadjacent(&zinbiel_2d()).unwrap();
        assert_eq!(c.kind, AlgebraKind::CommAssoc);
        assert_eq!(c.product("dot").basis_product(0, 0), &Tensor::pure(&[1], q(2)));
        let l = subadjacent(&prelie_2d()).unwrap();
        assert!(l.product("bracket").is_zero());
        let p = subadjacent(&prepoisson_2d()).unwrap();
        assert_eq!(p.kind, AlgebraKind::Poisson);
        assert!(verify_structure(&p).passed);
        assert!(subadjacent(&heisenberg()).is_err());
    }

    #[test]
    fn representations_verify() {
        for a in all_fixtures() {
            let reg = build_regular_rep(&a).unwrap();
            assert!(verify_representation(&reg).passed, "regular {}", a.kind);
            let co = build_coregular_rep(&a).unwrap();
            assert!(verify_representation(&co).passed, "coregular {}", a.kind);
            assert_eq!(co.space.label(0), "e1*");
        }
        assert!(build_regular_rep(&zero_algebra(AlgebraKind::Perm, 2)).is_err());
    }

    #[test]
    fn broken_representation_fails() {
        let a = zinbiel_2d();
        let mut reg = build_regular_rep(&a).unwrap();
        let mut bad = reg.act_basis(L, 0).clone();
        bad.set(0, 0, q(1));
        reg = Representation::new(a.clone(), a.space.clone(), vec![(L, vec![bad, reg.act_basis(L, 1).clone()]), (R, (0..2).map(|i| reg.act_basis(R, i).clone()).collect())])
            .unwrap();
        assert!(!verify_representation(&reg).passed);
    }

    #[test]
    fn rota_baxter() {
        let p = poisson_3d();
        let mut r = LinearMap::zero(3, 3);
        r.set(1, 0, q(1));
        assert!(rota_baxter_check(&p, &r).unwrap().passed);
        let pp = rota_baxter_induce(&p, &r).unwrap();
        assert!(verify_structure(&pp).passed);
        let id = LinearMap::identity(3);
        assert!(!rota_baxter_check(&p, &id).unwrap().passed);
        assert!(rota_baxter_induce(&p, &id).is_err());
        assert!(rota_baxter_check(&p, &LinearMap::identity(2)).is_err());
    }

    fn family_template(zin_target: usize) -> ParametricBundle {
        let en = |product: &str, i, j, k, linear: Vec<(usize, Rational)>| ParamEntry {
            product: product.into(),
            i,
            j,
            k,
            constant: q(0),
            linear,
        };
        ParametricBundle {
            space: BasisSpace::numbered("A", "e", 2),
            kind: AlgebraKind::PrePoisson,
            slots: 3,
            entries: vec![
                en("zinbiel", 0, 0, zin_target, vec![(0, q(1))]),
                en("prelie", 0, 0, 0, vec![(1, q(1))]),
                en("prelie", 0, 0, 1, vec![(2, q(1))]),
                en("prelie", 0, 1, 1, vec![(1, q(1))]),
                en("prelie", 1, 0, 1, vec![(1, q(1))]),
            ],
        }
    }

    #[test]
    fn parametric_family() {
        let samples: Vec<Vec<Rational>> = family_samples().into_iter().map(|(a, b, c)| vec![a, b, c]).collect();
        assert!(verify_parametric_family(&family_template(1), &samples).unwrap().passed);
        let bad = verify_parametric_family(&family_template(0), &[vec![q(1), q(0), q(0)]]).unwrap();
        assert!(bad.violations.iter().any(|v| v.identity.starts_with("sample0:")));
        assert!(family_template(1).instantiate(&[q(1)]).is_err());
        let a = family_template(1).instantiate(&[qf(1, 2), q(2), q(3)]).unwrap();
        assert_eq!(a.product("prelie").get(0, 0, 1), q(3));
    }
}
