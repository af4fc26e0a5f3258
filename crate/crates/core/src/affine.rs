//! Perm algebras with forms (finite and windowed graded) and the structures
//! they induce on A⊗B.

use std::fmt;

use num_traits::Zero;

use crate::algkit::{check_algebra_axioms, AlgebraBundle, AlgebraKind, CheckReport, OutOfWindow, Partial, Product, Residual, StructureConstants};
use crate::coalgkit::{check_bialgebra_compat, check_coalgebra_axioms, BialgebraKind, CoalgebraBundle, CoalgebraKind, Coproduct, CoproductOp};
use crate::error::{Error, Result};
use crate::exactlin::{q, BasisSpace, BilinearForm, Form, Rational, Symmetry, Tensor};

/// The perm factor B of A⊗B.
pub trait PermSide {
    fn dim(&self) -> usize;
    fn label(&self, i: usize) -> String;
    fn perm_mul(&self, i: usize, j: usize) -> Partial<Tensor>;

    /// Exponent radius of a basis symbol; 0 for finite algebras.
    fn radius(&self, _i: usize) -> usize {
        0
    }

    fn window(&self) -> Option<usize> {
        None
    }
}

/// A perm side carrying an antisymmetric form, its dual basis and ν.
pub trait QuadraticSide: PermSide {
    fn omega(&self, i: usize, j: usize) -> Rational;
    /// fᵢ with ω(fᵢ, eⱼ) = δᵢⱼ.
    fn dual(&self, i: usize) -> Tensor;
    /// ν(eᵢ); clipped to the window in the graded case.
    fn nu(&self, i: usize) -> Tensor;
}

/// A finite perm algebra (kind checked on construction).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermAlgebra {
    pub bundle: AlgebraBundle,
}

impl PermAlgebra {
    pub fn new(bundle: AlgebraBundle) -> Result<Self> {
        if bundle.kind != AlgebraKind::Perm {
            return Err(Error::UnsupportedKind(format!("expected a perm algebra, got {}", bundle.kind)));
        }
        Ok(PermAlgebra { bundle })
    }

    /// x⋄y = φ(x)y for a linear functional φ; always a perm algebra.
    pub fn from_functional(space: BasisSpace, phi: &[Rational]) -> Result<Self> {
        let n = space.dim();
        if phi.len() != n {
            return Err(Error::Shape("functional length differs from dimension".into()));
        }
        let s = StructureConstants::from_fn(n, |i, j| Tensor::pure(&[j], phi[i].clone()));
        Self::new(AlgebraBundle::new(space, AlgebraKind::Perm, vec![("perm", s)])?)
    }
}

impl PermSide for PermAlgebra {
    fn dim(&self) -> usize {
        self.bundle.dim()
    }

    fn label(&self, i: usize) -> String {
        self.bundle.space.label(i).to_string()
    }

    fn perm_mul(&self, i: usize, j: usize) -> Partial<Tensor> {
        Ok(self.bundle.main().basis_product(i, j).clone())
    }
}

/// Finite quadratic perm algebra (B, ⋄, ω).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticPermAlgebra {
    pub perm: PermAlgebra,
    pub omega: BilinearForm,
    dual: Vec<Tensor>,
    nu: Vec<Tensor>,
}

impl QuadraticPermAlgebra {
    pub fn new(perm: PermAlgebra, omega: BilinearForm) -> Result<Self> {
        if omega.dim() != perm.dim() {
            return Err(Error::Shape("form and algebra dimensions differ".into()));
        }
        if omega.symmetry != Symmetry::Antisymmetric || !omega.verify_symmetry() {
            return Err(Error::Precondition("ω must be antisymmetric".into()));
        }
        let dual = omega.dual_basis()?;
        let nu = nu_from_omega(perm.bundle.main(), &omega, &dual);
        Ok(QuadraticPermAlgebra { perm, omega, dual, nu })
    }

    /// x2⋄x1 = x1, x2⋄x2 = x2, ω(x2, x1) = 1.
    pub fn two_dim() -> Self {
        let space = BasisSpace::numbered("B", "x", 2);
        let perm = PermAlgebra::from_functional(space, &[q(0), q(1)]).expect("valid");
        let mut w = BilinearForm::zero(2, Symmetry::Antisymmetric);
        w.set(1, 0, q(1));
        w.set(0, 1, q(-1));
        Self::new(perm, w).expect("nondegenerate")
    }

    /// Orthogonal direct sum of two quadratic perm algebras.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let (n, m) = (self.dim(), other.dim());
        let mut labels: Vec<String> = self.perm.bundle.space.labels().iter().map(|l| format!("{l}'")).collect();
        labels.extend(other.perm.bundle.space.labels().iter().map(|l| format!("{l}''")));
        let space = BasisSpace::new("B", labels)?;
        let (p, r) = (self.perm.bundle.main(), other.perm.bundle.main());
        let s = StructureConstants::from_fn(n + m, |i, j| match (i < n, j < n) {
            (true, true) => p.basis_product(i, j).clone(),
            (false, false) => r.basis_product(i - n, j - n).map_indices(|k| vec![k[0] + n]),
            _ => Tensor::zero(1),
        });
        let mut w = BilinearForm::zero(n + m, Symmetry::Antisymmetric);
        for (&(i, j), v) in self.omega.entries() {
            w.set(i, j, v.clone());
        }
        for (&(i, j), v) in other.omega.entries() {
            w.set(i + n, j + n, v.clone());
        }
        Self::new(PermAlgebra::new(AlgebraBundle::new(space, AlgebraKind::Perm, vec![("perm", s)])?)?, w)
    }

    pub fn dual_basis(&self) -> &[Tensor] {
        &self.dual
    }

    pub fn nu_coproduct(&self) -> Coproduct {
        Coproduct::from_fn(self.dim(), |i| self.nu[i].clone())
    }

    /// Perm axioms, invariance of ω and ω(b1⋄b2, b3) = ω(b2, b1⋄b3).
    pub fn verify(&self) -> CheckReport {
        let inputs: Vec<usize> = (0..self.dim()).collect();
        verify_quadratic(self, &inputs)
    }
}

impl PermSide for QuadraticPermAlgebra {
    fn dim(&self) -> usize {
        self.perm.dim()
    }

    fn label(&self, i: usize) -> String {
        self.perm.label(i)
    }

    fn perm_mul(&self, i: usize, j: usize) -> Partial<Tensor> {
        self.perm.perm_mul(i, j)
    }
}

impl QuadraticSide for QuadraticPermAlgebra {
    fn omega(&self, i: usize, j: usize) -> Rational {
        self.omega.eval(i, j)
    }

    fn dual(&self, i: usize) -> Tensor {
        self.dual[i].clone()
    }

    fn nu(&self, i: usize) -> Tensor {
        self.nu[i].clone()
    }
}

/// ν(b) = −Σ_{s,t} ω(b, e_s⋄e_t) f_s⊗f_t, the unique map with
/// ω̂(ν(b1), b2⊗b3) = −ω(b1, b2⋄b3).
fn nu_from_omega(perm: &StructureConstants, omega: &BilinearForm, dual: &[Tensor]) -> Vec<Tensor> {
    let n = perm.dim();
    (0..n)
        .map(|b| {
            let mut out = Tensor::zero(2);
            for s in 0..n {
                for t in 0..n {
                    let c = omega.eval_vectors(&Tensor::basis(b), perm.basis_product(s, t));
                    if !c.is_zero() {
                        out.add_scaled(&dual[s].outer(&dual[t]), &-c);
                    }
                }
            }
            out
        })
        .collect()
}

/// A basis symbol x₁^{i1} x₂^{i2} ∂ₛ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub i1: i64,
    pub i2: i64,
    pub s: u8,
}

impl Monomial {
    pub fn new(i1: i64, i2: i64, s: u8) -> Self {
        assert!(s == 1 || s == 2, "∂ index must be 1 or 2");
        Monomial { i1, i2, s }
    }

    pub fn radius(&self) -> usize {
        self.i1.unsigned_abs().max(self.i2.unsigned_abs()) as usize
    }

    pub fn degree(&self) -> i64 {
        self.i1 + self.i2 + 1
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i1, self.i2, self.s)
    }
}

/// The graded perm algebra of Laurent vector fields, truncated to exponents
/// of absolute value at most `n`.
#[derive(Debug, Clone)]
pub struct WindowedGradedAlgebra {
    n: usize,
    nu: Vec<Tensor>,
}

pub fn grperm_window(n: usize) -> Result<WindowedGradedAlgebra> {
    if n == 0 {
        return Err(Error::Precondition("window radius must be at least 1".into()));
    }
    let mut w = WindowedGradedAlgebra { n, nu: Vec::new() };
    w.nu = (0..w.dim()).map(|i| w.nu_closed_form(w.monomial(i))).collect();
    Ok(w)
}

impl WindowedGradedAlgebra {
    pub fn radius_n(&self) -> usize {
        self.n
    }

    fn side(&self) -> i64 {
        2 * self.n as i64 + 1
    }

    pub fn index(&self, m: Monomial) -> Option<usize> {
        let n = self.n as i64;
        if m.i1.abs() > n || m.i2.abs() > n {
            return None;
        }
        Some((((m.i1 + n) * self.side() + (m.i2 + n)) * 2 + (m.s as i64 - 1)) as usize)
    }

    pub fn monomial(&self, idx: usize) -> Monomial {
        let n = self.n as i64;
        let idx = idx as i64;
        let s = (idx % 2) as u8 + 1;
        let rest = idx / 2;
        Monomial { i1: rest / self.side() - n, i2: rest % self.side() - n, s }
    }

    pub fn idx(&self, i1: i64, i2: i64, s: u8) -> usize {
        self.index(Monomial::new(i1, i2, s)).expect("symbol outside the window")
    }

    pub fn degree(&self, idx: usize) -> i64 {
        self.monomial(idx).degree()
    }

    /// ω(B_i, B_j) = 0 unless i + j + m = 0, with degree i1 + i2 + 1.
    pub fn grading_shift(&self) -> i64 {
        -2
    }

    pub fn product_symbol(a: Monomial, b: Monomial) -> Monomial {
        let (d1, d2) = if a.s == 1 { (1, 0) } else { (0, 1) };
        Monomial { i1: a.i1 + b.i1 + d1, i2: a.i2 + b.i2 + d2, s: b.s }
    }

    pub fn omega_symbols(a: Monomial, b: Monomial) -> i64 {
        if a.i1 + b.i1 != 0 || a.i2 + b.i2 != 0 {
            return 0;
        }
        match (a.s, b.s) {
            (2, 1) => 1,
            (1, 2) => -1,
            _ => 0,
        }
    }

    fn nu_closed_form(&self, m: Monomial) -> Tensor {
        let n = self.n as i64;
        let mut out = Tensor::zero(2);
        for i1 in -n..=n {
            for i2 in -n..=n {
                let pairs = [
                    (Monomial::new(i1, i2, 1), Monomial::new(m.i1 - i1, m.i2 - i2 + 1, m.s), 1),
                    (Monomial::new(i1, i2, 2), Monomial::new(m.i1 - i1 + 1, m.i2 - i2, m.s), -1),
                ];
                for (a, b, c) in pairs {
                    if let (Some(x), Some(y)) = (self.index(a), self.index(b)) {
                        out.add_term(&[x, y], q(c));
                    }
                }
            }
        }
        out
    }

    pub fn nu_coproduct(&self) -> Coproduct {
        Coproduct::from_fn(self.dim(), |i| self.nu[i].clone())
    }

    /// Basis indices of radius at most `r`.
    pub fn within(&self, r: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.monomial(i).radius() <= r).collect()
    }

    /// Perm axioms, ω invariance and the derived identity on a region.
    pub fn verify(&self, region: &AdmissibleRegion) -> Result<CheckReport> {
        region.matches(self)?;
        let mut report = verify_quadratic(self, &self.within(region.radius()));
        report.window = Some(region.window);
        report.margin = Some(region.margin);
        Ok(report)
    }
}

impl PermSide for WindowedGradedAlgebra {
    fn dim(&self) -> usize {
        (self.side() * self.side() * 2) as usize
    }

    fn label(&self, i: usize) -> String {
        self.monomial(i).to_string()
    }

    fn perm_mul(&self, i: usize, j: usize) -> Partial<Tensor> {
        let p = Self::product_symbol(self.monomial(i), self.monomial(j));
        self.index(p).map(Tensor::basis).ok_or(OutOfWindow)
    }

    fn radius(&self, i: usize) -> usize {
        self.monomial(i).radius()
    }

    fn window(&self) -> Option<usize> {
        Some(self.n)
    }
}

impl QuadraticSide for WindowedGradedAlgebra {
    fn omega(&self, i: usize, j: usize) -> Rational {
        q(Self::omega_symbols(self.monomial(i), self.monomial(j)))
    }

    fn dual(&self, i: usize) -> Tensor {
        let m = self.monomial(i);
        let (s, c) = if m.s == 1 { (2, 1) } else { (1, -1) };
        Tensor::pure(&[self.idx(-m.i1, -m.i2, s)], q(c))
    }

    fn nu(&self, i: usize) -> Tensor {
        self.nu[i].clone()
    }
}

/// ω viewed through the `Form` trait.
pub struct OmegaForm<'a>(pub &'a dyn QuadraticSide);

impl Form for OmegaForm<'_> {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn eval(&self, i: usize, j: usize) -> Rational {
        self.0.omega(i, j)
    }
}

struct PermProduct<'a>(&'a dyn PermSide);

impl Product for PermProduct<'_> {
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn mul_basis(&self, i: usize, j: usize) -> Partial<Tensor> {
        self.0.perm_mul(i, j)
    }
}

fn verify_quadratic(b: &dyn QuadraticSide, inputs: &[usize]) -> CheckReport {
    let mut report = CheckReport::new();
    let p = PermProduct(b);
    check_algebra_axioms(AlgebraKind::Perm, &p, None, inputs, &mut report);
    let w = OmegaForm(b);
    for i in 0..b.dim() {
        for j in 0..b.dim() {
            let (x, y) = (b.omega(i, j), b.omega(j, i));
            if x != -y.clone() {
                report.push("omega-antisymmetry", &[i, j], Residual::Scalar(x + y));
            }
        }
    }
    for &i in inputs {
        for &j in inputs {
            for &k in inputs {
                let run = || -> Partial<(Rational, Rational)> {
                    let (ij, jk, kj, ik) = (b.perm_mul(i, j)?, b.perm_mul(j, k)?, b.perm_mul(k, j)?, b.perm_mul(i, k)?);
                    let e = Tensor::basis;
                    let inv = w.eval_vectors(&ij, &e(k)) - w.eval_vectors(&e(i), &jk.sub(&kj));
                    let der = w.eval_vectors(&ij, &e(k)) - w.eval_vectors(&e(j), &ik);
                    Ok((inv, der))
                };
                match run() {
                    Ok((inv, der)) => {
                        report.push("omega-invariance", &[i, j, k], Residual::Scalar(inv));
                        report.push("omega-derived", &[i, j, k], Residual::Scalar(der));
                    }
                    Err(OutOfWindow) => report.skipped += 1,
                }
            }
        }
    }
    report
}

/// Basis of A⊗B indexed by p = a·|B| + b.
#[derive(Clone, Copy)]
pub struct PairIndex {
    pub a_dim: usize,
    pub b_dim: usize,
}

impl PairIndex {
    pub fn new(a_dim: usize, b: &dyn PermSide) -> Self {
        PairIndex { a_dim, b_dim: b.dim() }
    }

    pub fn dim(&self) -> usize {
        self.a_dim * self.b_dim
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        a * self.b_dim + b
    }

    pub fn split(&self, p: usize) -> (usize, usize) {
        (p / self.b_dim, p % self.b_dim)
    }

    /// Interleaves an A-tensor and a B-tensor of equal rank legwise.
    pub fn bullet(&self, x: &Tensor, y: &Tensor) -> Tensor {
        let mut out = Tensor::zero(x.rank());
        for (ai, c) in x.terms() {
            for (bi, d) in y.terms() {
                let idx: Vec<usize> = ai.iter().zip(bi).map(|(a, b)| self.join(*a, *b)).collect();
                out.add_term(&idx, c * d);
            }
        }
        out
    }
}

pub fn pair_label(a: &BasisSpace, b: &dyn PermSide, p: usize) -> String {
    let ix = PairIndex::new(a.dim(), b);
    let (i, j) = ix.split(p);
    format!("{}⊗{}", a.label(i), b.label(j))
}

/// (a1⊗b1)(a2⊗b2) = (a1 a2)⊗(b1⋄b2) ± (a2 a1)⊗(b2⋄b1).
pub struct InducedProduct<'a> {
    a: &'a StructureConstants,
    b: &'a dyn PermSide,
    sign: i64,
    ix: PairIndex,
}

impl<'a> InducedProduct<'a> {
    pub fn new(a: &'a StructureConstants, b: &'a dyn PermSide, sign: i64) -> Self {
        InducedProduct { a, b, sign, ix: PairIndex::new(a.dim(), b) }
    }
}

impl Product for InducedProduct<'_> {
    fn dim(&self) -> usize {
        self.ix.dim()
    }

    fn mul_basis(&self, p: usize, q_: usize) -> Partial<Tensor> {
        let ((a1, b1), (a2, b2)) = (self.ix.split(p), self.ix.split(q_));
        let mut out = Tensor::zero(1);
        let x = self.a.basis_product(a1, a2);
        if !x.is_zero() {
            out.add_scaled(&self.ix.bullet(x, &self.b.perm_mul(b1, b2)?), &q(1));
        }
        let y = self.a.basis_product(a2, a1);
        if !y.is_zero() {
            out.add_scaled(&self.ix.bullet(y, &self.b.perm_mul(b2, b1)?), &q(self.sign));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InduceKind {
    Assoc,
    Lie,
    Poisson,
}

impl InduceKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "assoc" | "comm-assoc" => Some(InduceKind::Assoc),
            "lie" => Some(InduceKind::Lie),
            "poisson" => Some(InduceKind::Poisson),
            _ => None,
        }
    }

    pub fn output(self) -> AlgebraKind {
        match self {
            InduceKind::Assoc => AlgebraKind::CommAssoc,
            InduceKind::Lie => AlgebraKind::Lie,
            InduceKind::Poisson => AlgebraKind::Poisson,
        }
    }

    /// Natural induced kind for an input algebra kind.
    pub fn for_input(kind: AlgebraKind) -> Option<Self> {
        match kind {
            AlgebraKind::Zinbiel => Some(InduceKind::Assoc),
            AlgebraKind::PreLie => Some(InduceKind::Lie),
            AlgebraKind::PrePoisson => Some(InduceKind::Poisson),
            _ => None,
        }
    }
}

/// Products on A⊗B induced from A and a perm side; lazy, so it works over
/// windows.
pub struct InducedAlgebra<'a> {
    pub kind: AlgebraKind,
    pub a: &'a AlgebraBundle,
    pub b: &'a dyn PermSide,
    dot: Option<InducedProduct<'a>>,
    bracket: Option<InducedProduct<'a>>,
}

pub fn induced<'a>(kind: InduceKind, a: &'a AlgebraBundle, b: &'a dyn PermSide) -> Result<InducedAlgebra<'a>> {
    let zin = match a.kind {
        AlgebraKind::Zinbiel => Some(a.product("zinbiel")),
        AlgebraKind::PrePoisson => Some(a.product("zinbiel")),
        _ => None,
    };
    let pre = match a.kind {
        AlgebraKind::PreLie => Some(a.product("prelie")),
        AlgebraKind::PrePoisson => Some(a.product("prelie")),
        _ => None,
    };
    let mismatch = || Error::UnsupportedKind(format!("cannot induce {:?} from {}", kind, a.kind));
    let (dot, bracket) = match kind {
        InduceKind::Assoc => (Some(zin.ok_or_else(mismatch)?), None),
        InduceKind::Lie => (None, Some(pre.ok_or_else(mismatch)?)),
        InduceKind::Poisson => {
            if a.kind != AlgebraKind::PrePoisson {
                return Err(mismatch());
            }
            (zin, pre)
        }
    };
    Ok(InducedAlgebra {
        kind: kind.output(),
        a,
        b,
        dot: dot.map(|s| InducedProduct::new(s, b, 1)),
        bracket: bracket.map(|s| InducedProduct::new(s, b, -1)),
    })
}

impl<'a> InducedAlgebra<'a> {
    pub fn index(&self) -> PairIndex {
        PairIndex::new(self.a.dim(), self.b)
    }

    pub fn dim(&self) -> usize {
        self.index().dim()
    }

    pub fn dot(&self) -> Option<&InducedProduct<'a>> {
        self.dot.as_ref()
    }

    pub fn bracket(&self) -> Option<&InducedProduct<'a>> {
        self.bracket.as_ref()
    }

    /// Products in the order the axiom catalogs expect.
    pub fn ops(&self) -> (&dyn Product, Option<&dyn Product>) {
        match (&self.dot, &self.bracket) {
            (Some(d), Some(b)) => (d, Some(b)),
            (Some(d), None) => (d, None),
            (None, Some(b)) => (b, None),
            (None, None) => unreachable!("an induced algebra has at least one product"),
        }
    }

    pub fn space(&self) -> Result<BasisSpace> {
        let labels = (0..self.dim()).map(|p| pair_label(&self.a.space, self.b, p)).collect();
        BasisSpace::new(&format!("{}⊗B", self.a.space.name), labels)
    }

    /// Structure constants on the finite tensor product.
    pub fn materialize(&self) -> Result<AlgebraBundle> {
        if self.b.window().is_some() {
            return Err(Error::Precondition("windowed structures are not materialized".into()));
        }
        let n = self.dim();
        let build = |p: &InducedProduct| StructureConstants::from_fn(n, |i, j| p.mul_basis(i, j).expect("finite"));
        let mut prods = Vec::new();
        if let Some(d) = &self.dot {
            prods.push(("dot", build(d)));
        }
        if let Some(b) = &self.bracket {
            prods.push(("bracket", build(b)));
        }
        AlgebraBundle::new(self.space()?, self.kind, prods)
    }
}

/// induce_product over a finite perm algebra.
pub fn induce_product(kind: InduceKind, a: &AlgebraBundle, b: &dyn PermSide) -> Result<AlgebraBundle> {
    induced(kind, a, b)?.materialize()
}

/// (id⊗id ± τ)(θ(a)•ν(b)).
pub struct InducedCoproduct<'a> {
    a: &'a Coproduct,
    b: &'a dyn QuadraticSide,
    sign: i64,
    ix: PairIndex,
}

impl<'a> InducedCoproduct<'a> {
    pub fn new(a: &'a Coproduct, b: &'a dyn QuadraticSide, sign: i64) -> Self {
        InducedCoproduct { a, b, sign, ix: PairIndex { a_dim: a.dim(), b_dim: b.dim() } }
    }
}

impl CoproductOp for InducedCoproduct<'_> {
    fn dim(&self) -> usize {
        self.ix.dim()
    }

    fn co_basis(&self, p: usize) -> Tensor {
        let (a, b) = self.ix.split(p);
        let img = self.a.image(a);
        if img.is_zero() {
            return Tensor::zero(2);
        }
        let t = self.ix.bullet(img, &self.b.nu(b));
        let f = t.flip().expect("rank 2");
        t.add(&f.scale(&q(self.sign)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoKind {
    /// Δ from ϑ.
    Delta,
    /// δ from θ.
    SmallDelta,
}

impl CoKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "Delta" => Some(CoKind::Delta),
            "delta" => Some(CoKind::SmallDelta),
            _ => None,
        }
    }
}

pub struct InducedCoalgebra<'a> {
    pub kind: CoalgebraKind,
    pub a: &'a CoalgebraBundle,
    pub b: &'a dyn QuadraticSide,
    delta_big: Option<InducedCoproduct<'a>>,
    delta_small: Option<InducedCoproduct<'a>>,
}

pub fn induced_co<'a>(a: &'a CoalgebraBundle, b: &'a dyn QuadraticSide) -> Result<InducedCoalgebra<'a>> {
    let (kind, big, small) = match a.kind {
        CoalgebraKind::ZinbielCo => (CoalgebraKind::CocommCoassoc, Some(a.coproduct("vartheta")), None),
        CoalgebraKind::PreLieCo => (CoalgebraKind::LieCo, None, Some(a.coproduct("theta"))),
        CoalgebraKind::PrePoissonCo => {
            (CoalgebraKind::PoissonCo, Some(a.coproduct("vartheta")), Some(a.coproduct("theta")))
        }
        k => return Err(Error::UnsupportedKind(format!("cannot induce a coproduct from {k}"))),
    };
    Ok(InducedCoalgebra {
        kind,
        a,
        b,
        delta_big: big.map(|c| InducedCoproduct::new(c, b, 1)),
        delta_small: small.map(|c| InducedCoproduct::new(c, b, -1)),
    })
}

impl<'a> InducedCoalgebra<'a> {
    pub fn get(&self, kind: CoKind) -> Option<&InducedCoproduct<'a>> {
        match kind {
            CoKind::Delta => self.delta_big.as_ref(),
            CoKind::SmallDelta => self.delta_small.as_ref(),
        }
    }

    pub fn ops(&self) -> (&dyn CoproductOp, Option<&dyn CoproductOp>) {
        match (&self.delta_big, &self.delta_small) {
            (Some(d), Some(s)) => (d, Some(s)),
            (Some(d), None) => (d, None),
            (None, Some(s)) => (s, None),
            (None, None) => unreachable!("an induced coalgebra has at least one coproduct"),
        }
    }

    pub fn materialize(&self, space: BasisSpace) -> Result<CoalgebraBundle> {
        if self.b.window().is_some() {
            return Err(Error::Precondition("windowed structures are not materialized".into()));
        }
        let n = space.dim();
        let mut cos = Vec::new();
        if let Some(d) = &self.delta_big {
            cos.push(("Delta", Coproduct::from_fn(n, |i| d.co_basis(i))));
        }
        if let Some(d) = &self.delta_small {
            cos.push(("delta", Coproduct::from_fn(n, |i| d.co_basis(i))));
        }
        CoalgebraBundle::new(space, self.kind, cos)
    }
}

/// One induced coproduct over a finite quadratic perm algebra.
pub fn induce_coproduct(kind: CoKind, coalg: &CoalgebraBundle, b: &QuadraticPermAlgebra) -> Result<Coproduct> {
    let ind = induced_co(coalg, b)?;
    let c = ind
        .get(kind)
        .ok_or_else(|| Error::UnsupportedKind(format!("{} does not induce {:?}", coalg.kind, kind)))?;
    let n = coalg.dim() * b.dim();
    Ok(Coproduct::from_fn(n, |i| c.co_basis(i)))
}

/// 𝓑(a1⊗b1, a2⊗b2) = ϖ(a1, a2) ω(b1, b2), lazily.
pub struct InducedForm<'a> {
    varpi: &'a BilinearForm,
    b: &'a dyn QuadraticSide,
    ix: PairIndex,
}

impl<'a> InducedForm<'a> {
    pub fn new(varpi: &'a BilinearForm, b: &'a dyn QuadraticSide) -> Self {
        InducedForm { varpi, b, ix: PairIndex { a_dim: varpi.dim(), b_dim: b.dim() } }
    }
}

impl Form for InducedForm<'_> {
    fn dim(&self) -> usize {
        self.ix.dim()
    }

    fn eval(&self, p: usize, r: usize) -> Rational {
        let ((a1, b1), (a2, b2)) = (self.ix.split(p), self.ix.split(r));
        let x = self.varpi.eval(a1, a2);
        if x.is_zero() {
            return x;
        }
        x * self.b.omega(b1, b2)
    }
}

pub fn induce_form(varpi: &BilinearForm, omega: &BilinearForm) -> BilinearForm {
    varpi.kron(omega)
}

/// Window radius N with margin M; identities are evaluated on basis tuples
/// whose B-exponents lie within N − M.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdmissibleRegion {
    pub window: usize,
    pub margin: usize,
}

impl AdmissibleRegion {
    pub fn new(window: usize, margin: usize) -> Result<Self> {
        if margin > window {
            return Err(Error::EmptyRegion { window, margin });
        }
        Ok(AdmissibleRegion { window, margin })
    }

    pub fn radius(&self) -> usize {
        self.window - self.margin
    }

    /// Coproduct identities compose up to two coproducts or a coproduct and
    /// a product; an observed output of radius ρ then depends on
    /// intermediates of radius up to 2ρ + 1.
    pub fn require_coproduct_depth(&self) -> Result<()> {
        let r = self.radius();
        if 2 * r + 1 > self.window {
            return Err(Error::WindowTooSmall {
                window: self.window,
                margin: self.margin,
                reason: format!("coproduct identities need 2·{r}+1 ≤ {}", self.window),
            });
        }
        Ok(())
    }

    fn matches(&self, b: &dyn PermSide) -> Result<()> {
        match b.window() {
            Some(n) if n == self.window => Ok(()),
            Some(n) => Err(Error::Shape(format!("region is for window {}, algebra has window {n}", self.window))),
            None => Err(Error::Shape("region given for a finite perm algebra".into())),
        }
    }

    /// Pair basis indices whose B-part lies in the region.
    pub fn inputs(&self, a_dim: usize, b: &dyn PermSide) -> Vec<usize> {
        let ix = PairIndex::new(a_dim, b);
        (0..ix.dim()).filter(|&p| b.radius(ix.split(p).1) <= self.radius()).collect()
    }

    /// Keeps only terms whose legs all lie in the region.
    pub fn observe(&self, a_dim: usize, b: &dyn PermSide, t: &Tensor) -> Tensor {
        let ix = PairIndex::new(a_dim, b);
        let r = self.radius();
        t.filter(|idx| idx.iter().all(|&p| b.radius(ix.split(p).1) <= r))
    }

    /// Number of `arity`-tuples of window basis elements not all in the region.
    pub fn excluded(&self, a_dim: usize, b: &dyn PermSide, arity: u32) -> usize {
        let all = a_dim * b.dim();
        let inside = self.inputs(a_dim, b).len();
        all.pow(arity) - inside.pow(arity)
    }

    fn stamp(&self, report: &mut CheckReport) {
        report.window = Some(self.window);
        report.margin = Some(self.margin);
    }
}

/// Axioms of the induced kind on the region; tuples where a product leaves
/// the window are skipped.
pub fn windowed_algebra_check(ind: &InducedAlgebra, region: &AdmissibleRegion) -> Result<CheckReport> {
    region.matches(ind.b)?;
    let mut report = CheckReport::new();
    region.stamp(&mut report);
    let inputs = region.inputs(ind.a.dim(), ind.b);
    let (x, y) = ind.ops();
    check_algebra_axioms(ind.kind, x, y, &inputs, &mut report);
    report.skipped += region.excluded(ind.a.dim(), ind.b, 3);
    Ok(report)
}

pub fn windowed_coalgebra_check(ind: &InducedCoalgebra, region: &AdmissibleRegion) -> Result<CheckReport> {
    region.matches(ind.b)?;
    region.require_coproduct_depth()?;
    let mut report = CheckReport::new();
    region.stamp(&mut report);
    let a_dim = ind.a.dim();
    let inputs = region.inputs(a_dim, ind.b);
    let (x, y) = ind.ops();
    let b: &dyn PermSide = ind.b;
    check_coalgebra_axioms(ind.kind, x, y, &inputs, &|t| region.observe(a_dim, b, t), &mut report);
    report.skipped += region.excluded(a_dim, b, 1);
    Ok(report)
}

/// Compatibility of an induced algebra and coalgebra over the same window.
pub fn windowed_bialgebra_check(
    kind: BialgebraKind,
    alg: &InducedAlgebra,
    co: &InducedCoalgebra,
    region: &AdmissibleRegion,
) -> Result<CheckReport> {
    region.matches(alg.b)?;
    region.matches(co.b)?;
    region.require_coproduct_depth()?;
    let (ak, ck) = kind.parts();
    if alg.kind != ak || co.kind != ck {
        return Err(Error::Malformed(format!("{kind} pairs {ak} with {ck}")));
    }
    let mut report = CheckReport::new();
    region.stamp(&mut report);
    let a_dim = alg.a.dim();
    let inputs = region.inputs(a_dim, alg.b);
    let b = alg.b;
    check_bialgebra_compat(kind, alg.ops(), co.ops(), &inputs, &|t| region.observe(a_dim, b, t), &mut report);
    report.skipped += region.excluded(a_dim, b, 2);
    Ok(report)
}

/// The bialgebra kind induced on A⊗B from a bialgebra kind on A.
pub fn induced_bialgebra_kind(kind: BialgebraKind) -> Option<BialgebraKind> {
    match kind {
        BialgebraKind::ZinbielBi => Some(BialgebraKind::Infinitesimal),
        BialgebraKind::PreLieBi => Some(BialgebraKind::LieBi),
        BialgebraKind::PrePoissonBi => Some(BialgebraKind::PoissonBi),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeKind {
    Zinbiel,
    ZinbielCo,
    ZinbielBi,
    PreLie,
    PreLieCo,
    PreLieBi,
    PrePoisson,
    PrePoissonCo,
    PrePoissonBi,
    /// Quasi-Frobenius pre-Poisson form against the graded Poisson one.
    Qf,
    /// Quasi-Frobenius Zinbiel form against the Connes cocycle.
    Connes,
}

impl ProbeKind {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "zinbiel" => ProbeKind::Zinbiel,
            "zinbiel-co" => ProbeKind::ZinbielCo,
            "zinbiel-bi" => ProbeKind::ZinbielBi,
            "prelie" => ProbeKind::PreLie,
            "prelie-co" => ProbeKind::PreLieCo,
            "prelie-bi" => ProbeKind::PreLieBi,
            "prepoisson" => ProbeKind::PrePoisson,
            "prepoisson-co" => ProbeKind::PrePoissonCo,
            "prepoisson-bi" => ProbeKind::PrePoissonBi,
            "qf" => ProbeKind::Qf,
            "connes" => ProbeKind::Connes,
            _ => return None,
        })
    }
}

pub enum Candidate {
    Algebra(AlgebraBundle),
    Coalgebra(CoalgebraBundle),
    Bialgebra(crate::coalgkit::BialgebraBundle),
    Form(AlgebraBundle, BilinearForm),
}

#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub direct: CheckReport,
    pub windowed: CheckReport,
}

impl ProbeReport {
    pub fn agree(&self) -> bool {
        self.direct.passed == self.windowed.passed
    }
}

/// Default margin used by the probes and the harnesses.
pub const PROBE_MARGIN: usize = 2;

/// Runs the direct check of a candidate and the windowed check of what it
/// induces over the graded perm algebra, without assuming any axiom.
pub fn converse_probe(kind: ProbeKind, candidate: &Candidate, n: usize) -> Result<ProbeReport> {
    let w = grperm_window(n)?;
    let region = AdmissibleRegion::new(n, PROBE_MARGIN.min(n))?;
    let want_alg = |k: AlgebraKind| -> Result<&AlgebraBundle> {
        match candidate {
            Candidate::Algebra(a) if a.kind == k => Ok(a),
            _ => Err(Error::Malformed(format!("probe needs a {k} algebra"))),
        }
    };
    let want_co = |k: CoalgebraKind| -> Result<&CoalgebraBundle> {
        match candidate {
            Candidate::Coalgebra(c) if c.kind == k => Ok(c),
            _ => Err(Error::Malformed(format!("probe needs a {k} coalgebra"))),
        }
    };
    let want_bi = |k: BialgebraKind| -> Result<&crate::coalgkit::BialgebraBundle> {
        match candidate {
            Candidate::Bialgebra(b) if b.kind == k => Ok(b),
            _ => Err(Error::Malformed(format!("probe needs a {k} bialgebra"))),
        }
    };
    let alg_probe = |k: AlgebraKind| -> Result<ProbeReport> {
        let a = want_alg(k)?;
        let ind = induced(InduceKind::for_input(k).expect("inducible"), a, &w)?;
        Ok(ProbeReport { direct: crate::algkit::verify_structure(a), windowed: windowed_algebra_check(&ind, &region)? })
    };
    let co_probe = |k: CoalgebraKind| -> Result<ProbeReport> {
        let c = want_co(k)?;
        let ind = induced_co(c, &w)?;
        Ok(ProbeReport { direct: crate::coalgkit::verify_costructure(c), windowed: windowed_coalgebra_check(&ind, &region)? })
    };
    let bi_probe = |k: BialgebraKind| -> Result<ProbeReport> {
        let bi = want_bi(k)?;
        let (ak, _) = k.parts();
        let alg = induced(InduceKind::for_input(ak).expect("inducible"), &bi.algebra, &w)?;
        let co = induced_co(&bi.coalgebra, &w)?;
        let out = induced_bialgebra_kind(k).expect("inducible");
        let mut windowed = windowed_algebra_check(&alg, &region)?;
        windowed.merge(windowed_coalgebra_check(&co, &region)?);
        windowed.merge(windowed_bialgebra_check(out, &alg, &co, &region)?);
        Ok(ProbeReport { direct: crate::coalgkit::verify_bialgebra(bi), windowed })
    };
    match kind {
        ProbeKind::Zinbiel => alg_probe(AlgebraKind::Zinbiel),
        ProbeKind::PreLie => alg_probe(AlgebraKind::PreLie),
        ProbeKind::PrePoisson => alg_probe(AlgebraKind::PrePoisson),
        ProbeKind::ZinbielCo => co_probe(CoalgebraKind::ZinbielCo),
        ProbeKind::PreLieCo => co_probe(CoalgebraKind::PreLieCo),
        ProbeKind::PrePoissonCo => co_probe(CoalgebraKind::PrePoissonCo),
        ProbeKind::ZinbielBi => bi_probe(BialgebraKind::ZinbielBi),
        ProbeKind::PreLieBi => bi_probe(BialgebraKind::PreLieBi),
        ProbeKind::PrePoissonBi => bi_probe(BialgebraKind::PrePoissonBi),
        ProbeKind::Qf | ProbeKind::Connes => {
            let Candidate::Form(a, varpi) = candidate else {
                return Err(Error::Malformed("probe needs an algebra with a form".into()));
            };
            let (qk, ik) = match kind {
                ProbeKind::Qf => (crate::ybe::QfKind::PrePoisson, InduceKind::Poisson),
                _ => (crate::ybe::QfKind::Zinbiel, InduceKind::Assoc),
            };
            let direct = crate::ybe::qf_check(&crate::ybe::QuasiFrobenius::new(a.clone(), varpi.clone(), qk)?)?;
            let ind = induced(ik, a, &w)?;
            let windowed = crate::ybe::windowed_qf_check(&ind, varpi, &w, &region)?;
            Ok(ProbeReport { direct, windowed })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::pairing_multi;
    use crate::fixtures::*;

    #[test]
    fn window_layout() {
        let w = grperm_window(3).unwrap();
        assert_eq!(w.dim(), 98);
        assert_eq!(w.idx(-3, -3, 1), 0);
        assert_eq!(w.idx(0, 0, 2), 49);
        for i in 0..w.dim() {
            assert_eq!(w.index(w.monomial(i)), Some(i));
        }
        assert_eq!(w.index(Monomial::new(4, 0, 1)), None);
        assert_eq!(w.grading_shift(), -2);
        assert!(grperm_window(0).is_err());
    }

    #[test]
    fn graded_product() {
        let w = grperm_window(2).unwrap();
        // x1 ∂1 ⋄ x2 ∂2 = x1² x2 ∂2
        let p = w.perm_mul(w.idx(1, 0, 1), w.idx(0, 1, 2)).unwrap();
        assert_eq!(p, Tensor::basis(w.idx(2, 1, 2)));
        assert!(w.perm_mul(w.idx(2, 0, 1), w.idx(0, 0, 1)).is_err());
        assert!(w.verify(&AdmissibleRegion::new(2, 1).unwrap()).unwrap().passed);
    }

    #[test]
    fn nu_pairs_against_the_product() {
        // ω̂(ν(b1), b2⊗b3) = −ω(b1, b2⋄b3) for every in-window triple.
        let w = grperm_window(2).unwrap();
        let om = OmegaForm(&w);
        for b1 in 0..w.dim() {
            let nu = w.nu(b1);
            for b2 in 0..w.dim() {
                for b3 in 0..w.dim() {
                    let prod = WindowedGradedAlgebra::product_symbol(w.monomial(b2), w.monomial(b3));
                    let rhs = -WindowedGradedAlgebra::omega_symbols(w.monomial(b1), prod);
                    let lhs = pairing_multi(&nu, &Tensor::pure(&[b2, b3], q(1)), &om).unwrap();
                    assert_eq!(lhs, q(rhs), "{} {} {}", w.monomial(b1), w.monomial(b2), w.monomial(b3));
                }
            }
        }
    }

    #[test]
    fn finite_quadratic_perm() {
        let b = QuadraticPermAlgebra::two_dim();
        assert!(b.verify().passed);
        assert_eq!(b.nu(0), Tensor::pure(&[0, 0], q(1)));
        assert_eq!(b.nu(1), Tensor::pure(&[0, 1], q(1)));
        let bb = b.direct_sum(&b).unwrap();
        assert!(bb.verify().passed);
        assert_eq!(bb.dim(), 4);
        let mut degenerate = BilinearForm::zero(2, Symmetry::Antisymmetric);
        degenerate.set(0, 0, q(0));
        assert!(QuadraticPermAlgebra::new(b.perm.clone(), degenerate).is_err());
    }

    #[test]
    fn regions() {
        assert!(matches!(AdmissibleRegion::new(1, 2), Err(Error::EmptyRegion { .. })));
        let r = AdmissibleRegion::new(3, 2).unwrap();
        assert_eq!(r.radius(), 1);
        assert!(r.require_coproduct_depth().is_ok());
        assert!(AdmissibleRegion::new(3, 1).unwrap().require_coproduct_depth().is_err());
        let w = grperm_window(3).unwrap();
        // 2 × 3 × 3 × 2 pairs of radius ≤ 1 out of 196.
        assert_eq!(r.inputs(2, &w).len(), 36);
        assert_eq!(r.excluded(2, &w, 1), 196 - 36);
        let finite = QuadraticPermAlgebra::two_dim();
        let a = zinbiel_2d();
        let ind = induced(InduceKind::Assoc, &a, &finite).unwrap();
        assert!(windowed_algebra_check(&ind, &r).is_err());
    }

    #[test]
    fn induced_products_are_commutative_or_skew() {
        let b = QuadraticPermAlgebra::two_dim();
        let z = induce_product(InduceKind::Assoc, &zinbiel_3d(), &b).unwrap();
        assert!(crate::algkit::verify_structure(&z).passed);
        let l = induce_product(InduceKind::Lie, &prelie_2d(), &b).unwrap();
        assert!(crate::algkit::verify_structure(&l).passed);
        assert!(induced(InduceKind::Lie, &zinbiel_2d(), &b).is_err());
    }

    #[test]
    fn induced_form_matches_kron() {
        let b = QuadraticPermAlgebra::two_dim();
        let varpi = form_12();
        let lazy = InducedForm::new(&varpi, &b);
        let dense = induce_form(&varpi, &b.omega);
        assert_eq!(dense.symmetry, Symmetry::Antisymmetric);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(lazy.eval(i, j), dense.eval(i, j));
            }
        }
    }

    #[test]
    fn windowed_zinbiel_check_skips() {
        let w = grperm_window(3).unwrap();
        let a = zinbiel_2d();
        let ind = induced(InduceKind::Assoc, &a, &w).unwrap();
        let rep = windowed_algebra_check(&ind, &AdmissibleRegion::new(3, 2).unwrap()).unwrap();
        assert!(rep.passed);
        assert!(rep.skipped > 0);
        assert_eq!((rep.window, rep.margin), (Some(3), Some(2)));
    }

    #[test]
    fn windowed_coalgebra_and_bialgebra() {
        let w = grperm_window(3).unwrap();
        let region = AdmissibleRegion::new(3, 2).unwrap();
        let bi = crate::ybe::triangular_bialgebra(crate::ybe::TriKind::Zinbiel, &zinbiel_2d(), &r_12()).unwrap();
        let co = induced_co(&bi.coalgebra, &w).unwrap();
        assert!(windowed_coalgebra_check(&co, &region).unwrap().passed);
        let alg = induced(InduceKind::Assoc, &bi.algebra, &w).unwrap();
        let rep = windowed_bialgebra_check(BialgebraKind::Infinitesimal, &alg, &co, &region).unwrap();
        assert!(rep.passed, "{:?}", rep.violations.first());
        assert!(windowed_bialgebra_check(BialgebraKind::LieBi, &alg, &co, &region).is_err());
    }
}
