//! Yang-Baxter type equations, coboundary coproducts, lifts of solutions to
//! A⊗B, O-operators and quasi-Frobenius forms.

use std::cell::Cell;
use std::fmt;


use crate::affine::{
    induced, induced_co, pair_label, AdmissibleRegion, InduceKind, InducedAlgebra, InducedForm, PairIndex, QuadraticPermAlgebra,
    QuadraticSide, PROBE_MARGIN,
};
use crate::algkit::{build_coregular_rep, AlgebraBundle, AlgebraKind, CheckReport, OutOfWindow, Partial, Product, Representation, Residual};
use crate::coalgkit::{BialgebraBundle, BialgebraKind, CoalgebraBundle, CoalgebraKind, Coproduct, CoproductOp};
use crate::error::{Error, Result};
use crate::exactlin::{q, sharp, BilinearForm, Form, LinearMap, Rational, Symmetry, Tensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum YbeKind {
    Zybe,
    Plybe,
    Aybe,
    Cybe,
    Pybe,
    Ppybe,
}

impl YbeKind {
    pub const ALL: [YbeKind; 6] = [YbeKind::Zybe, YbeKind::Plybe, YbeKind::Aybe, YbeKind::Cybe, YbeKind::Pybe, YbeKind::Ppybe];

    pub fn name(self) -> &'static str {
        match self {
            YbeKind::Zybe => "ZYBE",
            YbeKind::Plybe => "PLYBE",
            YbeKind::Aybe => "AYBE",
            YbeKind::Cybe => "CYBE",
            YbeKind::Pybe => "PYBE",
            YbeKind::Ppybe => "PPYBE",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(s))
    }

    /// The single equations making up this one.
    pub fn parts(self) -> &'static [YbeKind] {
        match self {
            YbeKind::Pybe => &[YbeKind::Aybe, YbeKind::Cybe],
            YbeKind::Ppybe => &[YbeKind::Zybe, YbeKind::Plybe],
            YbeKind::Zybe => &[YbeKind::Zybe],
            YbeKind::Plybe => &[YbeKind::Plybe],
            YbeKind::Aybe => &[YbeKind::Aybe],
            YbeKind::Cybe => &[YbeKind::Cybe],
        }
    }

    fn product_name(self) -> &'static str {
        match self {
            YbeKind::Zybe => "zinbiel",
            YbeKind::Plybe => "prelie",
            YbeKind::Aybe => "dot",
            YbeKind::Cybe => "bracket",
            _ => unreachable!("composite kind"),
        }
    }

    fn table(self) -> &'static [Placed] {
        match self {
            YbeKind::Zybe => ZYBE_TABLE,
            YbeKind::Plybe => PLYBE_TABLE,
            YbeKind::Aybe => AYBE_TABLE,
            YbeKind::Cybe => CYBE_TABLE,
            _ => unreachable!("composite kind"),
        }
    }

    /// Symmetric r for the Zinbiel side, skew-symmetric for the associative side.
    pub fn wants_symmetric(self) -> bool {
        matches!(self, YbeKind::Zybe | YbeKind::Plybe | YbeKind::Ppybe)
    }
}

impl fmt::Display for YbeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Legs of the two summands xᵢ⊗yᵢ and xⱼ⊗yⱼ of r.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sym {
    Xi,
    Yi,
    Xj,
    Yj,
}

/// One placement: `sign` times the product of `op` put at position `pos`,
/// the two remaining legs filled in order by `rest`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Placed {
    pub sign: i64,
    pub pos: usize,
    pub op: (Sym, Sym),
    pub rest: (Sym, Sym),
}

const fn p(sign: i64, pos: usize, op: (Sym, Sym), rest: (Sym, Sym)) -> Placed {
    Placed { sign, pos, op, rest }
}

use Sym::{Xi, Xj, Yi, Yj};

pub const ZYBE_TABLE: &[Placed] = &[
    p(1, 0, (Xi, Xj), (Yj, Yi)),
    p(1, 1, (Xi, Xj), (Yj, Yi)),
    p(1, 2, (Yi, Yj), (Xi, Xj)),
    p(1, 2, (Yi, Yj), (Xj, Xi)),
    p(-1, 1, (Yi, Xj), (Xi, Yj)),
    p(-1, 1, (Xi, Yj), (Xj, Yi)),
    p(-1, 0, (Xi, Yj), (Xj, Yi)),
    p(-1, 0, (Yi, Xj), (Xi, Yj)),
];

pub const PLYBE_TABLE: &[Placed] = &[
    p(1, 0, (Xi, Xj), (Yj, Yi)),
    p(1, 1, (Xi, Yj), (Xj, Yi)),
    p(1, 0, (Yi, Xj), (Xi, Yj)),
    p(1, 2, (Yi, Yj), (Xj, Xi)),
    p(-1, 1, (Xi, Xj), (Yj, Yi)),
    p(-1, 1, (Yi, Xj), (Xi, Yj)),
    p(-1, 0, (Xi, Yj), (Xj, Yi)),
    p(-1, 2, (Yi, Yj), (Xi, Xj)),
];

/// r13r12 − r12r23 + r23r13.
pub const AYBE_TABLE: &[Placed] = &[
    p(1, 0, (Xj, Xi), (Yi, Yj)),
    p(-1, 1, (Yi, Xj), (Xi, Yj)),
    p(1, 2, (Yi, Yj), (Xj, Xi)),
];

/// r12r13 + r12r23 − r23r13, which is not the equation for the coboundary
/// coproduct; kept for comparison.
pub const AYBE_ALT_TABLE: &[Placed] = &[
    p(1, 0, (Xi, Xj), (Yi, Yj)),
    p(1, 1, (Yi, Xj), (Xi, Yj)),
    p(-1, 2, (Yi, Yj), (Xj, Xi)),
];

/// [r12,r13] + [r13,r23] + [r12,r23] with [r13,r23] = Σ xᵢ⊗xⱼ⊗[yᵢ,yⱼ].
pub const CYBE_TABLE: &[Placed] = &[
    p(1, 0, (Xi, Xj), (Yi, Yj)),
    p(1, 1, (Yi, Xj), (Xi, Yj)),
    p(1, 2, (Yi, Yj), (Xi, Xj)),
];

/// The same with the middle term read as Σ xⱼ⊗xᵢ⊗[yᵢ,yⱼ].
pub const CYBE_LITERAL_TABLE: &[Placed] = &[
    p(1, 0, (Xi, Xj), (Yi, Yj)),
    p(1, 1, (Yi, Xj), (Xi, Yj)),
    p(1, 2, (Yi, Yj), (Xj, Xi)),
];

/// ZYBE for symmetric r.
pub const ZYBE_SYMMETRIC_TABLE: &[Placed] = &[
    p(-1, 0, (Xi, Xj), (Yi, Yj)),
    p(-1, 1, (Yi, Xj), (Xi, Yj)),
    p(1, 2, (Yi, Yj), (Xi, Xj)),
    p(1, 2, (Yj, Yi), (Xi, Xj)),
];

/// PLYBE for symmetric r (the S-equation).
pub const S_EQUATION_TABLE: &[Placed] = &[
    p(1, 0, (Xi, Xj), (Yi, Yj)),
    p(-1, 1, (Yi, Xj), (Xi, Yj)),
    p(-1, 2, (Yi, Yj), (Xi, Xj)),
    p(1, 2, (Yi, Yj), (Xj, Xi)),
];

/// Evaluates a placement table on r. Product terms leaving a window are
/// dropped and counted.
pub fn eval_placements(table: &[Placed], m: &dyn Product, r: &Tensor, dropped: &Cell<usize>) -> Tensor {
    let terms: Vec<(usize, usize, Rational)> = r.terms().map(|(i, c)| (i[0], i[1], c.clone())).collect();
    let mut out = Tensor::zero(3);
    for (xi, yi, ci) in &terms {
        for (xj, yj, cj) in &terms {
            let pick = |s: Sym| match s {
                Xi => *xi,
                Yi => *yi,
                Xj => *xj,
                Yj => *yj,
            };
            let c = ci * cj;
            for t in table {
                let prod = match m.mul_basis(pick(t.op.0), pick(t.op.1)) {
                    Ok(x) => x,
                    Err(OutOfWindow) => {
                        dropped.set(dropped.get() + 1);
                        continue;
                    }
                };
                let (a, b) = (pick(t.rest.0), pick(t.rest.1));
                for (k, d) in prod.terms() {
                    let idx = match t.pos {
                        0 => [k[0], a, b],
                        1 => [a, k[0], b],
                        _ => [a, b, k[0]],
                    };
                    out.add_term(&idx, &c * d * q(t.sign));
                }
            }
        }
    }
    out
}

fn product_for<'a>(algebra: &'a AlgebraBundle, kind: YbeKind) -> Result<&'a dyn Product> {
    let name = kind.product_name();
    if !algebra.kind.product_names().contains(&name) {
        return Err(Error::UnsupportedKind(format!("{kind} needs a {name} product, {} has none", algebra.kind)));
    }
    Ok(algebra.product(name))
}

fn check_rank2(r: &Tensor, dim: usize) -> Result<()> {
    if r.rank() != 2 {
        return Err(Error::RankMismatch { expected: 2, got: r.rank() });
    }
    if r.max_index().is_some_and(|m| m >= dim) {
        return Err(Error::Shape("element index exceeds the algebra dimension".into()));
    }
    Ok(())
}

/// Residual tensors, one per single equation (two for PYBE and PPYBE).
pub fn residual(kind: YbeKind, algebra: &AlgebraBundle, r: &Tensor) -> Result<Vec<(YbeKind, Tensor)>> {
    check_rank2(r, algebra.dim())?;
    let dropped = Cell::new(0);
    kind.parts()
        .iter()
        .map(|&k| Ok((k, eval_placements(k.table(), product_for(algebra, k)?, r, &dropped))))
        .collect()
}

pub fn residual_is_zero(parts: &[(YbeKind, Tensor)]) -> bool {
    parts.iter().all(|(_, t)| t.is_zero())
}

pub fn is_symmetric(r: &Tensor) -> bool {
    r.flip().map(|f| &f == r).unwrap_or(false)
}

pub fn is_skew(r: &Tensor) -> bool {
    r.flip().map(|f| f == r.neg()).unwrap_or(false)
}

/// The shortened forms valid for symmetric r.
pub fn symmetric_simplified_residual(kind: YbeKind, algebra: &AlgebraBundle, r: &Tensor) -> Result<Tensor> {
    check_rank2(r, algebra.dim())?;
    if !is_symmetric(r) {
        return Err(Error::Precondition("r is not symmetric".into()));
    }
    let table = match kind {
        YbeKind::Zybe => ZYBE_SYMMETRIC_TABLE,
        YbeKind::Plybe => S_EQUATION_TABLE,
        k => return Err(Error::UnsupportedKind(format!("no simplified form for {k}"))),
    };
    Ok(eval_placements(table, product_for(algebra, kind)?, r, &Cell::new(0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoboundaryKind {
    Zinbiel,
    PreLie,
    Assoc,
    Lie,
}

impl CoboundaryKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "zinbiel" => Some(CoboundaryKind::Zinbiel),
            "prelie" => Some(CoboundaryKind::PreLie),
            "assoc" | "comm-assoc" => Some(CoboundaryKind::Assoc),
            "lie" => Some(CoboundaryKind::Lie),
            _ => None,
        }
    }

    fn product_name(self) -> &'static str {
        match self {
            CoboundaryKind::Zinbiel => "zinbiel",
            CoboundaryKind::PreLie => "prelie",
            CoboundaryKind::Assoc => "dot",
            CoboundaryKind::Lie => "bracket",
        }
    }
}

/// The coproduct a ↦ (…)(r) of the given kind, lazily, over any product.
pub struct Coboundary<'a> {
    kind: CoboundaryKind,
    m: &'a dyn Product,
    terms: Vec<(usize, usize, Rational)>,
    pub dropped: Cell<usize>,
}

impl<'a> Coboundary<'a> {
    pub fn new(kind: CoboundaryKind, m: &'a dyn Product, r: &Tensor) -> Self {
        let terms = r.terms().map(|(i, c)| (i[0], i[1], c.clone())).collect();
        Coboundary { kind, m, terms, dropped: Cell::new(0) }
    }

    fn leg(&self, out: &mut Tensor, prod: Partial<Tensor>, other: usize, at: usize, c: Rational) {
        match prod {
            Ok(t) => {
                for (k, d) in t.terms() {
                    let idx = if at == 0 { [k[0], other] } else { [other, k[0]] };
                    out.add_term(&idx, &c * d);
                }
            }
            Err(OutOfWindow) => self.dropped.set(self.dropped.get() + 1),
        }
    }
}

impl CoproductOp for Coboundary<'_> {
    fn dim(&self) -> usize {
        self.m.dim()
    }

    fn co_basis(&self, a: usize) -> Tensor {
        let m = self.m;
        let mut out = Tensor::zero(2);
        for (x, y, c) in &self.terms {
            let (x, y) = (*x, *y);
            let neg = -c.clone();
            match self.kind {
                CoboundaryKind::Zinbiel => {
                    self.leg(&mut out, m.mul_basis(a, y), x, 1, c.clone());
                    self.leg(&mut out, m.mul_basis(y, a), x, 1, c.clone());
                    self.leg(&mut out, m.mul_basis(a, x), y, 0, neg);
                }
                CoboundaryKind::PreLie => {
                    self.leg(&mut out, m.mul_basis(a, x), y, 0, c.clone());
                    self.leg(&mut out, m.mul_basis(a, y), x, 1, c.clone());
                    self.leg(&mut out, m.mul_basis(y, a), x, 1, neg);
                }
                CoboundaryKind::Assoc => {
                    self.leg(&mut out, m.mul_basis(a, y), x, 1, c.clone());
                    self.leg(&mut out, m.mul_basis(a, x), y, 0, neg);
                }
                CoboundaryKind::Lie => {
                    self.leg(&mut out, m.mul_basis(a, y), x, 1, c.clone());
                    self.leg(&mut out, m.mul_basis(a, x), y, 0, c.clone());
                }
            }
        }
        out
    }
}

pub fn coboundary_coproduct(kind: CoboundaryKind, algebra: &AlgebraBundle, r: &Tensor) -> Result<Coproduct> {
    check_rank2(r, algebra.dim())?;
    let name = kind.product_name();
    if !algebra.kind.product_names().contains(&name) {
        return Err(Error::UnsupportedKind(format!("{} has no {name} product", algebra.kind)));
    }
    let cb = Coboundary::new(kind, algebra.product(name), r);
    Ok(Coproduct::from_fn(algebra.dim(), |i| cb.co_basis(i)))
}

/// Triangular bialgebra kinds, named after the algebra they start from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriKind {
    Zinbiel,
    PreLie,
    PrePoisson,
    Infinitesimal,
    Lie,
    Poisson,
}

impl TriKind {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "zinbiel" => TriKind::Zinbiel,
            "prelie" => TriKind::PreLie,
            "prepoisson" => TriKind::PrePoisson,
            "infinitesimal" | "comm-assoc" | "assoc" => TriKind::Infinitesimal,
            "lie" => TriKind::Lie,
            "poisson" => TriKind::Poisson,
            _ => return None,
        })
    }

    fn layout(self) -> (AlgebraKind, YbeKind, BialgebraKind, CoalgebraKind, &'static [(CoboundaryKind, &'static str)]) {
        use CoboundaryKind as C;
        match self {
            TriKind::Zinbiel => (AlgebraKind::Zinbiel, YbeKind::Zybe, BialgebraKind::ZinbielBi, CoalgebraKind::ZinbielCo, &[(C::Zinbiel, "vartheta")]),
            TriKind::PreLie => (AlgebraKind::PreLie, YbeKind::Plybe, BialgebraKind::PreLieBi, CoalgebraKind::PreLieCo, &[(C::PreLie, "theta")]),
            TriKind::PrePoisson => (
                AlgebraKind::PrePoisson,
                YbeKind::Ppybe,
                BialgebraKind::PrePoissonBi,
                CoalgebraKind::PrePoissonCo,
                &[(C::Zinbiel, "vartheta"), (C::PreLie, "theta")],
            ),
            TriKind::Infinitesimal => (AlgebraKind::CommAssoc, YbeKind::Aybe, BialgebraKind::Infinitesimal, CoalgebraKind::CocommCoassoc, &[(C::Assoc, "Delta")]),
            TriKind::Lie => (AlgebraKind::Lie, YbeKind::Cybe, BialgebraKind::LieBi, CoalgebraKind::LieCo, &[(C::Lie, "delta")]),
            TriKind::Poisson => (
                AlgebraKind::Poisson,
                YbeKind::Pybe,
                BialgebraKind::PoissonBi,
                CoalgebraKind::PoissonCo,
                &[(C::Assoc, "Delta"), (C::Lie, "delta")],
            ),
        }
    }
}

/// Coboundary bialgebra of a solution with the matching symmetry.
pub fn triangular_bialgebra(kind: TriKind, algebra: &AlgebraBundle, r: &Tensor) -> Result<BialgebraBundle> {
    let (ak, yk, bk, ck, cobs) = kind.layout();
    if algebra.kind != ak {
        return Err(Error::UnsupportedKind(format!("expected a {ak} algebra, got {}", algebra.kind)));
    }
    check_rank2(r, algebra.dim())?;
    if yk.wants_symmetric() && !is_symmetric(r) {
        return Err(Error::Precondition("symmetry: r must be symmetric".into()));
    }
    if !yk.wants_symmetric() && !is_skew(r) {
        return Err(Error::Precondition("symmetry: r must be skew-symmetric".into()));
    }
    if !residual_is_zero(&residual(yk, algebra, r)?) {
        return Err(Error::Precondition(format!("residual: r does not solve the {yk}")));
    }
    let mut cos = Vec::new();
    for (c, name) in cobs {
        cos.push((*name, coboundary_coproduct(*c, algebra, r)?));
    }
    let coalg = CoalgebraBundle::new(algebra.space.clone(), ck, cos)?;
    BialgebraBundle::new(algebra.clone(), coalg, bk)
}

/// r̂ = Σ (x⊗eⱼ)⊗(y⊗fⱼ) over the basis {eⱼ} of B.
pub fn lift_solution(r: &Tensor, a_dim: usize, b: &dyn QuadraticSide) -> Result<Tensor> {
    check_rank2(r, a_dim)?;
    let ix = PairIndex { a_dim, b_dim: b.dim() };
    let mut out = Tensor::zero(2);
    let duals: Vec<Tensor> = (0..b.dim()).map(|j| b.dual(j)).collect();
    for (xy, c) in r.terms() {
        for (j, f) in duals.iter().enumerate() {
            for (k, d) in f.terms() {
                out.add_term(&[ix.join(xy[0], j), ix.join(xy[1], k[0])], c * d);
            }
        }
    }
    Ok(out)
}

/// κ = Σ eⱼ⊗fⱼ.
pub fn kappa(b: &dyn QuadraticSide) -> Tensor {
    let mut out = Tensor::zero(2);
    for j in 0..b.dim() {
        for (k, d) in b.dual(j).terms() {
            out.add_term(&[j, k[0]], d.clone());
        }
    }
    out
}

/// r̂ restricted to summands with a leg in the region; enough to evaluate
/// any placement or coboundary at outputs inside the region.
fn clip_to_region(r: &Tensor, a_dim: usize, b: &dyn QuadraticSide, region: &AdmissibleRegion) -> Tensor {
    let ix = PairIndex { a_dim, b_dim: b.dim() };
    let rad = region.radius();
    r.filter(|idx| idx.iter().any(|&p| b.radius(ix.split(p).1) <= rad))
}

/// Residuals of an element of (A⊗B)⊗(A⊗B) over a window, observed on the
/// region. The count is the number of dropped product terms.
pub fn windowed_residual(
    kind: YbeKind,
    ind: &InducedAlgebra,
    r: &Tensor,
    region: &AdmissibleRegion,
    b: &dyn QuadraticSide,
) -> Result<(Vec<(YbeKind, Tensor)>, usize)> {
    let a_dim = ind.a.dim();
    let clipped = clip_to_region(r, a_dim, b, region);
    let dropped = Cell::new(0);
    let mut out = Vec::new();
    for &k in kind.parts() {
        let m: &dyn Product = match k {
            YbeKind::Aybe => ind.dot().ok_or_else(|| Error::UnsupportedKind("no induced dot".into()))?,
            YbeKind::Cybe => ind.bracket().ok_or_else(|| Error::UnsupportedKind("no induced bracket".into()))?,
            k => return Err(Error::UnsupportedKind(format!("{k} is not an equation on A⊗B"))),
        };
        let t = eval_placements(k.table(), m, &clipped, &dropped);
        out.push((k, region.observe(a_dim, b, &t)));
    }
    Ok((out, dropped.get()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoinKind {
    Assoc,
    Lie,
    Poisson,
}

impl CoinKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "assoc" | "comm-assoc" => Some(CoinKind::Assoc),
            "lie" => Some(CoinKind::Lie),
            "poisson" => Some(CoinKind::Poisson),
            _ => None,
        }
    }
}

/// Compares the coproducts induced from the triangular structure of r on A
/// with the coboundary coproducts of r̂ on A⊗B. With a region, inputs and
/// outputs are restricted to it.
pub fn triangular_coincidence(
    kind: CoinKind,
    a: &AlgebraBundle,
    b: &dyn QuadraticSide,
    r: &Tensor,
    region: Option<&AdmissibleRegion>,
) -> Result<CheckReport> {
    let (tri, ik) = match kind {
        CoinKind::Assoc => (TriKind::Zinbiel, InduceKind::Assoc),
        CoinKind::Lie => (TriKind::PreLie, InduceKind::Lie),
        CoinKind::Poisson => (TriKind::PrePoisson, InduceKind::Poisson),
    };
    let bi = triangular_bialgebra(tri, a, r)?;
    let alg = induced(ik, a, b)?;
    let co = induced_co(&bi.coalgebra, b)?;
    let mut rhat = lift_solution(r, a.dim(), b)?;
    let a_dim = a.dim();
    let mut report = CheckReport::new();
    let inputs: Vec<usize> = match region {
        Some(reg) => {
            if b.window() != Some(reg.window) {
                return Err(Error::Shape("region does not match the perm side".into()));
            }
            report.window = Some(reg.window);
            report.margin = Some(reg.margin);
            rhat = clip_to_region(&rhat, a_dim, b, reg);
            reg.inputs(a_dim, b)
        }
        None => {
            if b.window().is_some() {
                return Err(Error::Precondition("a windowed perm side needs a region".into()));
            }
            (0..alg.dim()).collect()
        }
    };
    let observe = |t: &Tensor| match region {
        Some(reg) => reg.observe(a_dim, b, t),
        None => t.clone(),
    };
    let mut pairs: Vec<(&str, &dyn CoproductOp, Coboundary)> = Vec::new();
    if let (Some(ind), Some(dot)) = (co.get(crate::affine::CoKind::Delta), alg.dot()) {
        pairs.push(("coincide-Delta", ind, Coboundary::new(CoboundaryKind::Assoc, dot, &rhat)));
    }
    if let (Some(ind), Some(br)) = (co.get(crate::affine::CoKind::SmallDelta), alg.bracket()) {
        pairs.push(("coincide-delta", ind, Coboundary::new(CoboundaryKind::Lie, br, &rhat)));
    }
    for (id, ind, cob) in &pairs {
        for &p in &inputs {
            let d = observe(&ind.co_basis(p)).sub(&observe(&cob.co_basis(p)));
            report.push_tensor(id, &[p], d);
        }
        report.skipped += cob.dropped.get();
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OKind {
    Assoc,
    Lie,
    Zinbiel,
    PreLie,
    Poisson,
    PrePoisson,
}

impl OKind {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "assoc" | "comm-assoc" => OKind::Assoc,
            "lie" => OKind::Lie,
            "zinbiel" => OKind::Zinbiel,
            "prelie" => OKind::PreLie,
            "poisson" => OKind::Poisson,
            "prepoisson" => OKind::PrePoisson,
            _ => return None,
        })
    }

    pub fn algebra_kind(self) -> AlgebraKind {
        match self {
            OKind::Assoc => AlgebraKind::CommAssoc,
            OKind::Lie => AlgebraKind::Lie,
            OKind::Zinbiel => AlgebraKind::Zinbiel,
            OKind::PreLie => AlgebraKind::PreLie,
            OKind::Poisson => AlgebraKind::Poisson,
            OKind::PrePoisson => AlgebraKind::PrePoisson,
        }
    }

    pub fn ybe(self) -> YbeKind {
        match self {
            OKind::Assoc => YbeKind::Aybe,
            OKind::Lie => YbeKind::Cybe,
            OKind::Zinbiel => YbeKind::Zybe,
            OKind::PreLie => YbeKind::Plybe,
            OKind::Poisson => YbeKind::Pybe,
            OKind::PrePoisson => YbeKind::Ppybe,
        }
    }
}

pub struct OOperatorProblem {
    pub rep: Representation,
    pub t: LinearMap,
}

impl OOperatorProblem {
    pub fn new(rep: Representation, t: LinearMap) -> Result<Self> {
        if t.rows() != rep.algebra.dim() || t.cols() != rep.space.dim() {
            return Err(Error::Shape(format!(
                "T must be {}×{}, got {}×{}",
                rep.algebra.dim(),
                rep.space.dim(),
                t.rows(),
                t.cols()
            )));
        }
        Ok(OOperatorProblem { rep, t })
    }
}

/// T(v1)·T(v2) = T(α(T v1) v2 ± β(T v2) v1) per kind, on basis pairs of V.
pub fn o_operator_check(kind: OKind, problem: &OOperatorProblem) -> Result<CheckReport> {
    let alg = &problem.rep.algebra;
    if alg.kind != kind.algebra_kind() {
        return Err(Error::UnsupportedKind(format!("O-operator of kind {:?} on a {} algebra", kind, alg.kind)));
    }
    let (rep, t) = (&problem.rep, &problem.t);
    let n = rep.space.dim();
    let mut report = CheckReport::new();
    let mut run = |id: &str, prod: &str, left: &str, right: &str, sign: i64| {
        let m = alg.product(prod);
        for v1 in 0..n {
            for v2 in 0..n {
                let (t1, t2) = (t.column(v1), t.column(v2));
                let lhs = m.mul_vec(&t1, &t2);
                let inner = rep
                    .act(left, &t1)
                    .column(v2)
                    .add(&rep.act(right, &t2).column(v1).scale(&q(sign)));
                report.push_tensor(id, &[v1, v2], lhs.sub(&t.apply(&inner)));
            }
        }
    };
    use crate::algkit::{L, LHAT, MU, R, RHAT, RHO};
    match kind {
        OKind::Assoc => run("o-assoc", "dot", MU, MU, 1),
        OKind::Lie => run("o-lie", "bracket", RHO, RHO, -1),
        OKind::Zinbiel => run("o-zinbiel", "zinbiel", L, R, 1),
        OKind::PreLie => run("o-prelie", "prelie", LHAT, RHAT, 1),
        OKind::Poisson => {
            run("o-assoc", "dot", MU, MU, 1);
            run("o-lie", "bracket", RHO, RHO, -1);
        }
        OKind::PrePoisson => {
            run("o-zinbiel", "zinbiel", L, R, 1);
            run("o-prelie", "prelie", LHAT, RHAT, 1);
        }
    }
    Ok(report)
}

/// Residual-zero against r♯ being an O-operator for the coregular
/// representation. `passed` means the two sides agree.
pub fn o_operator_equiv(kind: OKind, algebra: &AlgebraBundle, r: &Tensor) -> Result<CheckReport> {
    let yk = kind.ybe();
    check_rank2(r, algebra.dim())?;
    if yk.wants_symmetric() && !is_symmetric(r) {
        return Err(Error::Precondition("r must be symmetric for this kind".into()));
    }
    if !yk.wants_symmetric() && !is_skew(r) {
        return Err(Error::Precondition("r must be skew-symmetric for this kind".into()));
    }
    let solves = residual_is_zero(&residual(yk, algebra, r)?);
    let rep = build_coregular_rep(algebra)?;
    let prob = OOperatorProblem::new(rep, sharp(r, algebra.dim())?)?;
    let o = o_operator_check(kind, &prob)?;
    let mut report = CheckReport::new();
    report.notes.push(("residual-zero".into(), solves));
    report.notes.push(("o-operator".into(), o.passed));
    if solves != o.passed {
        report.passed = false;
        report.violations.extend(o.violations);
    }
    Ok(report)
}

/// r̂♯ = r♯ ⊗ κ♯ on a finite quadratic perm algebra.
pub fn factorization_check(r: &Tensor, a_dim: usize, b: &QuadraticPermAlgebra) -> Result<CheckReport> {
    let rhat = lift_solution(r, a_dim, b)?;
    let nb = crate::affine::PermSide::dim(b);
    let lhs = sharp(&rhat, a_dim * nb)?;
    let rhs = sharp(r, a_dim)?.kron(&sharp(&kappa(b), nb)?);
    let mut report = CheckReport::new();
    let diff = lhs.sub(&rhs);
    let mut t = Tensor::zero(2);
    for (&(i, j), v) in diff.entries() {
        t.add_term(&[i, j], v.clone());
    }
    report.push_tensor("factorization", &[], t);
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QfKind {
    Zinbiel,
    PreLie,
    PrePoisson,
    Connes,
    Lie,
    Poisson,
}

impl QfKind {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "zinbiel" => QfKind::Zinbiel,
            "prelie" => QfKind::PreLie,
            "prepoisson" => QfKind::PrePoisson,
            "connes" | "connes-assoc" | "comm-assoc" => QfKind::Connes,
            "lie" => QfKind::Lie,
            "poisson" => QfKind::Poisson,
            _ => return None,
        })
    }

    pub fn algebra_kind(self) -> AlgebraKind {
        match self {
            QfKind::Zinbiel => AlgebraKind::Zinbiel,
            QfKind::PreLie => AlgebraKind::PreLie,
            QfKind::PrePoisson => AlgebraKind::PrePoisson,
            QfKind::Connes => AlgebraKind::CommAssoc,
            QfKind::Lie => AlgebraKind::Lie,
            QfKind::Poisson => AlgebraKind::Poisson,
        }
    }

    pub fn wants_symmetric(self) -> bool {
        matches!(self, QfKind::Zinbiel | QfKind::PreLie | QfKind::PrePoisson)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiFrobenius {
    pub algebra: AlgebraBundle,
    pub form: BilinearForm,
    pub kind: QfKind,
}

impl QuasiFrobenius {
    pub fn new(algebra: AlgebraBundle, form: BilinearForm, kind: QfKind) -> Result<Self> {
        if algebra.kind != kind.algebra_kind() {
            return Err(Error::UnsupportedKind(format!("{:?} form on a {} algebra", kind, algebra.kind)));
        }
        if form.dim() != algebra.dim() {
            return Err(Error::Shape("form and algebra dimensions differ".into()));
        }
        Ok(QuasiFrobenius { algebra, form, kind })
    }

    fn preconditions(&self) -> Result<()> {
        let want = if self.kind.wants_symmetric() { Symmetry::Symmetric } else { Symmetry::Antisymmetric };
        let mut probe = self.form.clone();
        probe.symmetry = want;
        if !probe.verify_symmetry() {
            return Err(Error::Precondition(format!("form is not {}", if self.kind.wants_symmetric() { "symmetric" } else { "antisymmetric" })));
        }
        if !self.form.is_nondegenerate() {
            return Err(Error::Degenerate("form has a kernel".into()));
        }
        Ok(())
    }
}

/// Cocycle identities for a form over products given as trait objects.
pub fn check_form_identities(
    kind: QfKind,
    first: &dyn Product,
    second: Option<&dyn Product>,
    form: &dyn Form,
    inputs: &[usize],
    report: &mut CheckReport,
) {
    let e = Tensor::basis;
    let w = |x: &Tensor, y: &Tensor| form.eval_vectors(x, y);
    let mut triple = |id: &str, f: &dyn Fn(usize, usize, usize) -> Partial<Rational>| {
        for &i in inputs {
            for &j in inputs {
                for &k in inputs {
                    match f(i, j, k) {
                        Ok(v) => report.push(id, &[i, j, k], Residual::Scalar(v)),
                        Err(OutOfWindow) => report.skipped += 1,
                    }
                }
            }
        }
    };
    let zin = |triple: &mut dyn FnMut(&str, &dyn Fn(usize, usize, usize) -> Partial<Rational>), m: &dyn Product| {
        triple("qf-zinbiel", &|i, j, k| {
            let s = m.mul_basis(i, j)?.add(&m.mul_basis(j, i)?);
            Ok(w(&s, &e(k)) - w(&e(i), &m.mul_basis(j, k)?) - w(&e(j), &m.mul_basis(i, k)?))
        });
    };
    let pre = |triple: &mut dyn FnMut(&str, &dyn Fn(usize, usize, usize) -> Partial<Rational>), m: &dyn Product| {
        triple("qf-prelie", &|i, j, k| {
            Ok(w(&m.mul_basis(i, j)?, &e(k)) - w(&e(i), &m.mul_basis(j, k)?) - w(&m.mul_basis(j, i)?, &e(k))
                + w(&e(j), &m.mul_basis(i, k)?))
        });
    };
    let cyc = |triple: &mut dyn FnMut(&str, &dyn Fn(usize, usize, usize) -> Partial<Rational>), id: &str, m: &dyn Product| {
        triple(id, &|i, j, k| {
            Ok(w(&m.mul_basis(i, j)?, &e(k)) + w(&m.mul_basis(j, k)?, &e(i)) + w(&m.mul_basis(k, i)?, &e(j)))
        });
    };
    match kind {
        QfKind::Zinbiel => zin(&mut triple, first),
        QfKind::PreLie => pre(&mut triple, first),
        QfKind::PrePoisson => {
            zin(&mut triple, first);
            pre(&mut triple, second.expect("prelie product"));
        }
        QfKind::Connes => cyc(&mut triple, "connes", first),
        QfKind::Lie => cyc(&mut triple, "qf-lie", first),
        QfKind::Poisson => {
            cyc(&mut triple, "connes", first);
            cyc(&mut triple, "qf-lie", second.expect("bracket"));
        }
    }
}

pub fn qf_check(qf: &QuasiFrobenius) -> Result<CheckReport> {
    qf.preconditions()?;
    let mut report = CheckReport::new();
    let inputs: Vec<usize> = (0..qf.algebra.dim()).collect();
    let (a, b) = crate::algkit::bundle_ops(&qf.algebra);
    check_form_identities(qf.kind, a, b.map(|x| x as &dyn Product), &qf.form, &inputs, &mut report);
    Ok(report)
}

/// r = Σ eᵢ⊗fᵢ for the dual basis of a symmetric nondegenerate form.
pub fn qf_to_r(qf: &QuasiFrobenius) -> Result<Tensor> {
    if !qf.kind.wants_symmetric() {
        return Err(Error::Precondition("qf_to_r needs a symmetric form".into()));
    }
    qf.preconditions()?;
    let dual = qf.form.dual_basis()?;
    let mut r = Tensor::zero(2);
    for (i, f) in dual.iter().enumerate() {
        for (k, c) in f.terms() {
            r.add_term(&[i, k[0]], c.clone());
        }
    }
    Ok(r)
}

/// Cocycle identities of 𝓑 = ϖ⊗ω on an induced algebra over a window,
/// plus antisymmetry of 𝓑 on the region.
pub fn windowed_qf_check(ind: &InducedAlgebra, varpi: &BilinearForm, b: &dyn QuadraticSide, region: &AdmissibleRegion) -> Result<CheckReport> {
    if b.window() != Some(region.window) {
        return Err(Error::Shape("region does not match the perm side".into()));
    }
    let form = InducedForm::new(varpi, b);
    let inputs = region.inputs(ind.a.dim(), b);
    let mut report = CheckReport::new();
    report.window = Some(region.window);
    report.margin = Some(region.margin);
    for &i in &inputs {
        for &j in &inputs {
            let s = form.eval(i, j) + form.eval(j, i);
            report.push("form-antisymmetry", &[i, j], Residual::Scalar(s));
        }
    }
    let (kind, first, second): (QfKind, &dyn Product, Option<&dyn Product>) = match ind.kind {
        AlgebraKind::CommAssoc => (QfKind::Connes, ind.dot().expect("dot"), None),
        AlgebraKind::Lie => (QfKind::Lie, ind.bracket().expect("bracket"), None),
        AlgebraKind::Poisson => (QfKind::Poisson, ind.dot().expect("dot"), Some(ind.bracket().expect("bracket") as &dyn Product)),
        k => return Err(Error::UnsupportedKind(format!("no graded cocycle for {k}"))),
    };
    check_form_identities(kind, first, second, &form, &inputs, &mut report);
    report.skipped += region.excluded(ind.a.dim(), b, 3);
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Harness {
    QuasiAss,
    QuasiP,
}

impl Harness {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "thm-quasi-ass" => Some(Harness::QuasiAss),
            "thm-quasi-P" | "thm-quasi-p" => Some(Harness::QuasiP),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub conditions: Vec<(String, CheckReport)>,
    pub window: usize,
    pub margin: usize,
}

impl EquivalenceReport {
    pub fn agree(&self) -> bool {
        let first = self.conditions[0].1.passed;
        self.conditions.iter().all(|(_, r)| r.passed == first)
    }

    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|(_, r)| r.passed)
    }

    /// Summary report: passes when the four conditions agree.
    pub fn summary(&self) -> CheckReport {
        let mut report = CheckReport::new();
        report.window = Some(self.window);
        report.margin = Some(self.margin);
        for (name, r) in &self.conditions {
            report.notes.push((name.clone(), r.passed));
            report.skipped += r.skipped;
        }
        if !self.agree() {
            report.passed = false;
            for (_, r) in &self.conditions {
                report.violations.extend(r.violations.iter().cloned());
            }
        }
        report
    }
}

/// Evaluates the four conditions of the quasi-Frobenius equivalence
/// theorems on A with form ϖ, over the graded perm algebra truncated at `n`.
pub fn equivalence_harness(which: Harness, a: &AlgebraBundle, varpi: &BilinearForm, n: usize) -> Result<EquivalenceReport> {
    if n < 3 {
        return Err(Error::WindowTooSmall { window: n, margin: PROBE_MARGIN, reason: "the harness needs N ≥ 3".into() });
    }
    let (qk, yk, lk, ik) = match which {
        Harness::QuasiAss => (QfKind::Zinbiel, YbeKind::Zybe, YbeKind::Aybe, InduceKind::Assoc),
        Harness::QuasiP => (QfKind::PrePoisson, YbeKind::Ppybe, YbeKind::Pybe, InduceKind::Poisson),
    };
    let qf = QuasiFrobenius::new(a.clone(), varpi.clone(), qk)?;
    let w = crate::affine::grperm_window(n)?;
    let region = AdmissibleRegion::new(n, PROBE_MARGIN)?;

    let c1 = qf_check(&qf)?;

    let r = qf_to_r(&qf)?;
    let mut c2 = CheckReport::new();
    for (k, t) in residual(yk, a, &r)? {
        c2.push_tensor(k.name(), &[], t);
    }

    let ind = induced(ik, a, &w)?;
    let rhat = lift_solution(&r, a.dim(), &w)?;
    let mut c3 = CheckReport::new();
    c3.window = Some(n);
    c3.margin = Some(PROBE_MARGIN);
    c3.push_tensor("skew-symmetry", &[], rhat.add(&rhat.flip()?));
    let (parts, dropped) = windowed_residual(lk, &ind, &rhat, &region, &w)?;
    for (k, t) in parts {
        c3.push_tensor(k.name(), &[], t);
    }
    c3.skipped = dropped;

    let c4 = windowed_qf_check(&ind, varpi, &w, &region)?;

    Ok(EquivalenceReport {
        conditions: vec![
            ("quasi-frobenius".into(), c1),
            ("solution".into(), c2),
            ("lifted-solution".into(), c3),
            ("graded-cocycle".into(), c4),
        ],
        window: n,
        margin: PROBE_MARGIN,
    })
}

/// Human-readable label of a pair-basis index.
pub fn lifted_label(a: &crate::exactlin::BasisSpace, b: &dyn QuadraticSide, p: usize) -> String {
    pair_label(a, b, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgkit::verify_bialgebra;
    use crate::exactlin::q;
    use crate::fixtures::*;

    fn t3(terms: &[(i64, [usize; 3])]) -> Tensor {
        Tensor::from_terms(3, terms.iter().map(|(c, i)| (i.to_vec(), q(*c))))
    }

    #[test]
    fn zybe_residuals() {
        let a = zinbiel_2d();
        assert!(residual_is_zero(&residual(YbeKind::Zybe, &a, &r_12()).unwrap()));
        let bad = Tensor::pure(&[0, 0], q(1));
        let got = residual(YbeKind::Zybe, &a, &bad).unwrap();
        let want = t3(&[(-1, [1, 0, 0]), (-1, [0, 1, 0]), (2, [0, 0, 1])]);
        assert_eq!(got, vec![(YbeKind::Zybe, want.clone())]);
        assert_eq!(symmetric_simplified_residual(YbeKind::Zybe, &a, &bad).unwrap(), want);
    }

    #[test]
    fn simplified_forms_agree_on_symmetric_elements() {
        let cases = [(YbeKind::Zybe, zinbiel_3d()), (YbeKind::Plybe, prelie_2d()), (YbeKind::Plybe, prelie_affine())];
        for (k, a) in cases {
            let n = a.dim();
            for x in 0..n {
                for y in x..n {
                    let r = sym(x, y).add(&sym(0, n - 1).scale(&q(2)));
                    let full = residual(k, &a, &r).unwrap().remove(0).1;
                    assert_eq!(symmetric_simplified_residual(k, &a, &r).unwrap(), full, "{k:?} {r}");
                }
            }
        }
        assert!(symmetric_simplified_residual(YbeKind::Zybe, &zinbiel_2d(), &wedge(0, 1)).is_err());
    }

    #[test]
    fn compound_equations_have_two_parts() {
        let parts = residual(YbeKind::Ppybe, &prepoisson_2d(), &r_12()).unwrap();
        assert_eq!(parts.iter().map(|p| p.0).collect::<Vec<_>>(), [YbeKind::Zybe, YbeKind::Plybe]);
        assert!(residual(YbeKind::Zybe, &prelie_2d(), &r_12()).is_err());
        assert!(residual(YbeKind::Zybe, &zinbiel_2d(), &Tensor::basis(0)).is_err());
    }

    #[test]
    fn kappa_and_lift() {
        let b = QuadraticPermAlgebra::two_dim();
        // e1⊗f1 + e2⊗f2 with f1 = x2, f2 = −x1
        assert_eq!(kappa(&b), Tensor::from_terms(2, [(vec![0, 1], q(1)), (vec![1, 0], q(-1))]));
        let rhat = lift_solution(&r_12(), 2, &b).unwrap();
        assert!(is_skew(&rhat));
        assert!(!is_symmetric(&rhat));
        assert!(lift_solution(&r_12(), 1, &b).is_err());
    }

    #[test]
    fn triangular_bialgebras_verify() {
        let cases = [
            (TriKind::Zinbiel, zinbiel_2d(), r_12()),
            (TriKind::PreLie, prelie_2d(), sym(0, 1)),
            (TriKind::PrePoisson, prepoisson_2d(), r_12()),
            (TriKind::Infinitesimal, comm_assoc_3d(), wedge(1, 2)),
            (TriKind::Lie, heisenberg(), wedge(0, 2)),
            (TriKind::Poisson, poisson_3d(), wedge(1, 2)),
        ];
        for (k, a, r) in cases {
            let bi = triangular_bialgebra(k, &a, &r).unwrap();
            let rep = verify_bialgebra(&bi);
            assert!(rep.passed, "{k:?}: {:?}", rep.violations.first());
        }
        assert!(triangular_bialgebra(TriKind::Lie, &zinbiel_2d(), &r_12()).is_err());
    }

    #[test]
    fn zinbiel_coboundary_value() {
        // ϑ(e1) = e2⊗e2 for e1∗e1 = e2 and r = e1⊗e2 + e2⊗e1.
        let c = coboundary_coproduct(CoboundaryKind::Zinbiel, &zinbiel_2d(), &r_12()).unwrap();
        assert_eq!(c.image(0), &Tensor::pure(&[1, 1], q(1)));
        assert!(c.image(1).is_zero());
    }

    #[test]
    fn o_operator_preconditions() {
        assert!(o_operator_equiv(OKind::Zinbiel, &zinbiel_2d(), &wedge(0, 1)).is_err());
        assert!(o_operator_equiv(OKind::Lie, &heisenberg(), &sym(0, 1)).is_err());
        let rep = crate::algkit::build_coregular_rep(&zinbiel_2d()).unwrap();
        assert!(OOperatorProblem::new(rep, LinearMap::zero(3, 2)).is_err());
    }

    #[test]
    fn quasi_frobenius() {
        let qf = QuasiFrobenius::new(zinbiel_2d(), form_12(), QfKind::Zinbiel).unwrap();
        assert!(qf_check(&qf).unwrap().passed);
        assert_eq!(qf_to_r(&qf).unwrap(), r_12());
        let bad = QuasiFrobenius::new(zinbiel_2d(), identity_form(2), QfKind::Zinbiel).unwrap();
        assert!(!qf_check(&bad).unwrap().passed);
        let mut skew = BilinearForm::zero(2, Symmetry::Antisymmetric);
        skew.set(0, 1, q(1));
        skew.set(1, 0, q(-1));
        assert!(qf_check(&QuasiFrobenius::new(zinbiel_2d(), skew, QfKind::Zinbiel).unwrap()).is_err());
        assert!(QuasiFrobenius::new(prelie_2d(), form_12(), QfKind::Zinbiel).is_err());
        let degenerate = BilinearForm::zero(2, Symmetry::Symmetric);
        assert!(qf_check(&QuasiFrobenius::new(zinbiel_2d(), degenerate, QfKind::Zinbiel).unwrap()).is_err());
    }

    #[test]
    fn harness_needs_a_window() {
        assert!(matches!(
            equivalence_harness(Harness::QuasiAss, &zinbiel_2d(), &form_12(), 2),
            Err(Error::WindowTooSmall { .. })
        ));
        assert_eq!(Harness::parse("thm-quasi-P"), Some(Harness::QuasiP));
    }

    #[test]
    fn windowed_residual_rejects_inner_equations() {
        let w = crate::affine::grperm_window(3).unwrap();
        let a = zinbiel_2d();
        let ind = induced(InduceKind::Assoc, &a, &w).unwrap();
        let region = AdmissibleRegion::new(3, 2).unwrap();
        assert!(windowed_residual(YbeKind::Zybe, &ind, &r_12(), &region, &w).is_err());
    }
}
