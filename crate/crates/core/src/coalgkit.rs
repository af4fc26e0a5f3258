//! Coproducts, coalgebra axiom catalogs, dualization and bialgebra
//! compatibility checks.

use std::cell::Cell;
use std::collections::BTreeMap;
use std::fmt;

use crate::algkit::{bundle_ops, each_pair, AlgebraBundle, AlgebraKind, CheckReport, Partial, Product, StructureConstants};
use crate::error::{Error, Result};
use crate::exactlin::{q, BasisSpace, Placement, Rational, Tensor};

/// A linear map A → A⊗A known on basis vectors. Windowed coproducts return
/// their in-window terms only.
pub trait CoproductOp {
    fn dim(&self) -> usize;
    fn co_basis(&self, i: usize) -> Tensor;

    fn co(&self, x: &Tensor) -> Tensor {
        let mut out = Tensor::zero(2);
        for (i, c) in x.terms() {
            out.add_scaled(&self.co_basis(i[0]), c);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coproduct {
    dim: usize,
    table: Vec<Tensor>,
}

impl Coproduct {
    pub fn zero(dim: usize) -> Self {
        Coproduct { dim, table: vec![Tensor::zero(2); dim] }
    }

    pub fn from_coeffs(dim: usize, coeffs: &[((usize, usize, usize), Rational)]) -> Result<Self> {
        let mut c = Self::zero(dim);
        for ((i, j, k), v) in coeffs {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::Shape(format!("coproduct coefficient ({i},{j},{k}) out of range")));
            }
            c.add(*i, *j, *k, v.clone());
        }
        Ok(c)
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize) -> Tensor) -> Self {
        Coproduct { dim, table: (0..dim).map(f).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn add(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        self.table[i].add_term(&[j, k], v);
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Rational {
        self.table[i].get(&[j, k])
    }

    pub fn image(&self, i: usize) -> &Tensor {
        &self.table[i]
    }

    pub fn coeffs(&self) -> Vec<((usize, usize, usize), Rational)> {
        let mut out = Vec::new();
        for (i, t) in self.table.iter().enumerate() {
            for (jk, c) in t.terms() {
                out.push(((i, jk[0], jk[1]), c.clone()));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(Tensor::is_zero)
    }
}

impl CoproductOp for Coproduct {
    fn dim(&self) -> usize {
        self.dim
    }

    fn co_basis(&self, i: usize) -> Tensor {
        self.table[i].clone()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoalgebraKind {
    CocommCoassoc,
    LieCo,
    ZinbielCo,
    PreLieCo,
    PoissonCo,
    PrePoissonCo,
}

impl CoalgebraKind {
    pub const ALL: [CoalgebraKind; 6] = [
        CoalgebraKind::CocommCoassoc,
        CoalgebraKind::LieCo,
        CoalgebraKind::ZinbielCo,
        CoalgebraKind::PreLieCo,
        CoalgebraKind::PoissonCo,
        CoalgebraKind::PrePoissonCo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CoalgebraKind::CocommCoassoc => "cocomm-coassoc",
            CoalgebraKind::LieCo => "lie-co",
            CoalgebraKind::ZinbielCo => "zinbiel-co",
            CoalgebraKind::PreLieCo => "prelie-co",
            CoalgebraKind::PoissonCo => "poisson-co",
            CoalgebraKind::PrePoissonCo => "prepoisson-co",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn coproduct_names(self) -> &'static [&'static str] {
        match self {
            CoalgebraKind::CocommCoassoc => &["Delta"],
            CoalgebraKind::LieCo => &["delta"],
            CoalgebraKind::ZinbielCo => &["vartheta"],
            CoalgebraKind::PreLieCo => &["theta"],
            CoalgebraKind::PoissonCo => &["Delta", "delta"],
            CoalgebraKind::PrePoissonCo => &["vartheta", "theta"],
        }
    }

    /// The algebra kind of the dual.
    pub fn dual_kind(self) -> AlgebraKind {
        match self {
            CoalgebraKind::CocommCoassoc => AlgebraKind::CommAssoc,
            CoalgebraKind::LieCo => AlgebraKind::Lie,
            CoalgebraKind::ZinbielCo => AlgebraKind::Zinbiel,
            CoalgebraKind::PreLieCo => AlgebraKind::PreLie,
            CoalgebraKind::PoissonCo => AlgebraKind::Poisson,
            CoalgebraKind::PrePoissonCo => AlgebraKind::PrePoisson,
        }
    }

    pub fn from_algebra(kind: AlgebraKind) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.dual_kind() == kind)
    }
}

impl fmt::Display for CoalgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalgebraBundle {
    pub space: BasisSpace,
    pub kind: CoalgebraKind,
    coproducts: BTreeMap<String, Coproduct>,
}

impl CoalgebraBundle {
    pub fn new(space: BasisSpace, kind: CoalgebraKind, coproducts: Vec<(&str, Coproduct)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (name, c) in coproducts {
            if c.dim() != space.dim() {
                return Err(Error::Malformed(format!("coproduct {name} has the wrong dimension")));
            }
            if map.insert(name.to_string(), c).is_some() {
                return Err(Error::Malformed(format!("coproduct {name} given twice")));
            }
        }
        let mut want: Vec<&str> = kind.coproduct_names().to_vec();
        want.sort_unstable();
        let have: Vec<&str> = map.keys().map(String::as_str).collect();
        if want != have {
            return Err(Error::Malformed(format!(
                "kind {kind} needs coproducts {{{}}}, got {{{}}}",
                want.join(", "),
                have.join(", ")
            )));
        }
        Ok(CoalgebraBundle { space, kind, coproducts: map })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn coproduct(&self, name: &str) -> &Coproduct {
        self.coproducts.get(name).unwrap_or_else(|| panic!("bundle has no coproduct {name}"))
    }

    pub fn coproducts(&self) -> impl Iterator<Item = (&str, &Coproduct)> {
        self.coproducts.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn coproduct_mut(&mut self, name: &str) -> Option<&mut Coproduct> {
        self.coproducts.get_mut(name)
    }

    pub fn ops(&self) -> (&Coproduct, Option<&Coproduct>) {
        let names = self.kind.coproduct_names();
        (self.coproduct(names[0]), names.get(1).map(|n| self.coproduct(n)))
    }
}

pub(crate) fn tau(t: &Tensor) -> Tensor {
    t.flip().expect("rank 2")
}

pub(crate) fn tau12(t: &Tensor) -> Tensor {
    t.permute3(Placement::SwapFirst).expect("rank 3")
}

/// (Δ⊗id)(t) for leg 0, (id⊗Δ)(t) for leg 1, on a rank-2 tensor.
pub(crate) fn co_on_leg(op: &dyn CoproductOp, t: &Tensor, leg: usize) -> Tensor {
    let mut out = Tensor::zero(3);
    for (idx, c) in t.terms() {
        let img = op.co_basis(idx[leg]);
        for (jk, d) in img.terms() {
            let triple = if leg == 0 { [jk[0], jk[1], idx[1]] } else { [idx[0], jk[0], jk[1]] };
            out.add_term(&triple, c * d);
        }
    }
    out
}

/// Applies a linear map, known on basis vectors, to one leg. Images that
/// leave a window are dropped and counted.
pub(crate) fn map_on_leg(t: &Tensor, leg: usize, f: &dyn Fn(usize) -> Partial<Tensor>, dropped: &Cell<usize>) -> Tensor {
    let mut out = Tensor::zero(t.rank());
    for (idx, c) in t.terms() {
        match f(idx[leg]) {
            Ok(img) => {
                for (k, d) in img.terms() {
                    let mut n = idx.to_vec();
                    n[leg] = k[0];
                    out.add_term(&n, c * d);
                }
            }
            Err(_) => dropped.set(dropped.get() + 1),
        }
    }
    out
}

fn left(m: &dyn Product, a: usize) -> impl Fn(usize) -> Partial<Tensor> + '_ {
    move |x| m.mul_basis(a, x)
}

fn right(m: &dyn Product, a: usize) -> impl Fn(usize) -> Partial<Tensor> + '_ {
    move |x| m.mul_basis(x, a)
}

fn lin(terms: &[(i64, &Tensor)]) -> Tensor {
    let mut out = Tensor::zero(terms[0].1.rank());
    for (c, t) in terms {
        out.add_scaled(t, &q(*c));
    }
    out
}

/// Coalgebra axiom catalog over trait objects. `observe` restricts residuals
/// to the coefficients that are trusted (identity for finite spaces).
pub fn check_coalgebra_axioms(
    kind: CoalgebraKind,
    first: &dyn CoproductOp,
    second: Option<&dyn CoproductOp>,
    inputs: &[usize],
    observe: &dyn Fn(&Tensor) -> Tensor,
    report: &mut CheckReport,
) {
    let mut run = |id: &str, f: &dyn Fn(usize) -> Tensor| {
        for &i in inputs {
            report.push_tensor(id, &[i], observe(&f(i)));
        }
    };
    let e = Tensor::basis;
    let cocomm = |run: &mut dyn FnMut(&str, &dyn Fn(usize) -> Tensor), d: &dyn CoproductOp| {
        run("cocommutativity", &|i| {
            let x = d.co(&e(i));
            x.sub(&tau(&x))
        });
        run("coassociativity", &|i| {
            let x = d.co(&e(i));
            co_on_leg(d, &x, 0).sub(&co_on_leg(d, &x, 1))
        });
    };
    let lieco = |run: &mut dyn FnMut(&str, &dyn Fn(usize) -> Tensor), d: &dyn CoproductOp| {
        run("co-antisymmetry", &|i| {
            let x = d.co(&e(i));
            x.add(&tau(&x))
        });
        run("co-jacobi", &|i| {
            let x = d.co(&e(i));
            let a = co_on_leg(d, &x, 1);
            lin(&[(1, &a), (-1, &tau12(&a)), (-1, &co_on_leg(d, &x, 0))])
        });
    };
    let zinco = |run: &mut dyn FnMut(&str, &dyn Fn(usize) -> Tensor), v: &dyn CoproductOp| {
        run("zinbiel-co", &|i| {
            let x = v.co(&e(i));
            let a = co_on_leg(v, &x, 0);
            lin(&[(1, &a), (1, &tau12(&a)), (-1, &co_on_leg(v, &x, 1))])
        });
    };
    let preco = |run: &mut dyn FnMut(&str, &dyn Fn(usize) -> Tensor), t: &dyn CoproductOp| {
        run("prelie-co", &|i| {
            let x = t.co(&e(i));
            let a = co_on_leg(t, &x, 1);
            let b = co_on_leg(t, &x, 0);
            lin(&[(1, &a), (-1, &tau12(&a)), (-1, &b), (1, &tau12(&b))])
        });
    };
    match kind {
        CoalgebraKind::CocommCoassoc => cocomm(&mut run, first),
        CoalgebraKind::LieCo => lieco(&mut run, first),
        CoalgebraKind::ZinbielCo => zinco(&mut run, first),
        CoalgebraKind::PreLieCo => preco(&mut run, first),
        CoalgebraKind::PoissonCo => {
            let (dd, d) = (first, second.expect("poisson-co needs delta"));
            cocomm(&mut run, dd);
            lieco(&mut run, d);
            run("poisson-co", &|i| {
                let dx = dd.co(&e(i));
                let lhs = co_on_leg(dd, &d.co(&e(i)), 1);
                let t1 = co_on_leg(d, &dx, 0);
                let t2 = tau12(&co_on_leg(d, &dx, 1));
                lin(&[(1, &lhs), (-1, &t1), (-1, &t2)])
            });
        }
        CoalgebraKind::PrePoissonCo => {
            let (v, t) = (first, second.expect("prepoisson-co needs theta"));
            zinco(&mut run, v);
            preco(&mut run, t);
            run("pp-co-1", &|i| {
                let vx = v.co(&e(i));
                let lhs = co_on_leg(t, &vx, 0);
                let lhs = lhs.sub(&co_on_leg_tau(t, &vx));
                let t1 = co_on_leg(v, &t.co(&e(i)), 1);
                let t2 = tau12(&co_on_leg(t, &vx, 1));
                lin(&[(1, &lhs), (-1, &t1), (1, &t2)])
            });
            run("pp-co-2", &|i| {
                let tx = t.co(&e(i));
                let vx = v.co(&e(i));
                let lhs = co_on_leg(v, &tx, 0).add(&co_on_leg_tau(v, &tx));
                let a = co_on_leg(t, &vx, 1);
                lin(&[(1, &lhs), (-1, &a), (-1, &tau12(&a))])
            });
        }
    }
}

/// ((τΔ)⊗id)(t): the coproduct on leg 0 followed by swapping its two outputs.
fn co_on_leg_tau(op: &dyn CoproductOp, t: &Tensor) -> Tensor {
    tau12(&co_on_leg(op, t, 0))
}

pub fn verify_costructure(bundle: &CoalgebraBundle) -> CheckReport {
    let mut report = CheckReport::new();
    let inputs: Vec<usize> = (0..bundle.dim()).collect();
    let (a, b) = bundle.ops();
    check_coalgebra_axioms(bundle.kind, a, b.map(|x| x as &dyn CoproductOp), &inputs, &|t| t.clone(), &mut report);
    report
}

fn coproduct_names_for(kind: AlgebraKind) -> Result<&'static [&'static str]> {
    CoalgebraKind::from_algebra(kind)
        .map(|k| k.coproduct_names())
        .ok_or_else(|| Error::UnsupportedKind(format!("no coalgebra kind dual to {kind}")))
}

/// Coalgebra on A* from the algebra's structure constants, dᵢ^{jk} = c_{jk}^i.
pub fn dualize_alg(alg: &AlgebraBundle) -> Result<CoalgebraBundle> {
    let kind = CoalgebraKind::from_algebra(alg.kind)
        .ok_or_else(|| Error::UnsupportedKind(format!("no coalgebra kind dual to {}", alg.kind)))?;
    let names = coproduct_names_for(alg.kind)?;
    let dim = alg.dim();
    let mut coprods = Vec::new();
    for (pname, cname) in alg.kind.product_names().iter().zip(names) {
        let mut c = Coproduct::zero(dim);
        for ((i, j, k), v) in alg.product(pname).coeffs() {
            c.add(k, i, j, v);
        }
        coprods.push((*cname, c));
    }
    CoalgebraBundle::new(alg.space.dual(), kind, coprods)
}

/// Algebra on A* from the coalgebra's coefficients.
pub fn dualize(co: &CoalgebraBundle) -> Result<AlgebraBundle> {
    let kind = co.kind.dual_kind();
    let dim = co.dim();
    let mut prods = Vec::new();
    for (cname, pname) in co.kind.coproduct_names().iter().zip(kind.product_names()) {
        let mut s = StructureConstants::zero(dim);
        for ((i, j, k), v) in co.coproduct(cname).coeffs() {
            s.add(j, k, i, v);
        }
        prods.push((*pname, s));
    }
    let space = match co.space.name.strip_suffix('*') {
        Some(base) => BasisSpace::new(
            base,
            co.space.labels().iter().map(|l| l.strip_suffix('*').unwrap_or(l).to_string()).collect(),
        )?,
        None => co.space.dual(),
    };
    AlgebraBundle::new(space, kind, prods)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BialgebraKind {
    Infinitesimal,
    LieBi,
    PoissonBi,
    ZinbielBi,
    PreLieBi,
    PrePoissonBi,
}

impl BialgebraKind {
    pub const ALL: [BialgebraKind; 6] = [
        BialgebraKind::Infinitesimal,
        BialgebraKind::LieBi,
        BialgebraKind::PoissonBi,
        BialgebraKind::ZinbielBi,
        BialgebraKind::PreLieBi,
        BialgebraKind::PrePoissonBi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BialgebraKind::Infinitesimal => "infinitesimal",
            BialgebraKind::LieBi => "lie-bi",
            BialgebraKind::PoissonBi => "poisson-bi",
            BialgebraKind::ZinbielBi => "zinbiel-bi",
            BialgebraKind::PreLieBi => "prelie-bi",
            BialgebraKind::PrePoissonBi => "prepoisson-bi",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn parts(self) -> (AlgebraKind, CoalgebraKind) {
        match self {
            BialgebraKind::Infinitesimal => (AlgebraKind::CommAssoc, CoalgebraKind::CocommCoassoc),
            BialgebraKind::LieBi => (AlgebraKind::Lie, CoalgebraKind::LieCo),
            BialgebraKind::PoissonBi => (AlgebraKind::Poisson, CoalgebraKind::PoissonCo),
            BialgebraKind::ZinbielBi => (AlgebraKind::Zinbiel, CoalgebraKind::ZinbielCo),
            BialgebraKind::PreLieBi => (AlgebraKind::PreLie, CoalgebraKind::PreLieCo),
            BialgebraKind::PrePoissonBi => (AlgebraKind::PrePoisson, CoalgebraKind::PrePoissonCo),
        }
    }
}

impl fmt::Display for BialgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BialgebraBundle {
    pub algebra: AlgebraBundle,
    pub coalgebra: CoalgebraBundle,
    pub kind: BialgebraKind,
}

impl BialgebraBundle {
    pub fn new(algebra: AlgebraBundle, coalgebra: CoalgebraBundle, kind: BialgebraKind) -> Result<Self> {
        let (ak, ck) = kind.parts();
        if algebra.kind != ak || coalgebra.kind != ck {
            return Err(Error::Malformed(format!(
                "{kind} pairs {ak} with {ck}, got {} with {}",
                algebra.kind, coalgebra.kind
            )));
        }
        if algebra.dim() != coalgebra.dim() {
            return Err(Error::Malformed("algebra and coalgebra live on different spaces".into()));
        }
        Ok(BialgebraBundle { algebra, coalgebra, kind })
    }
}

/// Compatibility catalog over trait objects, checked on ordered input pairs.
/// Products applied to a single leg may leave a window; those terms are
/// dropped and counted in `report.skipped`, which is sound as long as
/// `observe` only keeps in-window legs.
pub fn check_bialgebra_compat(
    kind: BialgebraKind,
    prods: (&dyn Product, Option<&dyn Product>),
    coprods: (&dyn CoproductOp, Option<&dyn CoproductOp>),
    inputs: &[usize],
    observe: &dyn Fn(&Tensor) -> Tensor,
    report: &mut CheckReport,
) {
    let dropped = Cell::new(0usize);
    let e = Tensor::basis;
    let on = |t: &Tensor, leg: usize, f: &dyn Fn(usize) -> Partial<Tensor>| map_on_leg(t, leg, f, &dropped);

    let mut run = |id: &str, f: &dyn Fn(usize, usize) -> Partial<Tensor>| {
        each_pair(report, id, inputs, |i, j| f(i, j).map(|t| observe(&t)));
    };

    let infinitesimal = |run: &mut dyn FnMut(&str, &dyn Fn(usize, usize) -> Partial<Tensor>),
                         m: &dyn Product,
                         dd: &dyn CoproductOp| {
        run("infinitesimal", &|i, j| {
            let lhs = dd.co(&m.mul_basis(i, j)?);
            let t1 = on(&dd.co(&e(i)), 0, &left(m, j));
            let t2 = on(&dd.co(&e(j)), 1, &left(m, i));
            Ok(lin(&[(1, &lhs), (-1, &t1), (-1, &t2)]))
        });
    };
    let liebi = |run: &mut dyn FnMut(&str, &dyn Fn(usize, usize) -> Partial<Tensor>), b: &dyn Product, d: &dyn CoproductOp| {
        run("lie-bi", &|i, j| {
            let lhs = d.co(&b.mul_basis(i, j)?);
            let (dj, di) = (d.co(&e(j)), d.co(&e(i)));
            Ok(lin(&[
                (1, &lhs),
                (-1, &on(&dj, 0, &left(b, i))),
                (-1, &on(&dj, 1, &left(b, i))),
                (1, &on(&di, 0, &left(b, j))),
                (1, &on(&di, 1, &left(b, j))),
            ]))
        });
    };
    let zinbi = |run: &mut dyn FnMut(&str, &dyn Fn(usize, usize) -> Partial<Tensor>), z: &dyn Product, v: &dyn CoproductOp| {
        run("zinbiel-bi-1", &|i, j| {
            let x = v.co(&z.mul_basis(i, j)?);
            let (vi, vj) = (v.co(&e(i)), v.co(&e(j)));
            Ok(lin(&[
                (1, &x),
                (1, &tau(&x)),
                (-1, &on(&vi, 1, &right(z, j))),
                (-1, &on(&vj, 0, &left(z, i))),
                (-1, &tau(&on(&vj, 1, &left(z, i)))),
            ]))
        });
        run("zinbiel-bi-2", &|i, j| {
            let s = z.mul_basis(i, j)?.add(&z.mul_basis(j, i)?);
            let (vi, vj) = (v.co(&e(i)), v.co(&e(j)));
            Ok(lin(&[
                (1, &v.co(&s)),
                (-1, &on(&vj, 0, &left(z, i))),
                (-1, &on(&vi, 1, &left(z, j))),
                (-1, &on(&vi, 1, &right(z, j))),
            ]))
        });
    };
    let prelbi = |run: &mut dyn FnMut(&str, &dyn Fn(usize, usize) -> Partial<Tensor>), p: &dyn Product, t: &dyn CoproductOp| {
        let anti = |x: &Tensor| {
            let y = t.co(x);
            y.sub(&tau(&y))
        };
        run("prelie-bi-1", &|i, j| {
            let aj = anti(&e(j));
            let ti = t.co(&e(i));
            Ok(lin(&[
                (1, &anti(&p.mul_basis(i, j)?)),
                (-1, &on(&aj, 0, &left(p, i))),
                (-1, &on(&aj, 1, &left(p, i))),
                (-1, &on(&ti, 1, &right(p, j))),
                (1, &on(&tau(&ti), 0, &right(p, j))),
            ]))
        });
        run("prelie-bi-2", &|i, j| {
            let c = p.mul_basis(i, j)?.sub(&p.mul_basis(j, i)?);
            let (ti, tj) = (t.co(&e(i)), t.co(&e(j)));
            Ok(lin(&[
                (1, &t.co(&c)),
                (-1, &on(&ti, 1, &right(p, j))),
                (1, &on(&ti, 1, &left(p, j))),
                (-1, &on(&tj, 1, &left(p, i))),
                (1, &on(&tj, 1, &right(p, i))),
                (-1, &on(&tj, 0, &left(p, i))),
                (1, &on(&ti, 0, &left(p, j))),
            ]))
        });
    };

    match kind {
        BialgebraKind::Infinitesimal => infinitesimal(&mut run, prods.0, coprods.0),
        BialgebraKind::LieBi => liebi(&mut run, prods.0, coprods.0),
        BialgebraKind::ZinbielBi => zinbi(&mut run, prods.0, coprods.0),
        BialgebraKind::PreLieBi => prelbi(&mut run, prods.0, coprods.0),
        BialgebraKind::PoissonBi => {
            let (m, b) = (prods.0, prods.1.expect("bracket"));
            let (dd, d) = (coprods.0, coprods.1.expect("delta"));
            infinitesimal(&mut run, m, dd);
            liebi(&mut run, b, d);
            run("poisson-bi-1", &|i, j| {
                let lhs = dd.co(&b.mul_basis(i, j)?);
                let (ddj, di) = (dd.co(&e(j)), d.co(&e(i)));
                Ok(lin(&[
                    (1, &lhs),
                    (-1, &on(&ddj, 0, &left(b, i))),
                    (-1, &on(&ddj, 1, &left(b, i))),
                    (-1, &on(&di, 0, &left(m, j))),
                    (1, &on(&di, 1, &left(m, j))),
                ]))
            });
            run("poisson-bi-2", &|i, j| {
                let lhs = d.co(&m.mul_basis(i, j)?);
                let (di, dj, ddi, ddj) = (d.co(&e(i)), d.co(&e(j)), dd.co(&e(i)), dd.co(&e(j)));
                Ok(lin(&[
                    (1, &lhs),
                    (-1, &on(&dj, 0, &left(m, i))),
                    (-1, &on(&di, 0, &left(m, j))),
                    (-1, &on(&ddj, 1, &left(b, i))),
                    (-1, &on(&ddi, 1, &left(b, j))),
                ]))
            });
        }
        BialgebraKind::PrePoissonBi => {
            let (z, p) = (prods.0, prods.1.expect("prelie"));
            let (v, t) = (coprods.0, coprods.1.expect("theta"));
            zinbi(&mut run, z, v);
            prelbi(&mut run, p, t);
            let sym = |x: &Tensor| {
                let y = v.co(x);
                y.add(&tau(&y))
            };
            let anti = |x: &Tensor| {
                let y = t.co(x);
                y.sub(&tau(&y))
            };
            run("pp-bi-1", &|i, j| {
                let s = z.mul_basis(i, j)?.add(&z.mul_basis(j, i)?);
                let (ti, tj, vi, vj) = (t.co(&e(i)), t.co(&e(j)), v.co(&e(i)), v.co(&e(j)));
                Ok(lin(&[
                    (1, &t.co(&s)),
                    (-1, &on(&ti, 1, &left(z, j))),
                    (-1, &on(&ti, 1, &right(z, j))),
                    (-1, &on(&tj, 1, &left(z, i))),
                    (-1, &on(&tj, 1, &right(z, i))),
                    (1, &on(&vj, 0, &left(p, i))),
                    (1, &on(&vi, 0, &left(p, j))),
                ]))
            });
            run("pp-bi-2", &|i, j| {
                let c = p.mul_basis(i, j)?.sub(&p.mul_basis(j, i)?);
                let (ti, vj) = (t.co(&e(i)), v.co(&e(j)));
                Ok(lin(&[
                    (1, &v.co(&c)),
                    (-1, &on(&ti, 0, &left(z, j))),
                    (1, &on(&ti, 1, &left(z, j))),
                    (1, &on(&ti, 1, &right(z, j))),
                    (-1, &on(&vj, 0, &left(p, i))),
                    (-1, &on(&vj, 1, &left(p, i))),
                    (1, &on(&vj, 1, &right(p, i))),
                ]))
            });
            run("pp-bi-3", &|i, j| {
                let ti = t.co(&e(i));
                let sj = sym(&e(j));
                Ok(lin(&[
                    (1, &sym(&p.mul_basis(i, j)?)),
                    (1, &on(&ti, 1, &right(z, j))),
                    (1, &on(&tau(&ti), 0, &right(z, j))),
                    (-1, &on(&sj, 0, &left(p, i))),
                    (-1, &on(&sj, 1, &left(p, i))),
                ]))
            });
            run("pp-bi-4", &|i, j| {
                let (ti, vi) = (t.co(&e(i)), v.co(&e(i)));
                let (aj, sj) = (anti(&e(j)), sym(&e(j)));
                Ok(lin(&[
                    (1, &anti(&z.mul_basis(i, j)?)),
                    (-1, &on(&ti, 1, &right(z, j))),
                    (-1, &on(&aj, 1, &left(z, i))),
                    (-1, &on(&tau(&vi), 0, &right(p, j))),
                    (1, &on(&sj, 0, &left(p, i))),
                ]))
            });
        }
    }
    report.skipped += dropped.get();
}

pub fn verify_bialgebra(bundle: &BialgebraBundle) -> CheckReport {
    let mut report = verify_structure_and_costructure(bundle);
    let inputs: Vec<usize> = (0..bundle.algebra.dim()).collect();
    let (a, b) = bundle_ops(&bundle.algebra);
    let (c, d) = bundle.coalgebra.ops();
    check_bialgebra_compat(
        bundle.kind,
        (a, b.map(|x| x as &dyn Product)),
        (c, d.map(|x| x as &dyn CoproductOp)),
        &inputs,
        &|t| t.clone(),
        &mut report,
    );
    report
}

fn verify_structure_and_costructure(bundle: &BialgebraBundle) -> CheckReport {
    let mut report = crate::algkit::verify_structure(&bundle.algebra);
    report.merge(verify_costructure(&bundle.coalgebra));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algkit::verify_structure;
    use crate::exactlin::q;
    use crate::fixtures::*;
    use crate::ybe::{triangular_bialgebra, TriKind};

    #[test]
    fn duals_of_fixtures_are_coalgebras() {
        for a in [zinbiel_3d(), prelie_2d(), prepoisson_2d(), comm_assoc_3d(), heisenberg(), poisson_3d()] {
            let c = dualize_alg(&a).unwrap();
            assert_eq!(c.space.label(0), "e1*");
            let r = verify_costructure(&c);
            assert!(r.passed, "{}: {:?}", c.kind, r.violations.first());
            assert_eq!(dualize(&c).unwrap(), a);
        }
    }

    #[test]
    fn dual_of_broken_algebra_fails() {
        for a in [broken_zinbiel(), broken_prelie()] {
            assert!(!verify_structure(&a).passed);
            assert!(!verify_costructure(&dualize_alg(&a).unwrap()).passed);
        }
    }

    #[test]
    fn coproduct_layout() {
        // e1 ↦ 2 e2⊗e2
        let c = Coproduct::from_coeffs(2, &[((0, 1, 1), q(2))]).unwrap();
        assert_eq!(c.image(0), &Tensor::pure(&[1, 1], q(2)));
        assert_eq!(c.co(&Tensor::pure(&[0], q(3))), Tensor::pure(&[1, 1], q(6)));
        assert!(Coproduct::from_coeffs(2, &[((0, 2, 1), q(1))]).is_err());
    }

    #[test]
    fn bundle_kinds_must_match() {
        let a = zinbiel_2d();
        let c = dualize_alg(&heisenberg()).unwrap();
        assert!(BialgebraBundle::new(a, c, BialgebraKind::ZinbielBi).is_err());
        for k in BialgebraKind::ALL {
            assert_eq!(BialgebraKind::parse(k.name()), Some(k));
        }
    }

    #[test]
    fn perturbed_coboundary_breaks_compatibility() {
        let bi = triangular_bialgebra(TriKind::Zinbiel, &zinbiel_2d(), &r_12()).unwrap();
        assert!(verify_bialgebra(&bi).passed);
        let mut flagged = 0;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let mut m = bi.clone();
                    m.coalgebra.coproduct_mut("vartheta").unwrap().add(i, j, k, q(1));
                    if !verify_bialgebra(&m).passed {
                        flagged += 1;
                    }
                }
            }
        }
        assert!(flagged >= 6, "{flagged}");
    }
}
