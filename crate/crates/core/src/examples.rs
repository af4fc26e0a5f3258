//! Built-in example documents and the values they are expected to produce.

use std::fmt::Write as _;

use crate::affine::{induced, induced_co, CoKind, InduceKind, InducedForm, QuadraticPermAlgebra, QuadraticSide};
use crate::algkit::{subadjacent, verify_structure, CheckReport};
use crate::cli::{parse_document, Document};
use crate::coalgkit::{verify_bialgebra, BialgebraBundle, BialgebraKind, CoproductOp};
use crate::exactlin::{q, Form, Rational, Tensor};
use crate::fixtures::family_samples;
use crate::ybe::{self, CoinKind, CoboundaryKind, QfKind, YbeKind};

pub const PREPOISSON_2D: &str = "\
# e1*e1 = e2; e1 o e1 = e1, e1 o e2 = e2 o e1 = e2
[space]
name=A
basis= e1 e2
[kind]
prepoisson
[product zinbiel]
e1 e1 -> 1 e2
[product prelie]
e1 e1 -> 1 e1
e1 e2 -> 1 e2
e2 e1 -> 1 e2
";

pub const ZINBIEL_2D: &str = "\
[space]
name=A
basis= e1 e2
[kind]
zinbiel
[product zinbiel]
e1 e1 -> 1 e2
[element r]
1 e1 e2, 1 e2 e1
[element bad_r]
1 e1 e1
";

pub const PREPOISSON_R: &str = "\
[space]
name=A
basis= e1 e2
[kind]
prepoisson
[product zinbiel]
e1 e1 -> 1 e2
[product prelie]
e1 e1 -> 1 e1
e1 e2 -> 1 e2
e2 e1 -> 1 e2
[element r]
1 e1 e2, 1 e2 e1
";

pub const ZINBIEL_FORM: &str = "\
[space]
name=A
basis= e1 e2
[kind]
zinbiel
[product zinbiel]
e1 e1 -> 1 e2
[form varpi symmetric]
e1 e2 -> 1
e2 e1 -> 1
";

pub const PREPOISSON_FORM: &str = "\
[space]
name=A
basis= e1 e2
[kind]
prepoisson
[product zinbiel]
e1 e1 -> 1 e2
[product prelie]
e1 e1 -> 1 e1
e1 e2 -> 1 e2
e2 e1 -> 1 e2
[form varpi symmetric]
e1 e2 -> 1
e2 e1 -> 1
";

pub const PERM_2D: &str = "\
[space]
name=B
basis= x1 x2
[kind]
perm
[product perm]
x2 x1 -> 1 x1
x2 x2 -> 1 x2
[form omega antisymmetric]
x1 x2 -> -1
x2 x1 -> 1
";

/// The pre-Poisson family with e1∗e1 = a e2, e1∘e1 = b e1 + c e2,
/// e1∘e2 = e2∘e1 = b e2.
pub fn family_document(a: &Rational, b: &Rational, c: &Rational) -> String {
    let mut s = String::from("[space]\nname=A\nbasis= e1 e2\n[kind]\nprepoisson\n[product zinbiel]\n");
    let _ = writeln!(s, "e1 e1 -> {a} e2\n[product prelie]");
    let _ = writeln!(s, "e1 e1 -> {b} e1, {c} e2\ne1 e2 -> {b} e2\ne2 e1 -> {b} e2");
    s
}

/// Named embedded documents.
pub const DOCUMENTS: &[(&str, &str)] = &[
    ("prepoisson2", PREPOISSON_2D),
    ("zinbiel2", ZINBIEL_2D),
    ("prepoisson2-r", PREPOISSON_R),
    ("zinbiel2-form", ZINBIEL_FORM),
    ("prepoisson2-form", PREPOISSON_FORM),
    ("perm2", PERM_2D),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExampleResult {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl ExampleResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Golden {
    name: String,
    checked: usize,
    failures: Vec<String>,
}

impl Golden {
    fn new(name: &str) -> Self {
        Golden { name: name.into(), checked: 0, failures: vec![] }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: &T, want: &T) {
        self.checked += 1;
        if got != want {
            self.failures.push(format!("{what}: got {got:?}, want {want:?}"));
        }
    }

    fn tensor(&mut self, what: &str, got: &Tensor, want: &Tensor, label: &dyn Fn(usize) -> String) {
        self.checked += 1;
        if got != want {
            self.failures.push(format!("{what}: got {}, want {}", got.fmt_with(label), want.fmt_with(label)));
        }
    }

    fn report(&mut self, what: &str, r: &CheckReport) {
        self.checked += 1;
        if !r.passed {
            let first = r.violations.first().map(|v| format!("{} at {:?}", v.identity, v.indices)).unwrap_or_default();
            self.failures.push(format!("{what}: {} violation(s), first {first}", r.violations.len()));
        }
    }

    fn ok<T>(&mut self, what: &str, r: crate::Result<T>) -> Option<T> {
        match r {
            Ok(x) => Some(x),
            Err(e) => {
                self.checked += 1;
                self.failures.push(format!("{what}: {e}"));
                None
            }
        }
    }

    fn done(self) -> ExampleResult {
        ExampleResult { name: self.name, checked: self.checked, failures: self.failures }
    }
}

fn t1(terms: &[(i64, usize)]) -> Tensor {
    Tensor::from_terms(1, terms.iter().map(|&(c, i)| (vec![i], q(c))))
}

fn t2(terms: &[(i64, usize, usize)]) -> Tensor {
    Tensor::from_terms(2, terms.iter().map(|&(c, i, j)| (vec![i, j], q(c))))
}

// y1 = e1⊗x1, y2 = e1⊗x2, y3 = e2⊗x1, y4 = e2⊗x2.
const Y1: usize = 0;
const Y2: usize = 1;
const Y3: usize = 2;
const Y4: usize = 3;

fn ylabel(i: usize) -> String {
    format!("y{}", i + 1)
}

fn elabel(i: usize) -> String {
    format!("e{}", i + 1)
}

fn xlabel(i: usize) -> String {
    format!("x{}", i + 1)
}

fn doc(text: &str) -> Document {
    parse_document(text).expect("embedded document parses")
}

/// Twenty samples of the two-dimensional pre-Poisson family.
pub fn bialia() -> ExampleResult {
    let mut g = Golden::new("bialia");
    for (n, (a, b, c)) in family_samples().iter().enumerate() {
        let Some(d) = g.ok("parse", parse_document(&family_document(a, b, c))) else { continue };
        let Some(alg) = g.ok("bundle", d.algebra(None)) else { continue };
        g.report(&format!("sample {n} (a={a}, b={b}, c={c}) pre-Poisson axioms"), &verify_structure(&alg));
        if let Some(p) = g.ok("sub-adjacent", subadjacent(&alg)) {
            g.report(&format!("sample {n} sub-adjacent Poisson axioms"), &verify_structure(&p));
        }
    }
    g.done()
}

/// Induced products on y1..y4 of the pre-Poisson structure e1∗e1 = e2,
/// e1∘e1 = e1, e1∘e2 = e2∘e1 = e2 (the dot alone for the Zinbiel part).
fn induced_tables(g: &mut Golden, ind: &crate::algkit::AlgebraBundle) {
    let mut dot = vec![vec![Tensor::zero(1); 4]; 4];
    dot[Y1][Y2] = t1(&[(1, Y3)]);
    dot[Y2][Y1] = t1(&[(1, Y3)]);
    // Both summands of the induced product contribute e1∗e1⊗x2⋄x2.
    dot[Y2][Y2] = t1(&[(2, Y4)]);
    let mut br = vec![vec![Tensor::zero(1); 4]; 4];
    br[Y1][Y2] = t1(&[(-1, Y1)]);
    br[Y2][Y1] = t1(&[(1, Y1)]);
    br[Y1][Y4] = t1(&[(-1, Y3)]);
    br[Y4][Y1] = t1(&[(1, Y3)]);
    br[Y2][Y3] = t1(&[(1, Y3)]);
    br[Y3][Y2] = t1(&[(-1, Y3)]);
    let has_bracket = ind.products().any(|(n, _)| n == "bracket");
    for i in 0..4 {
        for j in 0..4 {
            g.tensor(&format!("{}·{}", ylabel(i), ylabel(j)), ind.product("dot").basis_product(i, j), &dot[i][j], &ylabel);
            if has_bracket {
                g.tensor(&format!("[{}, {}]", ylabel(i), ylabel(j)), ind.product("bracket").basis_product(i, j), &br[i][j], &ylabel);
            }
        }
    }
}

/// The Poisson algebra induced on A⊗B by the two-dimensional perm algebra.
pub fn prep_p() -> ExampleResult {
    prep_p_on(PREPOISSON_2D)
}

fn prep_p_on(text: &str) -> ExampleResult {
    let mut g = Golden::new("preP-P");
    let a = doc(text).algebra(None).expect("pre-Poisson");
    let b = QuadraticPermAlgebra::two_dim();
    let Some(ind) = g.ok("induce", induced(InduceKind::Poisson, &a, &b).and_then(|i| i.materialize())) else {
        return g.done();
    };
    induced_tables(&mut g, &ind);
    g.report("Poisson axioms", &verify_structure(&ind));
    g.done()
}

/// Triangular Zinbiel bialgebra of r and the infinitesimal bialgebra it induces.
pub fn zbia_assbia() -> ExampleResult {
    zbia_assbia_on(ZINBIEL_2D)
}

fn zbia_assbia_on(text: &str) -> ExampleResult {
    let mut g = Golden::new("Zbia-Assbia");
    let d = doc(text);
    let a = d.algebra(None).expect("Zinbiel");
    let r = d.element("r").expect("r").clone();
    let b = QuadraticPermAlgebra::two_dim();
    if let Some(res) = g.ok("ZYBE", ybe::residual(YbeKind::Zybe, &a, &r)) {
        g.tensor("ZYBE residual", &res[0].1, &Tensor::zero(3), &elabel);
    }
    if let Some(cb) = g.ok("vartheta", ybe::coboundary_coproduct(CoboundaryKind::Zinbiel, &a, &r)) {
        g.tensor("vartheta(e1)", cb.image(0), &t2(&[(1, 1, 1)]), &elabel);
        g.tensor("vartheta(e2)", cb.image(1), &Tensor::zero(2), &elabel);
    }
    g.tensor("nu(x1)", &b.nu(0), &t2(&[(1, 0, 0)]), &xlabel);
    g.tensor("nu(x2)", &b.nu(1), &t2(&[(1, 0, 1)]), &xlabel);
    g.tensor("dual of x1", &b.dual(0), &t1(&[(1, 1)]), &xlabel);
    g.tensor("dual of x2", &b.dual(1), &t1(&[(-1, 0)]), &xlabel);
    let Some(bi) = g.ok("triangular bialgebra", ybe::triangular_bialgebra(ybe::TriKind::Zinbiel, &a, &r)) else {
        return g.done();
    };
    let Some(co) = g.ok("induced coproduct", induced_co(&bi.coalgebra, &b)) else { return g.done() };
    let delta = co.get(CoKind::Delta).expect("Delta");
    let want = [t2(&[(2, Y3, Y3)]), t2(&[(1, Y3, Y4), (1, Y4, Y3)]), Tensor::zero(2), Tensor::zero(2)];
    for (y, w) in want.iter().enumerate() {
        g.tensor(&format!("Delta({})", ylabel(y)), &delta.co_basis(y), w, &ylabel);
    }
    let rhat = ybe::lift_solution(&r, 2, &b).expect("lift");
    g.tensor("rhat", &rhat, &t2(&[(1, Y1, Y4), (-1, Y2, Y3), (1, Y3, Y2), (-1, Y4, Y1)]), &ylabel);
    g.eq("rhat is skew-symmetric", &ybe::is_skew(&rhat), &true);
    if let Some(ind) = g.ok("induced algebra", induced(InduceKind::Assoc, &a, &b).and_then(|i| i.materialize())) {
        if let Some(res) = g.ok("AYBE", ybe::residual(YbeKind::Aybe, &ind, &rhat)) {
            g.tensor("AYBE residual of rhat", &res[0].1, &Tensor::zero(3), &ylabel);
        }
    }
    if let Some(rep) = g.ok("coincidence", ybe::triangular_coincidence(CoinKind::Assoc, &a, &b, &r, None)) {
        g.report("Delta equals the coboundary of rhat", &rep);
    }
    g.done()
}

/// Triangular pre-Poisson bialgebra of r and the Poisson bialgebra it induces.
pub fn prepbia_pbia() -> ExampleResult {
    prepbia_pbia_on(PREPOISSON_R)
}

fn prepbia_pbia_on(text: &str) -> ExampleResult {
    let mut g = Golden::new("prePbia-Pbia");
    let d = doc(text);
    let a = d.algebra(None).expect("pre-Poisson");
    let r = d.element("r").expect("r").clone();
    let b = QuadraticPermAlgebra::two_dim();
    if let Some(res) = g.ok("PPYBE", ybe::residual(YbeKind::Ppybe, &a, &r)) {
        for (k, t) in &res {
            g.tensor(&format!("{k} residual"), t, &Tensor::zero(3), &elabel);
        }
    }
    let Some(bi) = g.ok("triangular bialgebra", ybe::triangular_bialgebra(ybe::TriKind::PrePoisson, &a, &r)) else {
        return g.done();
    };
    let vt = bi.coalgebra.coproduct("vartheta");
    let th = bi.coalgebra.coproduct("theta");
    g.tensor("vartheta(e1)", vt.image(0), &t2(&[(1, 1, 1)]), &elabel);
    g.tensor("vartheta(e2)", vt.image(1), &Tensor::zero(2), &elabel);
    g.tensor("theta(e1)", th.image(0), &t2(&[(1, 0, 1), (1, 1, 0)]), &elabel);
    g.tensor("theta(e2)", th.image(1), &t2(&[(1, 1, 1)]), &elabel);
    let Some(co) = g.ok("induced coproducts", induced_co(&bi.coalgebra, &b)) else { return g.done() };
    let small = co.get(CoKind::SmallDelta).expect("delta");
    let want = [
        Tensor::zero(2),
        t2(&[(1, Y1, Y4), (1, Y3, Y2), (-1, Y4, Y1), (-1, Y2, Y3)]),
        Tensor::zero(2),
        t2(&[(1, Y3, Y4), (-1, Y4, Y3)]),
    ];
    for (y, w) in want.iter().enumerate() {
        g.tensor(&format!("delta({})", ylabel(y)), &small.co_basis(y), w, &ylabel);
    }
    let big = co.get(CoKind::Delta).expect("Delta");
    g.tensor("Delta(y1)", &big.co_basis(Y1), &t2(&[(2, Y3, Y3)]), &ylabel);
    let rhat = ybe::lift_solution(&r, 2, &b).expect("lift");
    if let Some(ind) = g.ok("induced algebra", induced(InduceKind::Poisson, &a, &b).and_then(|i| i.materialize())) {
        if let Some(res) = g.ok("PYBE", ybe::residual(YbeKind::Pybe, &ind, &rhat)) {
            for (k, t) in &res {
                g.tensor(&format!("{k} residual of rhat"), t, &Tensor::zero(3), &ylabel);
            }
        }
        if let Some(coal) = g.ok("materialize", co.materialize(ind.space.clone())) {
            if let Some(pb) = g.ok("bundle", BialgebraBundle::new(ind.clone(), coal, BialgebraKind::PoissonBi)) {
                g.report("Poisson bialgebra axioms", &verify_bialgebra(&pb));
            }
        }
    }
    if let Some(rep) = g.ok("coincidence", ybe::triangular_coincidence(CoinKind::Poisson, &a, &b, &r, None)) {
        g.report("Delta and delta equal the coboundaries of rhat", &rep);
    }
    g.done()
}

fn frobenius(name: &str, text: &str, qk: QfKind, ik: InduceKind, yk: YbeKind) -> ExampleResult {
    let mut g = Golden::new(name);
    let d = doc(text);
    let a = d.algebra(Some(qk.algebra_kind())).expect("algebra");
    let varpi = d.form("varpi").expect("form").clone();
    let b = QuadraticPermAlgebra::two_dim();
    let Some(qf) = g.ok("quasi-Frobenius", ybe::QuasiFrobenius::new(a.clone(), varpi.clone(), qk)) else {
        return g.done();
    };
    if let Some(rep) = g.ok("2-cocycle", ybe::qf_check(&qf)) {
        g.report("2-cocycle", &rep);
    }
    if let Some(dual) = g.ok("dual basis", varpi.dual_basis()) {
        g.eq("dual basis of e1, e2", &dual, &vec![t1(&[(1, 1)]), t1(&[(1, 0)])]);
    }
    let Some(r) = g.ok("r", ybe::qf_to_r(&qf)) else { return g.done() };
    g.tensor("r", &r, &t2(&[(1, 0, 1), (1, 1, 0)]), &elabel);
    let rhat = ybe::lift_solution(&r, 2, &b).expect("lift");
    g.eq("rhat is skew-symmetric", &ybe::is_skew(&rhat), &true);
    let Some(ind) = g.ok("induced algebra", induced(ik, &a, &b)) else { return g.done() };
    if let Some(m) = g.ok("materialize", ind.materialize()) {
        induced_tables(&mut g, &m);
        if let Some(res) = g.ok("lifted YBE", ybe::residual(yk, &m, &rhat)) {
            for (k, t) in &res {
                g.tensor(&format!("{k} residual of rhat"), t, &Tensor::zero(3), &ylabel);
            }
        }
    }
    let form = InducedForm::new(&varpi, &b);
    let mut want = [[q(0), q(0), q(0), q(0)], [q(0), q(0), q(0), q(0)], [q(0), q(0), q(0), q(0)], [q(0), q(0), q(0), q(0)]];
    want[Y4][Y1] = q(1);
    want[Y2][Y3] = q(1);
    want[Y1][Y4] = q(-1);
    want[Y3][Y2] = q(-1);
    for i in 0..4 {
        for j in 0..4 {
            g.eq(&format!("B({}, {})", ylabel(i), ylabel(j)), &form.eval(i, j), &want[i][j]);
        }
    }
    let mut cocycle = CheckReport::new();
    let (first, second) = ind.ops();
    let gk = if ik == InduceKind::Poisson { QfKind::Poisson } else { QfKind::Connes };
    let inputs: Vec<usize> = (0..4).collect();
    ybe::check_form_identities(gk, first, second, &form, &inputs, &mut cocycle);
    g.report("cocycle of B on A⊗B", &cocycle);
    g.done()
}

pub fn fz_fass() -> ExampleResult {
    frobenius("FZ-Fass", ZINBIEL_FORM, QfKind::Zinbiel, InduceKind::Assoc, YbeKind::Aybe)
}

pub fn fpp_fp() -> ExampleResult {
    frobenius("FPP-FP", PREPOISSON_FORM, QfKind::PrePoisson, InduceKind::Poisson, YbeKind::Pybe)
}

/// The document behind each example with fixed displayed values.
pub const GOLDEN_DOCUMENTS: &[(&str, &str)] = &[
    ("preP-P", PREPOISSON_2D),
    ("Zbia-Assbia", ZINBIEL_2D),
    ("prePbia-Pbia", PREPOISSON_R),
    ("FZ-Fass", ZINBIEL_FORM),
    ("FPP-FP", PREPOISSON_FORM),
];

/// Runs the golden checks of the named example against another document of
/// the same shape.
pub fn run_on(name: &str, text: &str) -> Option<ExampleResult> {
    Some(match name {
        "preP-P" => prep_p_on(text),
        "Zbia-Assbia" => zbia_assbia_on(text),
        "prePbia-Pbia" => prepbia_pbia_on(text),
        "FZ-Fass" => frobenius("FZ-Fass", text, QfKind::Zinbiel, InduceKind::Assoc, YbeKind::Aybe),
        "FPP-FP" => frobenius("FPP-FP", text, QfKind::PrePoisson, InduceKind::Poisson, YbeKind::Pybe),
        _ => return None,
    })
}

pub fn run_all() -> Vec<ExampleResult> {
    vec![bialia(), prep_p(), zbia_assbia(), prepbia_pbia(), fz_fass(), fpp_fp()]
}
