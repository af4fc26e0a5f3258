//! Small named algebras used by the examples verb and the test suites.

use crate::algkit::{AlgebraBundle, AlgebraKind, StructureConstants};
use crate::exactlin::{q, BasisSpace, BilinearForm, Rational, Symmetry, Tensor};

fn table(dim: usize, entries: &[(usize, usize, usize, i64)]) -> StructureConstants {
    let coeffs: Vec<_> = entries.iter().map(|&(i, j, k, c)| ((i, j, k), q(c))).collect();
    StructureConstants::from_coeffs(dim, &coeffs).expect("fixture indices in range")
}

fn space(dim: usize) -> BasisSpace {
    BasisSpace::numbered("A", "e", dim)
}

fn bundle(dim: usize, kind: AlgebraKind, products: Vec<(&str, StructureConstants)>) -> AlgebraBundle {
    AlgebraBundle::new(space(dim), kind, products).expect("fixture is well formed")
}

/// e1∗e1 = e2.
pub fn zinbiel_2d() -> AlgebraBundle {
    bundle(2, AlgebraKind::Zinbiel, vec![("zinbiel", table(2, &[(0, 0, 1, 1)]))])
}

/// e1∗e1 = e2, e1∗e2 = 2e3, e2∗e1 = e3 (the free Zinbiel algebra on one
/// generator, truncated).
pub fn zinbiel_3d() -> AlgebraBundle {
    bundle(3, AlgebraKind::Zinbiel, vec![("zinbiel", table(3, &[(0, 0, 1, 1), (0, 1, 2, 2), (1, 0, 2, 1)]))])
}

/// e1∘e1 = e1, e1∘e2 = e2∘e1 = e2.
pub fn prelie_2d() -> AlgebraBundle {
    bundle(2, AlgebraKind::PreLie, vec![("prelie", prelie_table())])
}

/// e1∘e2 = e2 (the affine line).
pub fn prelie_affine() -> AlgebraBundle {
    bundle(2, AlgebraKind::PreLie, vec![("prelie", table(2, &[(0, 1, 1, 1)]))])
}

fn prelie_table() -> StructureConstants {
    table(2, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)])
}

/// e1∗e1 = e2 with e1∘e1 = e1, e1∘e2 = e2∘e1 = e2.
pub fn prepoisson_2d() -> AlgebraBundle {
    bundle(
        2,
        AlgebraKind::PrePoisson,
        vec![("zinbiel", table(2, &[(0, 0, 1, 1)])), ("prelie", prelie_table())],
    )
}

/// e1∗e1 = a e2, e1∘e1 = b e1 + c e2, e1∘e2 = e2∘e1 = b e2.
pub fn prepoisson_family(a: Rational, b: Rational, c: Rational) -> AlgebraBundle {
    let z = StructureConstants::from_coeffs(2, &[((0, 0, 1), a)]).expect("in range");
    let p = StructureConstants::from_coeffs(2, &[((0, 0, 0), b.clone()), ((0, 0, 1), c), ((0, 1, 1), b.clone()), ((1, 0, 1), b)])
        .expect("in range");
    bundle(2, AlgebraKind::PrePoisson, vec![("zinbiel", z), ("prelie", p)])
}

/// Twenty deterministic rational parameter triples for the family above.
pub fn family_samples() -> Vec<(Rational, Rational, Rational)> {
    let vals = [0i64, 1, -1, 2, -3, 5, 7, -2];
    (0..20)
        .map(|k| {
            let a = Rational::new(vals[k % 8].into(), ((k % 3) as i64 + 1).into());
            let b = Rational::new(vals[(k * 3 + 1) % 8].into(), ((k % 4) as i64 + 1).into());
            let c = Rational::new(vals[(k * 5 + 2) % 8].into(), ((k % 5) as i64 + 2).into());
            (a, b, c)
        })
        .collect()
}

pub fn zero_algebra(kind: AlgebraKind, dim: usize) -> AlgebraBundle {
    let products = kind.product_names().iter().map(|n| (*n, StructureConstants::zero(dim))).collect();
    bundle(dim, kind, products)
}

/// e1·e1 = e2 (sub-adjacent of the Zinbiel fixture up to scale).
pub fn comm_assoc_2d() -> AlgebraBundle {
    bundle(2, AlgebraKind::CommAssoc, vec![("dot", table(2, &[(0, 0, 1, 1)]))])
}

/// e1·e1 = e2, e1·e2 = e2·e1 = e3.
pub fn comm_assoc_3d() -> AlgebraBundle {
    bundle(3, AlgebraKind::CommAssoc, vec![("dot", table(3, &[(0, 0, 1, 1), (0, 1, 2, 1), (1, 0, 2, 1)]))])
}

/// [e1, e2] = e3.
pub fn heisenberg() -> AlgebraBundle {
    bundle(3, AlgebraKind::Lie, vec![("bracket", table(3, &[(0, 1, 2, 1), (1, 0, 2, -1)]))])
}

/// [e1, e2] = e2, [e1, e3] = −e3.
pub fn lie_3d() -> AlgebraBundle {
    bundle(3, AlgebraKind::Lie, vec![("bracket", table(3, &[(0, 1, 1, 1), (1, 0, 1, -1), (0, 2, 2, -1), (2, 0, 2, 1)]))])
}

/// e1·e1 = e2 and [e1, e3] = e2.
pub fn poisson_3d() -> AlgebraBundle {
    bundle(
        3,
        AlgebraKind::Poisson,
        vec![("dot", table(3, &[(0, 0, 1, 1)])), ("bracket", table(3, &[(0, 2, 1, 1), (2, 0, 1, -1)]))],
    )
}

/// e1∗e1 = e1, which is not Zinbiel.
pub fn broken_zinbiel() -> AlgebraBundle {
    bundle(2, AlgebraKind::Zinbiel, vec![("zinbiel", table(2, &[(0, 0, 0, 1)]))])
}

/// e1∘e2 = e1, e2∘e1 = e2; the associator is not left-symmetric.
pub fn broken_prelie() -> AlgebraBundle {
    bundle(2, AlgebraKind::PreLie, vec![("prelie", table(2, &[(0, 1, 0, 1), (1, 1, 0, 1)]))])
}

/// ϖ(e1, e2) = 1, symmetric.
pub fn form_12() -> BilinearForm {
    let mut f = BilinearForm::zero(2, Symmetry::Symmetric);
    f.set_sym(0, 1, q(1));
    f
}

pub fn identity_form(dim: usize) -> BilinearForm {
    let mut f = BilinearForm::zero(dim, Symmetry::Symmetric);
    for i in 0..dim {
        f.set(i, i, q(1));
    }
    f
}

/// e1⊗e2 + e2⊗e1.
pub fn r_12() -> Tensor {
    Tensor::from_terms(2, [(vec![0, 1], q(1)), (vec![1, 0], q(1))])
}

/// x⊗y − y⊗x on basis indices.
pub fn wedge(x: usize, y: usize) -> Tensor {
    Tensor::from_terms(2, [(vec![x, y], q(1)), (vec![y, x], q(-1))])
}

/// x⊗y + y⊗x on basis indices (2 x⊗x when equal).
pub fn sym(x: usize, y: usize) -> Tensor {
    Tensor::from_terms(2, [(vec![x, y], q(1)), (vec![y, x], q(1))])
}
