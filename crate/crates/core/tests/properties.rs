mod common;

use proptest::prelude::*;

use ppaff::affine::{grperm_window, induce_form, induce_product, InduceKind, Monomial, QuadraticPermAlgebra, WindowedGradedAlgebra};
use ppaff::algkit::{verify_structure, AlgebraKind, StructureConstants};
use ppaff::cli::{parse_document, serialize, Document};
use ppaff::exactlin::{BasisSpace, BilinearForm, Form, LinearMap, Rational, Symmetry, Tensor};
use ppaff::fixtures::prepoisson_family;

fn rat() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, d)| Rational::new(p.into(), d.into()))
}

fn mono(n: i64) -> impl Strategy<Value = Monomial> {
    (-n..=n, -n..=n, 1u8..=2).prop_map(|(a, b, s)| Monomial::new(a, b, s))
}

fn matrix(r: usize, c: usize) -> impl Strategy<Value = LinearMap> {
    prop::collection::vec(prop::collection::vec(rat(), c), r).prop_map(|rows| LinearMap::from_dense(&rows))
}

fn tensor2(n: usize) -> impl Strategy<Value = Tensor> {
    prop::collection::vec(rat(), n * n)
        .prop_map(move |cs| Tensor::from_terms(2, cs.into_iter().enumerate().map(|(k, c)| (vec![k / n, k % n], c))))
}

fn document() -> impl Strategy<Value = Document> {
    (1usize..=3).prop_flat_map(|n| {
        (
            prop::collection::vec(rat(), n * n * n),
            prop::collection::vec(rat(), n * n),
            tensor2(n),
            matrix(n, n),
        )
            .prop_map(move |(sc, fm, r, op)| {
                let mut doc = Document::new(BasisSpace::numbered("A", "e", n));
                let coeffs: Vec<_> = sc.into_iter().enumerate().map(|(k, c)| ((k / (n * n), (k / n) % n, k % n), c)).collect();
                doc.products.push(("zinbiel".into(), StructureConstants::from_coeffs(n, &coeffs).unwrap()));
                let rows: Vec<Vec<Rational>> = fm.chunks(n).map(<[Rational]>::to_vec).collect();
                doc.forms.push(("w".into(), BilinearForm::from_dense(&rows, Symmetry::General)));
                doc.elements.push(("r".into(), r));
                doc.operators.push(("T".into(), op));
                doc
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grading_is_additive(a in mono(3), b in mono(3)) {
        let w = grperm_window(3).unwrap();
        let p = WindowedGradedAlgebra::product_symbol(a, b);
        prop_assert_eq!(p.degree(), a.degree() + b.degree());
        if WindowedGradedAlgebra::omega_symbols(a, b) != 0 {
            prop_assert_eq!(a.degree() + b.degree() + w.grading_shift(), 0);
        }
    }

    #[test]
    fn nu_terms_shift_degree(m in mono(2)) {
        let w = grperm_window(2).unwrap();
        let x = w.index(m).unwrap();
        let nu = w.nu_coproduct();
        for (ij, _) in nu.image(x).terms() {
            prop_assert_eq!(w.degree(ij[0]) + w.degree(ij[1]), m.degree() - w.grading_shift());
        }
    }

    #[test]
    fn document_round_trip(doc in document()) {
        let back = parse_document(&serialize(&doc)).unwrap();
        prop_assert_eq!(back, doc);
    }

    #[test]
    fn flip_is_an_involution(t in tensor2(3)) {
        prop_assert_eq!(t.flip().unwrap().flip().unwrap(), t);
    }

    #[test]
    fn compose_is_associative(f in matrix(2, 3), g in matrix(3, 2), h in matrix(2, 2)) {
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
    }

    #[test]
    fn induced_form_is_antisymmetric(v in prop::collection::vec(rat(), 3)) {
        let mut varpi = BilinearForm::zero(2, Symmetry::Symmetric);
        varpi.set_sym(0, 0, v[0].clone());
        varpi.set_sym(0, 1, v[1].clone());
        varpi.set_sym(1, 1, v[2].clone());
        let b = QuadraticPermAlgebra::two_dim();
        let f = induce_form(&varpi, &b.omega);
        for i in 0..4 {
            for j in 0..4 {
                prop_assert_eq!(f.eval(i, j), -f.eval(j, i));
            }
        }
    }

    #[test]
    fn family_induces_poisson(a in rat(), b in rat(), c in rat()) {
        let alg = prepoisson_family(a, b, c);
        prop_assert!(common::satisfies(AlgebraKind::PrePoisson, &alg));
        let ind = induce_product(InduceKind::Poisson, &alg, &QuadraticPermAlgebra::two_dim()).unwrap();
        prop_assert!(verify_structure(&ind).passed);
        prop_assert!(common::satisfies(AlgebraKind::Poisson, &ind));
    }
}
