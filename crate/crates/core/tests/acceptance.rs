mod common;

use std::io::Write as _;

use ppaff::affine::{
    converse_probe, grperm_window, induced, induced_co, windowed_algebra_check, AdmissibleRegion, Candidate, InduceKind, Monomial,
    PairIndex, PermAlgebra, ProbeKind, QuadraticPermAlgebra,
};
use ppaff::algkit::{verify_structure, AlgebraBundle, AlgebraKind, Residual};
use ppaff::cli::{parse_document, run, serialize, validate_report, REPORT_SCHEMA};
use ppaff::coalgkit::{verify_bialgebra, BialgebraBundle, BialgebraKind};
use ppaff::examples::{self, GOLDEN_DOCUMENTS};
use ppaff::exactlin::{q, BasisSpace, Tensor};
use ppaff::fixtures::*;
use ppaff::ybe::{self, CoinKind, Harness, OKind, TriKind, YbeKind};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn prepoisson_fixtures() -> Vec<AlgebraBundle> {
    let mut v = vec![prepoisson_2d(), zero_algebra(AlgebraKind::PrePoisson, 2)];
    v.extend(family_samples().into_iter().map(|(a, b, c)| prepoisson_family(a, b, c)));
    v
}

fn finite_quadratic() -> Vec<QuadraticPermAlgebra> {
    let b = QuadraticPermAlgebra::two_dim();
    let bb = b.direct_sum(&b).unwrap();
    vec![b, bb]
}

fn finite_perm() -> Vec<PermAlgebra> {
    let mut v: Vec<PermAlgebra> = finite_quadratic().into_iter().map(|b| b.perm).collect();
    v.push(PermAlgebra::from_functional(BasisSpace::numbered("B", "x", 3), &[q(1), q(0), q(2)]).unwrap());
    v.push(PermAlgebra::from_functional(BasisSpace::numbered("B", "x", 1), &[q(1)]).unwrap());
    v
}

/// (kind, algebra, symmetric solutions) for the triangular constructions.
fn symmetric_solutions() -> Vec<(TriKind, AlgebraBundle, Vec<Tensor>)> {
    vec![
        (TriKind::Zinbiel, zinbiel_2d(), vec![sym(0, 1), sym(1, 1)]),
        (TriKind::Zinbiel, zinbiel_3d(), vec![sym(1, 1), sym(1, 2), sym(2, 2)]),
        (TriKind::PreLie, prelie_2d(), vec![sym(0, 0), sym(0, 1), sym(1, 1)]),
        (TriKind::PreLie, prelie_affine(), vec![sym(1, 1)]),
        (TriKind::PrePoisson, prepoisson_2d(), vec![sym(0, 1), sym(1, 1)]),
    ]
}

fn criterion_1() -> Outcome {
    for r in examples::run_all() {
        ensure(r.passed(), || format!("{}: {:?}", r.name, r.failures))?;
        ensure(r.checked > 0, || format!("{} checked nothing", r.name))?;
    }
    // The induced Poisson products on y1..y4, listed in full.
    let a = prepoisson_2d();
    let ind = induced(InduceKind::Poisson, &a, &QuadraticPermAlgebra::two_dim()).unwrap().materialize().unwrap();
    let y = |i: usize, c: i64| Tensor::pure(&[i], q(c));
    let mut dot = vec![];
    let mut br = vec![];
    for i in 0..4 {
        for j in 0..4 {
            let d = ind.product("dot").basis_product(i, j);
            if !d.is_zero() {
                dot.push((i, j, d.clone()));
            }
            let b = ind.product("bracket").basis_product(i, j);
            if !b.is_zero() && i < j {
                br.push((i, j, b.clone()));
            }
        }
    }
    let want_dot = vec![(0, 1, y(2, 1)), (1, 0, y(2, 1)), (1, 1, y(3, 2))];
    let want_br = vec![(0, 1, y(0, -1)), (0, 3, y(2, -1)), (1, 2, y(2, 1))];
    ensure(dot == want_dot, || format!("dot table {dot:?}"))?;
    ensure(br == want_br, || format!("bracket table {br:?}"))
}

fn criterion_2() -> Outcome {
    for a in prepoisson_fixtures() {
        for b in finite_perm() {
            let ind = induced(InduceKind::Poisson, &a, &b).unwrap().materialize().unwrap();
            let rep = verify_structure(&ind);
            ensure(rep.passed, || format!("induced Poisson over {}-dim perm: {:?}", b.bundle.dim(), rep.violations.first()))?;
            ensure(common::satisfies(AlgebraKind::Poisson, &ind), || "oracle rejects an induced Poisson algebra".into())?;
        }
    }
    for r in [sym(0, 1), sym(1, 1)] {
        let bi = ybe::triangular_bialgebra(TriKind::PrePoisson, &prepoisson_2d(), &r).unwrap();
        ensure(verify_bialgebra(&bi).passed, || "pre-Poisson bialgebra fixture".into())?;
        for b in finite_quadratic() {
            let alg = induced(InduceKind::Poisson, &bi.algebra, &b).unwrap().materialize().unwrap();
            let co = induced_co(&bi.coalgebra, &b).unwrap().materialize(alg.space.clone()).unwrap();
            let pb = BialgebraBundle::new(alg, co, BialgebraKind::PoissonBi).unwrap();
            let rep = verify_bialgebra(&pb);
            ensure(rep.passed, || format!("induced Poisson bialgebra: {:?}", rep.violations.first()))?;
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let w = grperm_window(3).unwrap();
    let fx = [zinbiel_2d(), zinbiel_3d(), prelie_2d(), prelie_affine(), prepoisson_2d()];
    for a in &fx {
        let ind = induced(InduceKind::for_input(a.kind).unwrap(), a, &w).unwrap();
        for margin in [2, 3] {
            let region = AdmissibleRegion::new(3, margin).unwrap();
            let rep = windowed_algebra_check(&ind, &region).unwrap();
            ensure(rep.passed, || format!("{} margin {margin}: {:?}", a.kind, rep.violations.first()))?;
            ensure(rep.skipped > 0, || format!("{} margin {margin}: no skips", a.kind))?;
        }
    }
    Ok(())
}

fn located_at(rep: &ppaff::algkit::CheckReport, a_dim: usize, w: &ppaff::affine::WindowedGradedAlgebra, m: Monomial) -> bool {
    let ix = PairIndex::new(a_dim, w);
    rep.violations.iter().any(|v| match &v.residual {
        Residual::Tensor(t) => t.terms().any(|(k, _)| w.monomial(ix.split(k[0]).1) == m),
        _ => false,
    })
}

fn criterion_4() -> Outcome {
    let w = grperm_window(3).unwrap();
    let x1sq_d2 = Monomial::new(2, 0, 2);

    let p = converse_probe(ProbeKind::Zinbiel, &Candidate::Algebra(broken_zinbiel()), 3).unwrap();
    ensure(!p.direct.passed && !p.windowed.passed, || "broken Zinbiel candidate not rejected twice".into())?;
    ensure(located_at(&p.windowed, 2, &w, x1sq_d2), || "no windowed failure in the x1^2 d2 coefficient".into())?;
    // The instance extracted by comparing x1^2 d2 on ((e1⊗d1)(e1⊗d1))(e1⊗d2).
    let ix = PairIndex::new(2, &w);
    let (d1, d2) = (ix.join(0, w.idx(0, 0, 1)), ix.join(0, w.idx(0, 0, 2)));
    let at = p.windowed.violations.iter().any(|v| v.identity == "associativity" && v.indices == [d1, d1, d2]);
    ensure(at, || "associativity not violated at (e1⊗d1, e1⊗d1, e1⊗d2)".into())?;

    let p = converse_probe(ProbeKind::PreLie, &Candidate::Algebra(broken_prelie()), 3).unwrap();
    ensure(!p.direct.passed && !p.windowed.passed, || "broken pre-Lie candidate not rejected twice".into())?;
    ensure(p.windowed.violations.iter().all(|v| !v.indices.is_empty()), || "unlocated pre-Lie failure".into())?;

    for (kind, a) in [(ProbeKind::Connes, zinbiel_2d()), (ProbeKind::Qf, prepoisson_2d())] {
        let p = converse_probe(kind, &Candidate::Form(a.clone(), identity_form(2)), 3).unwrap();
        ensure(!p.direct.passed && !p.windowed.passed, || format!("{kind:?}: non-cocycle form not rejected twice"))?;
        let p = converse_probe(kind, &Candidate::Form(a, form_12()), 3).unwrap();
        ensure(p.direct.passed && p.windowed.passed, || format!("{kind:?}: cocycle form rejected"))?;
    }
    for a in [zinbiel_2d(), prelie_2d(), prepoisson_2d()] {
        let kind = match a.kind {
            AlgebraKind::Zinbiel => ProbeKind::Zinbiel,
            AlgebraKind::PreLie => ProbeKind::PreLie,
            _ => ProbeKind::PrePoisson,
        };
        let p = converse_probe(kind, &Candidate::Algebra(a), 3).unwrap();
        ensure(p.direct.passed && p.windowed.passed, || format!("{kind:?}: valid candidate rejected"))?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let w = grperm_window(3).unwrap();
    let region = AdmissibleRegion::new(3, 2).unwrap();
    let b = QuadraticPermAlgebra::two_dim();
    for (tri, a, sols) in symmetric_solutions() {
        let (ik, lifted, coin) = match tri {
            TriKind::Zinbiel => (InduceKind::Assoc, YbeKind::Aybe, CoinKind::Assoc),
            TriKind::PreLie => (InduceKind::Lie, YbeKind::Cybe, CoinKind::Lie),
            _ => (InduceKind::Poisson, YbeKind::Pybe, CoinKind::Poisson),
        };
        let own = match tri {
            TriKind::Zinbiel => YbeKind::Zybe,
            TriKind::PreLie => YbeKind::Plybe,
            _ => YbeKind::Ppybe,
        };
        for r in sols {
            ensure(ybe::residual_is_zero(&ybe::residual(own, &a, &r).unwrap()), || format!("{r} does not solve {own:?}"))?;
            let fin = induced(ik, &a, &b).unwrap().materialize().unwrap();
            let rhat = ybe::lift_solution(&r, a.dim(), &b).unwrap();
            ensure(ybe::is_skew(&rhat), || "finite lift is not skew".into())?;
            ensure(ybe::residual_is_zero(&ybe::residual(lifted, &fin, &rhat).unwrap()), || format!("{} lifted residual", a.kind))?;
            let rep = ybe::triangular_coincidence(coin, &a, &b, &r, None).unwrap();
            ensure(rep.passed, || format!("{} finite coincidence: {:?}", a.kind, rep.violations.first()))?;

            let ind = induced(ik, &a, &w).unwrap();
            let rhat = ybe::lift_solution(&r, a.dim(), &w).unwrap();
            ensure(ybe::is_skew(&rhat), || "windowed lift is not skew".into())?;
            let (parts, _) = ybe::windowed_residual(lifted, &ind, &rhat, &region, &w).unwrap();
            ensure(parts.iter().all(|(_, t)| t.is_zero()), || format!("{} windowed lifted residual", a.kind))?;
            let rep = ybe::triangular_coincidence(coin, &a, &w, &r, Some(&region)).unwrap();
            ensure(rep.passed, || format!("{} windowed coincidence: {:?}", a.kind, rep.violations.first()))?;
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    // (kind, algebra, element, solves)
    let cases = [
        (OKind::Assoc, comm_assoc_3d(), wedge(1, 2), true),
        (OKind::Assoc, comm_assoc_3d(), wedge(0, 1), false),
        (OKind::Lie, heisenberg(), wedge(0, 2), true),
        (OKind::Lie, heisenberg(), wedge(0, 1), false),
        (OKind::Zinbiel, zinbiel_2d(), sym(0, 1), true),
        (OKind::Zinbiel, zinbiel_2d(), sym(0, 0), false),
        (OKind::PreLie, prelie_affine(), sym(1, 1), true),
        (OKind::PreLie, prelie_affine(), sym(0, 1), false),
        (OKind::Poisson, poisson_3d(), wedge(1, 2), true),
        (OKind::Poisson, poisson_3d(), wedge(0, 1), false),
        (OKind::PrePoisson, prepoisson_2d(), sym(0, 1), true),
        (OKind::PrePoisson, prepoisson_2d(), sym(0, 0), false),
    ];
    for (k, a, r, solves) in cases {
        let rep = ybe::o_operator_equiv(k, &a, &r).unwrap();
        ensure(rep.passed, || format!("{k:?}: residual and O-operator disagree on {r}"))?;
        let got: Vec<bool> = rep.notes.iter().map(|(_, b)| *b).collect();
        ensure(got == [solves, solves], || format!("{k:?} on {r}: {:?}", rep.notes))?;
    }
    let b = QuadraticPermAlgebra::two_dim();
    for r in [r_12(), sym(1, 1), wedge(0, 1), Tensor::pure(&[0, 1], q(3))] {
        ensure(ybe::factorization_check(&r, 2, &b).unwrap().passed, || format!("factorization of {r}"))?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    for (h, a) in [(Harness::QuasiAss, zinbiel_2d()), (Harness::QuasiP, prepoisson_2d())] {
        let good = ybe::equivalence_harness(h, &a, &form_12(), 3).unwrap();
        ensure(good.agree() && good.all_pass(), || format!("{h:?} all-pass fixture: {:?}", good.summary().notes))?;
        let bad = ybe::equivalence_harness(h, &a, &identity_form(2), 3).unwrap();
        let none = bad.conditions.iter().all(|(_, r)| !r.passed);
        ensure(bad.agree() && none, || format!("{h:?} all-fail fixture: {:?}", bad.summary().notes))?;
    }
    Ok(())
}

/// Every +1 perturbation must be flagged, unless the reference evaluator
/// confirms the mutant is itself a valid structure.
fn criterion_8() -> Outcome {
    let fx = [
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
    ];
    let mut flagged = 0;
    for a in fx {
        ensure(verify_structure(&a).passed, || format!("{} fixture fails", a.kind))?;
        let n = a.dim();
        let names: Vec<String> = a.products().map(|(k, _)| k.to_string()).collect();
        for name in &names {
            for (i, j, k) in (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))) {
                let mut m = a.clone();
                m.product_mut(name).unwrap().add(i, j, k, q(1));
                let rep = verify_structure(&m);
                if rep.passed {
                    ensure(common::satisfies(a.kind, &m), || format!("{} {name}[{i},{j},{k}]+1 escaped", a.kind))?;
                } else {
                    ensure(rep.violations.iter().all(|v| !v.indices.is_empty()), || "unlocated violation".into())?;
                    ensure(!common::satisfies(a.kind, &m), || format!("{} {name}[{i},{j},{k}]+1 flagged but valid", a.kind))?;
                    flagged += 1;
                }
            }
        }
    }
    ensure(flagged > 0, || "no mutant flagged".into())?;
    // Golden values pin the example structures exactly.
    for (name, text) in GOLDEN_DOCUMENTS {
        let doc = parse_document(text).unwrap();
        let n = doc.space.dim();
        for p in 0..doc.products.len() {
            for (i, j, k) in (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))) {
                let mut m = doc.clone();
                m.products[p].1.add(i, j, k, q(1));
                let alg_ok = m.algebra(None).map(|a| verify_structure(&a).passed).unwrap_or(false);
                let golden = examples::run_on(name, &serialize(&m)).unwrap();
                ensure(!alg_ok || !golden.passed(), || format!("{name}: {}[{i},{j},{k}]+1 escaped", m.products[p].0))?;
            }
        }
    }
    Ok(())
}

fn cli(args: &[&str]) -> ppaff::cli::Outcome {
    run(std::iter::once("ppaff").chain(args.iter().copied()))
}

fn criterion_9() -> Outcome {
    let out = cli(&["examples"]);
    ensure(out.code == 0, || format!("examples exit {}: {}", out.code, out.stdout))?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::File::create(&p).unwrap().write_all(text.as_bytes()).unwrap();
        p.to_string_lossy().into_owned()
    };
    let good = write("zinbiel2.alg", examples::ZINBIEL_2D);
    let broken = write("broken.alg", "[space]\ndim=2\nbasis= e1 e2\n[product zinbiel]\ne1 e1 -> 1 e1\n");
    let bad_inputs = [
        "[space]\ndim=2\nbasis= e1 e2\n[product zinbiel]\ne1 e3 -> 1 e2\n",
        "[space]\ndim=2\nbasis= e1 e2\n[product zinbiel]\ne1 e1 -> x e2\n",
        "[space]\ndim=2\nbasis= e1 e2\n[product zinbiel]\ne1 e1 -> 1 e2\ne1 e1 -> 1 e1\n",
        "[product zinbiel]\ne1 e1 -> 1 e2\n",
        "[space]\ndim=2\n[bogus]\n",
    ];
    for (n, text) in bad_inputs.iter().enumerate() {
        let p = write(&format!("bad{n}.alg"), text);
        let out = cli(&["check", "zinbiel", &p]);
        ensure(out.code == 2, || format!("parse error {n} exits {}", out.code))?;
        ensure(out.stderr.contains("line") || n == 3, || format!("parse error {n} without a line: {}", out.stderr))?;
    }
    let usage = [vec!["check", "nosuchkind", good.as_str()], vec!["frobnicate"], vec!["ybe", "ZYBE", "/nonexistent/file"]];
    for args in &usage {
        let out = cli(args);
        ensure(out.code == 2, || format!("{args:?} exits {}", out.code))?;
    }

    let out = cli(&["check", "zinbiel", &good]);
    ensure(out.code == 0, || format!("check zinbiel exits {}", out.code))?;
    let out = cli(&["ybe", "ZYBE", &good, "--element", "bad_r"]);
    ensure(out.code == 1, || format!("bad_r exits {}", out.code))?;
    ensure(out.stdout.contains("ZYBE"), || format!("residual not printed: {}", out.stdout))?;
    let failing = [
        vec!["check", "zinbiel", broken.as_str()],
        vec!["qf", "zinbiel", write("id.alg", &format!("{}[form id symmetric]\ne1 e1 -> 1\ne2 e2 -> 1\n", examples::ZINBIEL_2D)).leak(), "--form", "id"],
    ];
    for args in &failing {
        let out = cli(args);
        ensure(out.code == 1, || format!("{args:?} exits {}: {}{}", out.code, out.stdout, out.stderr))?;
    }

    let schema: serde_json::Value = serde_json::from_str(REPORT_SCHEMA).map_err(|e| e.to_string())?;
    let validator = jsonschema::validator_for(&schema).map_err(|e| e.to_string())?;
    let form_doc = write("fz.alg", examples::ZINBIEL_FORM);
    let json_runs = [
        vec!["--format", "json", "examples"],
        vec!["--format", "json", "check", "zinbiel", good.as_str()],
        vec!["--format", "json", "check", "zinbiel", broken.as_str()],
        vec!["--format", "json", "ybe", "ZYBE", good.as_str(), "--element", "bad_r"],
        vec!["--format", "json", "qf", "zinbiel", form_doc.as_str(), "--form", "varpi"],
        vec!["--format", "json", "--window", "3", "induce", good.as_str()],
    ];
    for args in &json_runs {
        let out = cli(args);
        ensure(out.code <= 1, || format!("{args:?} exits {}: {}", out.code, out.stderr))?;
        let v: serde_json::Value = serde_json::from_str(&out.stdout).map_err(|e| format!("{args:?}: {e}"))?;
        ensure(validator.is_valid(&v), || format!("{args:?}: schema rejects {v}"))?;
        validate_report(&v).map_err(|e| format!("{args:?}: {e}"))?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(usize, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    let results: Vec<(usize, Outcome)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(n, f)| (n, s.spawn(move || std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into())))))
            .collect();
        handles.into_iter().map(|(n, h)| (n, h.join().unwrap())).collect()
    });
    // Written to the raw handle so the lines show without --nocapture.
    let mut out = std::io::stdout().lock();
    let mut failed = vec![];
    for (n, r) in &results {
        let _ = match r {
            Ok(()) => writeln!(out, "criterion {n}: pass"),
            Err(e) => {
                failed.push(*n);
                writeln!(out, "criterion {n}: FAIL ({e})")
            }
        };
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
