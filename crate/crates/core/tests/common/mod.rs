#![allow(dead_code)]

// Dense reference evaluator for the defining identities. Works on plain
// coefficient arrays so it shares no code with the checkers under test.

use num_rational::BigRational;
use num_traits::{One, Zero};

use ppaff::algkit::{AlgebraBundle, AlgebraKind};

pub type Q = BigRational;
pub type Table = Vec<Vec<Vec<Q>>>;

pub fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn dense(a: &AlgebraBundle, name: &str) -> Table {
    let n = a.dim();
    let mut t = vec![vec![vec![Q::zero(); n]; n]; n];
    let sc = a.product(name);
    for (i, row) in t.iter_mut().enumerate() {
        for (j, out) in row.iter_mut().enumerate() {
            for (k, c) in out.iter_mut().enumerate() {
                *c = sc.get(i, j, k);
            }
        }
    }
    t
}

pub type V = Vec<Q>;

pub fn e(n: usize, i: usize) -> V {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

pub fn mul(t: &Table, x: &V, y: &V) -> V {
    let n = x.len();
    let mut out = vec![Q::zero(); n];
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y[j].is_zero() {
                continue;
            }
            let c = &x[i] * &y[j];
            for k in 0..n {
                if !t[i][j][k].is_zero() {
                    out[k] += &c * &t[i][j][k];
                }
            }
        }
    }
    out
}

pub fn add(x: &V, y: &V) -> V {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub(x: &V, y: &V) -> V {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

fn zero(v: &V) -> bool {
    v.iter().all(Zero::is_zero)
}

/// True when the tables satisfy every identity of the kind on basis triples.
pub fn satisfies(kind: AlgebraKind, a: &AlgebraBundle) -> bool {
    let n = a.dim();
    let b = |i| e(n, i);
    let all3 = |f: &dyn Fn(&V, &V, &V) -> bool| {
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| f(&b(i), &b(j), &b(k)))))
    };
    match kind {
        AlgebraKind::CommAssoc => {
            let m = dense(a, "dot");
            all3(&|x, y, z| zero(&sub(&mul(&m, x, y), &mul(&m, y, x))) && zero(&sub(&mul(&m, &mul(&m, x, y), z), &mul(&m, x, &mul(&m, y, z)))))
        }
        AlgebraKind::Lie => {
            let m = dense(a, "bracket");
            all3(&|x, y, z| {
                let jac = add(&add(&mul(&m, x, &mul(&m, y, z)), &mul(&m, y, &mul(&m, z, x))), &mul(&m, z, &mul(&m, x, y)));
                zero(&add(&mul(&m, x, y), &mul(&m, y, x))) && zero(&jac)
            })
        }
        AlgebraKind::Perm => {
            let m = dense(a, "perm");
            all3(&|x, y, z| {
                let l = mul(&m, &mul(&m, x, y), z);
                zero(&sub(&l, &mul(&m, x, &mul(&m, y, z)))) && zero(&sub(&l, &mul(&m, y, &mul(&m, x, z))))
            })
        }
        AlgebraKind::Zinbiel => zinbiel(&dense(a, "zinbiel"), n),
        AlgebraKind::PreLie => prelie(&dense(a, "prelie"), n),
        AlgebraKind::Poisson => {
            let (d, br) = (dense(a, "dot"), dense(a, "bracket"));
            let parts_ok = {
                let sd = AlgebraBundle::new(a.space.clone(), AlgebraKind::CommAssoc, vec![("dot", a.product("dot").clone())]).unwrap();
                let sb = AlgebraBundle::new(a.space.clone(), AlgebraKind::Lie, vec![("bracket", a.product("bracket").clone())]).unwrap();
                satisfies(AlgebraKind::CommAssoc, &sd) && satisfies(AlgebraKind::Lie, &sb)
            };
            parts_ok
                && all3(&|x, y, z| {
                    let l = mul(&br, x, &mul(&d, y, z));
                    zero(&sub(&l, &add(&mul(&d, &mul(&br, x, y), z), &mul(&d, y, &mul(&br, x, z)))))
                })
        }
        AlgebraKind::PrePoisson => {
            let (z, p) = (dense(a, "zinbiel"), dense(a, "prelie"));
            zinbiel(&z, n)
                && prelie(&p, n)
                && all3(&|x, y, w| {
                    let c1 = sub(&mul(&z, &sub(&mul(&p, x, y), &mul(&p, y, x)), w), &sub(&mul(&p, x, &mul(&z, y, w)), &mul(&z, y, &mul(&p, x, w))));
                    let c2 = sub(&mul(&p, &add(&mul(&z, x, y), &mul(&z, y, x)), w), &add(&mul(&z, x, &mul(&p, y, w)), &mul(&z, y, &mul(&p, x, w))));
                    zero(&c1) && zero(&c2)
                })
        }
    }
}

fn basis3(n: usize, f: impl Fn(&V, &V, &V) -> bool) -> bool {
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| f(&e(n, i), &e(n, j), &e(n, k)))))
}

fn zinbiel(m: &Table, n: usize) -> bool {
    basis3(n, |x, y, z| {
        let l = mul(m, x, &mul(m, y, z));
        let r = add(&mul(m, &mul(m, x, y), z), &mul(m, &mul(m, y, x), z));
        zero(&sub(&l, &r))
    })
}

fn prelie(m: &Table, n: usize) -> bool {
    basis3(n, |x, y, z| {
        let a = sub(&mul(m, &mul(m, x, y), z), &mul(m, x, &mul(m, y, z)));
        let b = sub(&mul(m, &mul(m, y, x), z), &mul(m, y, &mul(m, x, z)));
        zero(&sub(&a, &b))
    })
}
