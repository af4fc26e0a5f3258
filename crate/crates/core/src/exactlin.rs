//! Exact rational scalars, sparse tensors of rank 1 to 3, linear maps and
//! bilinear forms.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s, None),
    };
    let n: BigInt = num.parse().ok()?;
    match den {
        None => Some(Rational::from_integer(n)),
        Some(d) => {
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() || d.is_negative() {
                return None;
            }
            Some(Rational::new(n, d))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisSpace {
    pub name: String,
    labels: Vec<String>,
}

impl BasisSpace {
    pub fn new(name: &str, labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Shape("a space needs at least one basis label".into()));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Shape(format!("duplicate basis label {l}")));
            }
        }
        Ok(BasisSpace { name: name.to_string(), labels })
    }

    /// Space with labels `{prefix}1 .. {prefix}n`.
    pub fn numbered(name: &str, prefix: &str, dim: usize) -> Self {
        let labels = (1..=dim).map(|i| format!("{prefix}{i}")).collect();
        BasisSpace::new(name, labels).expect("numbered labels are distinct")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Dual space; basis vectors are paired with the original ones positionally.
    pub fn dual(&self) -> BasisSpace {
        let labels = self.labels.iter().map(|l| format!("{l}*")).collect();
        BasisSpace { name: format!("{}*", self.name), labels }
    }
}

pub type Idx = [usize; 3];

/// Sparse tensor of rank 1, 2 or 3. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    rank: usize,
    coeffs: BTreeMap<Idx, Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    /// τ⊗id
    SwapFirst,
    /// id⊗τ
    SwapLast,
}

fn key(idx: &[usize]) -> Idx {
    let mut k = [0usize; 3];
    k[..idx.len()].copy_from_slice(idx);
    k
}

impl Tensor {
    pub fn zero(rank: usize) -> Self {
        assert!((1..=3).contains(&rank), "tensor rank must be 1, 2 or 3");
        Tensor { rank, coeffs: BTreeMap::new() }
    }

    pub fn basis(i: usize) -> Self {
        Self::pure(&[i], q(1))
    }

    pub fn pure(idx: &[usize], c: Rational) -> Self {
        let mut t = Tensor::zero(idx.len());
        t.add_term(idx, c);
        t
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (Vec<usize>, Rational)>) -> Self {
        let mut t = Tensor::zero(rank);
        for (idx, c) in terms {
            t.add_term(&idx, c);
        }
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, idx: &[usize], c: Rational) {
        assert_eq!(idx.len(), self.rank, "index length must equal rank");
        if c.is_zero() {
            return;
        }
        let k = key(idx);
        let slot = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn get(&self, idx: &[usize]) -> Rational {
        self.coeffs.get(&key(idx)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms as (index slice, coefficient), in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Rational)> {
        let r = self.rank;
        self.coeffs.iter().map(move |(k, c)| (&k[..r], c))
    }

    pub fn add_scaled(&mut self, other: &Tensor, c: &Rational) {
        assert_eq!(self.rank, other.rank, "rank mismatch in tensor sum");
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.coeffs {
            let idx = &k[..self.rank];
            self.add_term(idx, v * c);
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        let mut t = self.clone();
        t.add_scaled(other, &q(1));
        t
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        let mut t = self.clone();
        t.add_scaled(other, &q(-1));
        t
    }

    pub fn scale(&self, c: &Rational) -> Tensor {
        let mut t = Tensor::zero(self.rank);
        t.add_scaled(self, c);
        t
    }

    pub fn neg(&self) -> Tensor {
        self.scale(&q(-1))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.terms().flat_map(|(i, _)| i.iter().copied()).max()
    }

    /// τ on a rank-2 tensor.
    pub fn flip(&self) -> Result<Tensor> {
        if self.rank != 2 {
            return Err(Error::RankMismatch { expected: 2, got: self.rank });
        }
        Ok(self.map_indices(|i| vec![i[1], i[0]]))
    }

    pub fn permute3(&self, placement: Placement) -> Result<Tensor> {
        if self.rank != 3 {
            return Err(Error::RankMismatch { expected: 3, got: self.rank });
        }
        Ok(match placement {
            Placement::SwapFirst => self.map_indices(|i| vec![i[1], i[0], i[2]]),
            Placement::SwapLast => self.map_indices(|i| vec![i[0], i[2], i[1]]),
        })
    }

    /// Relabels every index tuple; coefficients of colliding tuples add up.
    pub fn map_indices(&self, f: impl Fn(&[usize]) -> Vec<usize>) -> Tensor {
        let mut out: Option<Tensor> = None;
        for (idx, c) in self.terms() {
            let n = f(idx);
            out.get_or_insert_with(|| Tensor::zero(n.len())).add_term(&n, c.clone());
        }
        out.unwrap_or_else(|| Tensor::zero(self.rank))
    }

    /// Keeps only the terms whose index tuple satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&[usize]) -> bool) -> Tensor {
        let mut t = Tensor::zero(self.rank);
        for (idx, c) in self.terms() {
            if keep(idx) {
                t.add_term(idx, c.clone());
            }
        }
        t
    }

    /// Tensor product of a rank-1 and any other tensor, or similar, if the total rank is ≤ 3.
    pub fn outer(&self, other: &Tensor) -> Tensor {
        let rank = self.rank + other.rank;
        assert!(rank <= 3, "outer product rank exceeds 3");
        let mut t = Tensor::zero(rank);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                let mut idx = a.to_vec();
                idx.extend_from_slice(b);
                t.add_term(&idx, ca * cb);
            }
        }
        t
    }

    pub fn fmt_with(&self, label: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (n, (idx, c)) in self.terms().enumerate() {
            let mono = idx.iter().map(|&i| label(i)).collect::<Vec<_>>().join("⊗");
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !a.is_one() {
                s.push_str(&format!("{a} "));
            }
            s.push_str(&mono);
        }
        s
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&|i| format!("e{}", i + 1)))
    }
}

/// Sparse matrix of a linear map; column j is the image of the j-th domain basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualVariant {
    Plain,
    Negated,
}

impl LinearMap {
    pub fn zero(rows: usize, cols: usize) -> Self {
        LinearMap { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, q(1));
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Builds the map sending basis vector j to `images[j]` (rank-1 tensors).
    pub fn from_columns(rows: usize, images: &[Tensor]) -> Self {
        let mut m = Self::zero(rows, images.len());
        for (j, img) in images.iter().enumerate() {
            for (i, c) in img.terms() {
                m.set(i[0], j, c.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn column(&self, j: usize) -> Tensor {
        let mut t = Tensor::zero(1);
        for (&(i, jj), v) in &self.entries {
            if jj == j {
                t.add_term(&[i], v.clone());
            }
        }
        t
    }

    pub fn apply(&self, v: &Tensor) -> Tensor {
        let mut out = Tensor::zero(1);
        for (idx, c) in v.terms() {
            out.add_scaled(&self.column(idx[0]), c);
        }
        out
    }

    /// self ∘ other
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.cols, other.rows, "composition shape mismatch");
        let mut m = LinearMap::zero(self.rows, other.cols);
        for (&(k, j), b) in &other.entries {
            for (&(i, kk), a) in &self.entries {
                if kk == k {
                    let cur = m.get(i, j);
                    m.set(i, j, cur + a * b);
                }
            }
        }
        m
    }

    pub fn transpose(&self) -> LinearMap {
        let mut m = LinearMap::zero(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            m.set(j, i, v.clone());
        }
        m
    }

    pub fn add(&self, other: &LinearMap) -> LinearMap {
        self.add_scaled(other, &q(1))
    }

    pub fn sub(&self, other: &LinearMap) -> LinearMap {
        self.add_scaled(other, &q(-1))
    }

    pub fn add_scaled(&self, other: &LinearMap, c: &Rational) -> LinearMap {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let mut m = self.clone();
        for (&(i, j), v) in &other.entries {
            let cur = m.get(i, j);
            m.set(i, j, cur + v * c);
        }
        m
    }

    pub fn scale(&self, c: &Rational) -> LinearMap {
        LinearMap::zero(self.rows, self.cols).add_scaled(self, c)
    }

    pub fn neg(&self) -> LinearMap {
        self.scale(&q(-1))
    }

    /// Kronecker product; domain index of (a, b) is a * other.cols + b.
    pub fn kron(&self, other: &LinearMap) -> LinearMap {
        let mut m = LinearMap::zero(self.rows * other.rows, self.cols * other.cols);
        for (&(i, j), a) in &self.entries {
            for (&(k, l), b) in &other.entries {
                m.set(i * other.rows + k, j * other.cols + l, a * b);
            }
        }
        m
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            d[i][j] = v.clone();
        }
        d
    }
}

/// Transpose (plain) or negated transpose (the μ* of a representation).
pub fn dual_map(f: &LinearMap, variant: DualVariant) -> LinearMap {
    match variant {
        DualVariant::Plain => f.transpose(),
        DualVariant::Negated => f.transpose().neg(),
    }
}

/// r♯: A* → A with ⟨ξ₂, r♯(ξ₁)⟩ = ⟨ξ₁⊗ξ₂, r⟩.
pub fn sharp(r: &Tensor, dim: usize) -> Result<LinearMap> {
    if r.rank() != 2 {
        return Err(Error::RankMismatch { expected: 2, got: r.rank() });
    }
    let mut m = LinearMap::zero(dim, dim);
    for (idx, c) in r.terms() {
        if idx[0] >= dim || idx[1] >= dim {
            return Err(Error::Shape(format!("index out of range for dimension {dim}")));
        }
        m.set(idx[1], idx[0], c.clone());
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
    General,
}

/// Anything that evaluates a bilinear form on basis pairs.
pub trait Form {
    fn dim(&self) -> usize;
    fn eval(&self, i: usize, j: usize) -> Rational;

    fn eval_vectors(&self, x: &Tensor, y: &Tensor) -> Rational {
        let mut s = Rational::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let v = self.eval(a[0], b[0]);
                if !v.is_zero() {
                    s += ca * cb * v;
                }
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    dim: usize,
    entries: BTreeMap<(usize, usize), Rational>,
    pub symmetry: Symmetry,
}

impl BilinearForm {
    pub fn zero(dim: usize, symmetry: Symmetry) -> Self {
        BilinearForm { dim, entries: BTreeMap::new(), symmetry }
    }

    pub fn from_dense(rows: &[Vec<Rational>], symmetry: Symmetry) -> Self {
        let mut f = Self::zero(rows.len(), symmetry);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                f.set(i, j, v.clone());
            }
        }
        f
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.dim && j < self.dim, "form index out of range");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    /// Sets (i, j) and the mirrored entry according to the declared symmetry.
    pub fn set_sym(&mut self, i: usize, j: usize, v: Rational) {
        match self.symmetry {
            Symmetry::Symmetric => self.set(j, i, v.clone()),
            Symmetry::Antisymmetric => self.set(j, i, -v.clone()),
            Symmetry::General => {}
        }
        self.set(i, j, v);
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.entries.iter()
    }

    pub fn scale(&self, c: &Rational) -> BilinearForm {
        let mut f = BilinearForm::zero(self.dim, self.symmetry);
        for (&(i, j), v) in &self.entries {
            f.set(i, j, v * c);
        }
        f
    }

    /// Checks the declared symmetry by scanning the matrix.
    pub fn verify_symmetry(&self) -> bool {
        let sign = match self.symmetry {
            Symmetry::Symmetric => q(1),
            Symmetry::Antisymmetric => q(-1),
            Symmetry::General => return true,
        };
        self.entries.iter().all(|(&(i, j), v)| self.eval(j, i) == v * &sign)
            && (0..self.dim).all(|i| self.symmetry != Symmetry::Antisymmetric || self.eval(i, i).is_zero())
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::zero(); self.dim]; self.dim];
        for (&(i, j), v) in &self.entries {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn rank(&self) -> usize {
        rank(&self.to_dense())
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank() == self.dim
    }

    /// Kronecker product: (a1⊗b1, a2⊗b2) ↦ self(a1,a2)·other(b1,b2).
    pub fn kron(&self, other: &BilinearForm) -> BilinearForm {
        let symmetry = match (self.symmetry, other.symmetry) {
            (Symmetry::Symmetric, Symmetry::Symmetric) | (Symmetry::Antisymmetric, Symmetry::Antisymmetric) => {
                Symmetry::Symmetric
            }
            (Symmetry::Symmetric, Symmetry::Antisymmetric) | (Symmetry::Antisymmetric, Symmetry::Symmetric) => {
                Symmetry::Antisymmetric
            }
            _ => Symmetry::General,
        };
        let mut f = BilinearForm::zero(self.dim * other.dim, symmetry);
        for (&(i, j), a) in &self.entries {
            for (&(k, l), b) in &other.entries {
                f.set(i * other.dim + k, j * other.dim + l, a * b);
            }
        }
        f
    }

    /// Vectors fᵢ with self(fᵢ, eⱼ) = δᵢⱼ.
    pub fn dual_basis(&self) -> Result<Vec<Tensor>> {
        let inv = inverse(&self.to_dense())
            .ok_or_else(|| Error::Degenerate("form matrix is singular".into()))?;
        // Σ_k c_ik M_kj = δ_ij, so C = M⁻¹.
        Ok(inv
            .iter()
            .map(|row| {
                let mut t = Tensor::zero(1);
                for (k, v) in row.iter().enumerate() {
                    t.add_term(&[k], v.clone());
                }
                t
            })
            .collect())
    }
}

impl Form for BilinearForm {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, i: usize, j: usize) -> Rational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }
}

/// ω̂: sum over coefficient pairs of the product of legwise form values.
pub fn pairing_multi(lhs: &Tensor, rhs: &Tensor, form: &dyn Form) -> Result<Rational> {
    if lhs.rank() != rhs.rank() {
        return Err(Error::RankMismatch { expected: lhs.rank(), got: rhs.rank() });
    }
    let mut s = Rational::zero();
    for (a, ca) in lhs.terms() {
        for (b, cb) in rhs.terms() {
            let mut p = ca * cb;
            for (x, y) in a.iter().zip(b) {
                p *= form.eval(*x, *y);
                if p.is_zero() {
                    break;
                }
            }
            s += p;
        }
    }
    Ok(s)
}

fn row_echelon(m: &mut [Vec<Rational>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for v in m[r].iter_mut() {
            *v /= &pivot;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pr = m[r].clone();
                for (v, w) in m[i].iter_mut().zip(pr.iter()) {
                    *v -= &f * w;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut a = m.to_vec();
    row_echelon(&mut a)
}

pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { q(1) } else { Rational::zero() }));
            r
        })
        .collect();
    // Eliminate only over the left block so the right block stays the inverse.
    let mut r = 0;
    for c in 0..n {
        let p = (r..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for v in a[r].iter_mut() {
            *v /= &pivot;
        }
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pr = a[r].clone();
                for (v, w) in a[i].iter_mut().zip(pr.iter()) {
                    *v -= &f * w;
                }
            }
        }
        r += 1;
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_parse() {
        assert_eq!(parse_rational("-3/6"), Some(qf(-1, 2)));
        assert_eq!(parse_rational(" 7 "), Some(q(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/-2"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational(""), None);
    }

    #[test]
    fn tensors_cancel_and_flip() {
        let mut t = Tensor::from_terms(2, [(vec![0, 1], q(2)), (vec![1, 0], q(-1))]);
        t.add_term(&[0, 1], q(-2));
        assert_eq!(t.len(), 1);
        assert_eq!(t.flip().unwrap(), Tensor::pure(&[0, 1], q(-1)));
        assert!(Tensor::basis(0).flip().is_err());
        let u = Tensor::pure(&[0, 1, 2], q(1));
        assert_eq!(u.permute3(Placement::SwapFirst).unwrap(), Tensor::pure(&[1, 0, 2], q(1)));
        assert_eq!(u.permute3(Placement::SwapLast).unwrap(), Tensor::pure(&[0, 2, 1], q(1)));
    }

    #[test]
    fn tensor_display() {
        let t = Tensor::from_terms(2, [(vec![0, 1], q(1)), (vec![1, 0], qf(-3, 2))]);
        assert_eq!(t.to_string(), "e1⊗e2 - 3/2 e2⊗e1");
        assert_eq!(Tensor::zero(2).to_string(), "0");
    }

    #[test]
    fn compose_applies_right_factor_first() {
        // f: e1 ↦ e2, g: e2 ↦ 3e1
        let mut f = LinearMap::zero(2, 2);
        f.set(1, 0, q(1));
        let mut g = LinearMap::zero(2, 2);
        g.set(0, 1, q(3));
        let gf = g.compose(&f);
        assert_eq!(gf.apply(&Tensor::basis(0)), Tensor::pure(&[0], q(3)));
        assert!(f.compose(&g).apply(&Tensor::basis(0)).is_zero());
    }

    #[test]
    fn negated_dual() {
        let f = LinearMap::from_dense(&[vec![q(1), q(2)], vec![q(0), q(3)]]);
        let d = dual_map(&f, DualVariant::Negated);
        assert_eq!(d.to_dense(), vec![vec![q(-1), q(0)], vec![q(-2), q(-3)]]);
        assert_eq!(dual_map(&f, DualVariant::Plain), f.transpose());
    }

    #[test]
    fn sharp_reads_second_leg() {
        // r = e1⊗e2: ⟨ξ₂, r♯(e1*)⟩ = ⟨e1*⊗ξ₂, r⟩ so r♯(e1*) = e2.
        let r = Tensor::pure(&[0, 1], q(5));
        let s = sharp(&r, 2).unwrap();
        assert_eq!(s.apply(&Tensor::basis(0)), Tensor::pure(&[1], q(5)));
        assert!(s.apply(&Tensor::basis(1)).is_zero());
        assert!(sharp(&r, 1).is_err());
    }

    #[test]
    fn dual_basis_of_hyperbolic_forms() {
        let mut w = BilinearForm::zero(2, Symmetry::Antisymmetric);
        w.set(1, 0, q(1));
        w.set(0, 1, q(-1));
        let f = w.dual_basis().unwrap();
        assert_eq!(f, vec![Tensor::pure(&[1], q(1)), Tensor::pure(&[0], q(-1))]);
        for (i, fi) in f.iter().enumerate() {
            for j in 0..2 {
                assert_eq!(w.eval_vectors(fi, &Tensor::basis(j)), q((i == j) as i64));
            }
        }
        assert!(BilinearForm::zero(2, Symmetry::General).dual_basis().is_err());
    }

    #[test]
    fn inverse_and_rank() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        assert_eq!(inverse(&m).unwrap(), vec![vec![q(1), q(-1)], vec![q(-1), q(2)]]);
        assert_eq!(rank(&[vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        assert!(inverse(&[vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
    }

    #[test]
    fn kron_form_symmetry() {
        let mut s = BilinearForm::zero(2, Symmetry::Symmetric);
        s.set_sym(0, 1, q(1));
        let mut w = BilinearForm::zero(2, Symmetry::Antisymmetric);
        w.set(0, 1, q(1));
        w.set(1, 0, q(-1));
        let k = s.kron(&w);
        assert_eq!(k.symmetry, Symmetry::Antisymmetric);
        assert!(k.verify_symmetry());
        // (e1⊗e1, e2⊗e2) ↦ s(e1, e2)·w(e1, e2)
        assert_eq!(k.eval(0, 3), q(1));
        assert_eq!(k.eval(3, 0), q(-1));
        assert_eq!(k.eval(1, 3), q(0));
    }

    #[test]
    fn multi_pairing() {
        let f = BilinearForm::from_dense(&[vec![q(1), q(0)], vec![q(0), q(2)]], Symmetry::Symmetric);
        let a = Tensor::pure(&[0, 1], q(3));
        let b = Tensor::from_terms(2, [(vec![0, 1], q(1)), (vec![1, 1], q(7))]);
        assert_eq!(pairing_multi(&a, &b, &f).unwrap(), q(6));
        assert!(pairing_multi(&a, &Tensor::basis(0), &f).is_err());
    }
}
