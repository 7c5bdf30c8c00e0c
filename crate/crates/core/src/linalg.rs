//! Dense rational matrices, fraction-free rank, and subspaces in reduced row-echelon form.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::{rat, KVector, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatrixQ::zeros(n, n);
        for i in 0..n {
            m.set(i, i, rat(1));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::Shape {
                rows: rows.len(),
                cols: bad.len(),
                expected: format!("{cols} columns in every row"),
            });
        }
        let nrows = rows.len();
        Ok(MatrixQ { rows: nrows, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        MatrixQ::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = MatrixQ::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn is_skew(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..self.cols).all(|c| *self.get(r, c) == -self.get(c, r).clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &MatrixQ) -> Result<MatrixQ> {
        if self.cols != other.rows {
            return Err(Error::Shape {
                rows: other.rows,
                cols: other.cols,
                expected: format!("{} rows", self.cols),
            });
        }
        let mut out = MatrixQ::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> MatrixQ {
        MatrixQ { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &MatrixQ) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> MatrixQ {
        let mut out = MatrixQ::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        out
    }

    /// Row-major `"p/q"` strings.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|x| x.to_string()).collect()).collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| crate::exterior::parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        MatrixQ::from_rows(parsed)
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<MatrixQ> {
        if self.rows != self.cols {
            return Err(Error::Shape { rows: self.rows, cols: self.cols, expected: "square".into() });
        }
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut inv = MatrixQ::identity(n).row_vecs();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(p, col);
            inv.swap(p, col);
            let pivot = a[col][col].recip();
            for j in 0..n {
                a[col][j] = &a[col][j] * &pivot;
                inv[col][j] = &inv[col][j] * &pivot;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let x = &a[r][j] - &f * &a[col][j];
                    a[r][j] = x;
                    let y = &inv[r][j] - &f * &inv[col][j];
                    inv[r][j] = y;
                }
            }
        }
        MatrixQ::from_rows(inv)
    }

    /// Exact determinant; errors on non-square input.
    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::Shape { rows: self.rows, cols: self.cols, expected: "square".into() });
        }
        let (scale, mut m) = self.integer_rows();
        let n = self.rows;
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != k {
                m.swap(p, k);
                sign = -sign;
            }
            bareiss_step(&mut m, k, k, &prev);
            prev = m[k][k].clone();
        }
        let det = if n == 0 { BigInt::one() } else { m[n - 1][n - 1].clone() };
        Ok(Rational::new(sign * det, scale))
    }

    /// Rows scaled to integers; returns the product of the scale factors and the integer rows.
    fn integer_rows(&self) -> (BigInt, Vec<Vec<BigInt>>) {
        let mut total = BigInt::one();
        let rows = (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                total *= &l;
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect();
        (total, rows)
    }
}

/// One fraction-free elimination step below pivot `(k, col)`; `prev` is the previous pivot.
fn bareiss_step(m: &mut [Vec<BigInt>], k: usize, col: usize, prev: &BigInt) {
    let (head, tail) = m.split_at_mut(k + 1);
    let pivot_row = &head[k];
    let pivot = &pivot_row[col];
    for row in tail.iter_mut() {
        let factor = row[col].clone();
        for j in col..row.len() {
            let v = (pivot * &row[j] - &factor * &pivot_row[j]) / prev;
            row[j] = v;
        }
    }
}

/// Exact rank by fraction-free (Bareiss) elimination.
pub fn rank_exact(m: &MatrixQ) -> usize {
    let (_, mut rows) = m.integer_rows();
    let ncols = m.cols;
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(p, rank);
        bareiss_step(&mut rows, rank, col, &prev);
        prev = rows[rank][col].clone();
        rank += 1;
    }
    rank
}

impl fmt::Display for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Sparse vector: `(coordinate, value)` pairs sorted by coordinate, no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

fn sparse_from_dense(v: &[Rational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// `a + s·b`.
fn sparse_axpy(a: &SparseVec, s: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ia = a.get(i).map(|x| x.0);
        let jb = b.get(j).map(|x| x.0);
        match (ia, jb) {
            (Some(x), Some(y)) if x == y => {
                let v = &a[i].1 + s * &b[j].1;
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(a[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(a[i].clone());
                i += 1;
            }
            _ => {
                out.push((b[j].0, s * &b[j].1));
                j += 1;
            }
        }
    }
    out
}

fn sparse_get(v: &SparseVec, i: usize) -> Option<&Rational> {
    v.binary_search_by_key(&i, |x| x.0).ok().map(|p| &v[p].1)
}

/// Incrementally maintained reduced row-echelon basis, keyed by pivot column.
#[derive(Debug, Clone, Default)]
struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    fn reduce(&self, mut v: SparseVec) -> SparseVec {
        // eliminate against pivots in increasing order; each row is zero on other pivots
        let pivots: Vec<usize> = v.iter().map(|x| x.0).filter(|c| self.rows.contains_key(c)).collect();
        for p in pivots {
            if let Some(c) = sparse_get(&v, p).cloned() {
                v = sparse_axpy(&v, &-c, &self.rows[&p]);
            }
        }
        v
    }

    fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((pivot, lead)) = v.first().cloned() else {
            return false;
        };
        let inv = lead.recip();
        let v: SparseVec = v.into_iter().map(|(i, x)| (i, x * &inv)).collect();
        for row in self.rows.values_mut() {
            if let Some(c) = sparse_get(row, pivot).cloned() {
                *row = sparse_axpy(row, &-c, &v);
            }
        }
        self.rows.insert(pivot, v);
        true
    }
}

/// A linear subspace of ℚᵈ, stored as its unique reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim).map(|i| vec![(i, rat(1))]).collect();
        Subspace { ambient_dim, basis }
    }

    fn from_echelon(ambient_dim: usize, e: Echelon) -> Self {
        Subspace { ambient_dim, basis: e.rows.into_values().collect() }
    }

    /// Span of dense rational rows.
    pub fn from_rows(rows: &[Vec<Rational>], ambient_dim: usize) -> Result<Self> {
        let mut e = Echelon::default();
        for r in rows {
            if r.len() != ambient_dim {
                return Err(Error::VectorLength { len: r.len(), ambient: ambient_dim });
            }
            e.insert(sparse_from_dense(r));
        }
        Ok(Subspace::from_echelon(ambient_dim, e))
    }

    /// Span of sparse vectors.
    pub fn from_sparse<I: IntoIterator<Item = SparseVec>>(vectors: I, ambient_dim: usize) -> Result<Self> {
        let mut e = Echelon::default();
        for v in vectors {
            if let Some(&(i, _)) = v.iter().find(|(i, _)| *i >= ambient_dim) {
                return Err(Error::VectorLength { len: i + 1, ambient: ambient_dim });
            }
            let mut v: SparseVec = v.into_iter().filter(|(_, x)| !x.is_zero()).collect();
            v.sort_by_key(|x| x.0);
            e.insert(v);
        }
        Ok(Subspace::from_echelon(ambient_dim, e))
    }

    /// Span of k-vectors, in the lexicographic coordinates of Λᵏℚⁿ.
    pub fn from_kvectors<'a, I: IntoIterator<Item = &'a KVector>>(vectors: I, n: usize, k: usize) -> Result<Self> {
        let ambient = crate::exterior::binomial(n, k);
        let mut sparse = Vec::new();
        for v in vectors {
            if v.n() != n {
                return Err(Error::AmbientMismatch(v.n(), n));
            }
            if v.degree() != k {
                return Err(Error::DegreeMismatch(v.degree(), k));
            }
            sparse.push(v.to_sparse());
        }
        Subspace::from_sparse(sparse, ambient)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| r[0].0).collect()
    }

    pub fn sparse_basis(&self) -> &[SparseVec] {
        &self.basis
    }

    /// The RREF basis as a `dim × ambient_dim` matrix.
    pub fn basis_matrix(&self) -> MatrixQ {
        let mut m = MatrixQ::zeros(self.basis.len(), self.ambient_dim);
        for (r, row) in self.basis.iter().enumerate() {
            for (c, x) in row {
                m.set(r, *c, x.clone());
            }
        }
        m
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        Ok(())
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::default();
        for row in &self.basis {
            e.rows.insert(row[0].0, row.clone());
        }
        e
    }

    pub fn contains_sparse(&self, v: &SparseVec) -> bool {
        self.echelon().reduce(v.clone()).is_empty()
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::VectorLength { len: v.len(), ambient: self.ambient_dim });
        }
        Ok(self.contains_sparse(&sparse_from_dense(v)))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        let e = other.echelon();
        Ok(self.basis.iter().all(|v| e.reduce(v.clone()).is_empty()))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut e = self.echelon();
        for v in &other.basis {
            e.insert(v.clone());
        }
        Ok(Subspace::from_echelon(self.ambient_dim, e))
    }

    /// Orthogonal complement under the standard coordinate pairing.
    pub fn annihilator(&self) -> Subspace {
        let pivots: Vec<usize> = self.pivots();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        // column-wise view of the non-pivot entries
        let mut by_free: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for (row, &p) in self.basis.iter().zip(&pivots) {
            for (c, x) in row.iter().skip(1) {
                by_free.entry(*c).or_default().push((p, x.clone()));
            }
        }
        let mut vectors = Vec::new();
        for f in (0..self.ambient_dim).filter(|c| !pivot_set.contains(c)) {
            let mut v: SparseVec = by_free
                .get(&f)
                .map(|entries| entries.iter().map(|(p, x)| (*p, -x.clone())).collect())
                .unwrap_or_default();
            v.push((f, rat(1)));
            v.sort_by_key(|x| x.0);
            vectors.push(v);
        }
        Subspace::from_sparse(vectors, self.ambient_dim).expect("coordinates are in range")
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }
}

/// `subspace_from_vectors`: span of rational rows.
pub fn subspace_from_vectors(vectors: &[Vec<Rational>], ambient_dim: usize) -> Result<Subspace> {
    Subspace::from_rows(vectors, ambient_dim)
}
