//! Exterior powers of a coordinate space with exact rational coefficients.
//!
//! Basis vectors of Λᵏℚⁿ are the wedges `e_I = e_{i1} ∧ … ∧ e_{ik}` over
//! strictly increasing multi-indices `I`, ordered lexicographically. Indices are
//! 1-based throughout, so `e_{123}` is written `MultiIndex::new(vec![1, 2, 3], n)`.
//! Dual vectors `e^I` are stored as ordinary [`KVector`]s and read through
//! [`pairing`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Sign of the permutation that sorts `xs` (which must have distinct entries).
pub fn sort_sign(xs: &[usize]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] > xs[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// A strictly increasing sequence of 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        let ok = indices.iter().all(|&i| i >= 1 && i <= n)
            && indices.windows(2).all(|w| w[0] < w[1]);
        if ok {
            Ok(MultiIndex(indices))
        } else {
            Err(Error::InvalidIndex { indices, n })
        }
    }

    /// Sorts arbitrary distinct indices, returning the sorted index and the sign
    /// of the sorting permutation. `None` if an index repeats.
    pub fn sorted(indices: &[usize], n: usize) -> Result<Option<(Self, i32)>> {
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::InvalidIndex { indices: vec![bad], n });
        }
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Ok(None);
        }
        Ok(Some((MultiIndex(sorted), sort_sign(indices))))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// Position of this index in the lexicographic basis of Λᵏℚⁿ.
    pub fn lex_rank(&self, n: usize) -> usize {
        let k = self.0.len();
        let mut rank = 0;
        let mut prev = 0; // last used 1-based index
        for (pos, &c) in self.0.iter().enumerate() {
            for j in prev + 1..c {
                rank += binomial(n - j, k - pos - 1);
            }
            prev = c;
        }
        rank
    }

    /// Inverse of [`MultiIndex::lex_rank`].
    pub fn lex_unrank(mut rank: usize, n: usize, k: usize) -> Self {
        let mut out = Vec::with_capacity(k);
        let mut next = 1;
        for pos in 0..k {
            loop {
                let block = binomial(n - next, k - pos - 1);
                if rank < block {
                    break;
                }
                rank -= block;
                next += 1;
            }
            out.push(next);
            next += 1;
        }
        MultiIndex(out)
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, n: usize) -> fmt::Result {
        let sep = if n >= 10 { "," } else { "" };
        let body: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", body.join(sep))
    }
}

/// All multi-indices of degree `k` in `[1, n]`, in lexicographic order.
pub fn lex_basis(n: usize, k: usize) -> Vec<MultiIndex> {
    (0..binomial(n, k)).map(|r| MultiIndex::lex_unrank(r, n, k)).collect()
}

/// An element of Λᵏℚⁿ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KVector {
    n: usize,
    k: usize,
    coeffs: BTreeMap<MultiIndex, Rational>,
}

impl KVector {
    pub fn zero(n: usize, k: usize) -> Self {
        KVector { n, k, coeffs: BTreeMap::new() }
    }

    /// `sign · e_{i1} ∧ … ∧ e_{ik}` for indices in any order; zero on repeats.
    pub fn monomial(indices: &[usize], n: usize) -> Result<Self> {
        let mut v = KVector::zero(n, indices.len());
        v.add_term(indices, rat(1))?;
        Ok(v)
    }

    /// The 1-vector with the given coordinates.
    pub fn from_vector(coords: &[Rational]) -> Self {
        let n = coords.len();
        let mut v = KVector::zero(n, 1);
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                v.coeffs.insert(MultiIndex(vec![i + 1]), c.clone());
            }
        }
        v
    }

    /// Builds a k-vector from `(coefficient, indices)` terms; indices may be unsorted.
    pub fn from_terms<'a, I>(n: usize, k: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, &'a [usize])>,
    {
        let mut v = KVector::zero(n, k);
        for (c, idx) in terms {
            if idx.len() != k {
                return Err(Error::DegreeMismatch(idx.len(), k));
            }
            v.add_term(idx, c)?;
        }
        Ok(v)
    }

    /// Sum of `e_I` over the listed (possibly unsorted) index triples, all with coefficient +1.
    pub fn sum_of_monomials(n: usize, monomials: &[&[usize]]) -> Result<Self> {
        let k = monomials.first().map_or(0, |m| m.len());
        KVector::from_terms(n, k, monomials.iter().map(|m| (rat(1), *m)))
    }

    pub fn add_term(&mut self, indices: &[usize], c: Rational) -> Result<()> {
        if indices.len() != self.k {
            return Err(Error::DegreeMismatch(indices.len(), self.k));
        }
        if let Some((mi, sign)) = MultiIndex::sorted(indices, self.n)? {
            let c = if sign < 0 { -c } else { c };
            self.add_sorted(mi, c);
        }
        Ok(())
    }

    fn add_sorted(&mut self, mi: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(mi);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, mi: &MultiIndex) -> Rational {
        self.coeffs.get(mi).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = KVector::zero(self.n, self.k);
        if s.is_zero() {
            return out;
        }
        for (mi, c) in &self.coeffs {
            out.coeffs.insert(mi.clone(), c * s);
        }
        out
    }

    pub fn add(&self, other: &KVector) -> Result<Self> {
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (mi, c) in &other.coeffs {
            out.add_sorted(mi.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &KVector) -> Result<Self> {
        self.add(&other.scale(&rat(-1)))
    }

    fn check_same_space(&self, other: &KVector) -> Result<()> {
        if self.n != other.n {
            return Err(Error::AmbientMismatch(self.n, other.n));
        }
        if self.k != other.k {
            return Err(Error::DegreeMismatch(self.k, other.k));
        }
        Ok(())
    }

    /// Dense coordinates in the lexicographic basis.
    pub fn to_coords(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); binomial(self.n, self.k)];
        for (mi, c) in &self.coeffs {
            out[mi.lex_rank(self.n)] = c.clone();
        }
        out
    }

    /// Sparse coordinates `(lex position, value)`, sorted by position.
    pub fn to_sparse(&self) -> Vec<(usize, Rational)> {
        let mut out: Vec<(usize, Rational)> =
            self.coeffs.iter().map(|(mi, c)| (mi.lex_rank(self.n), c.clone())).collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    pub fn from_coords(n: usize, k: usize, coords: &[Rational]) -> Result<Self> {
        let expected = binomial(n, k);
        if coords.len() != expected {
            return Err(Error::VectorLength { len: coords.len(), ambient: expected });
        }
        let mut v = KVector::zero(n, k);
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                v.coeffs.insert(MultiIndex::lex_unrank(i, n, k), c.clone());
            }
        }
        Ok(v)
    }

    /// Action of the elementary matrix `E_ij` (sends `e_j` to `e_i`) extended as a derivation.
    pub fn elementary_action(&self, i: usize, j: usize) -> Self {
        let mut out = KVector::zero(self.n, self.k);
        for (mi, c) in &self.coeffs {
            for (pos, &l) in mi.0.iter().enumerate() {
                if l != j {
                    continue;
                }
                let mut idx = mi.0.clone();
                idx[pos] = i;
                if let Ok(Some((sorted, sign))) = MultiIndex::sorted(&idx, self.n) {
                    let c = if sign < 0 { -c.clone() } else { c.clone() };
                    out.add_sorted(sorted, c);
                }
            }
        }
        out
    }

    /// Functorial action of a linear map given by its `n × n` matrix (column `l` is the image of `e_l`).
    pub fn apply_linear(&self, columns: &[Vec<Rational>]) -> Result<Self> {
        if columns.len() != self.n || columns.iter().any(|c| c.len() != self.n) {
            return Err(Error::Shape {
                rows: columns.first().map_or(0, |c| c.len()),
                cols: columns.len(),
                expected: format!("{0}x{0}", self.n),
            });
        }
        let images: Vec<KVector> = columns.iter().map(|c| KVector::from_vector(c)).collect();
        let mut out = KVector::zero(self.n, self.k);
        for (mi, c) in &self.coeffs {
            let mut acc = KVector::from_terms(self.n, 0, std::iter::once((c.clone(), &[][..])))?;
            for &l in &mi.0 {
                acc = wedge(&acc, &images[l - 1])?;
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }
}

impl fmt::Display for KVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (pos, (mi, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if pos == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "e_")?;
            mi.fmt_with(f, self.n)?;
        }
        Ok(())
    }
}

/// Exterior product.
pub fn wedge(u: &KVector, v: &KVector) -> Result<KVector> {
    if u.n != v.n {
        return Err(Error::AmbientMismatch(u.n, v.n));
    }
    if u.k + v.k > u.n {
        return Err(Error::DegreeOverflow { left: u.k, right: v.k, n: u.n });
    }
    let mut out = KVector::zero(u.n, u.k + v.k);
    let mut joined = Vec::with_capacity(u.k + v.k);
    for (a, ca) in &u.coeffs {
        for (b, cb) in &v.coeffs {
            if b.0.iter().any(|i| a.contains(*i)) {
                continue;
            }
            joined.clear();
            joined.extend_from_slice(&a.0);
            joined.extend_from_slice(&b.0);
            // a and b are each sorted, so the sign counts cross inversions only
            let mut crossings = 0usize;
            for &x in &a.0 {
                crossings += b.0.iter().filter(|&&y| y < x).count();
            }
            joined.sort_unstable();
            let c = ca * cb;
            let c = if crossings.is_multiple_of(2) { c } else { -c };
            out.add_sorted(MultiIndex(joined.clone()), c);
        }
    }
    Ok(out)
}

/// The coordinate pairing `⟨e_I, e^J⟩ = δ_IJ` on sorted multi-indices, extended bilinearly.
pub fn pairing(x: &KVector, y_dual: &KVector) -> Result<Rational> {
    x.check_same_space(y_dual)?;
    let mut acc = Rational::zero();
    for (mi, c) in &x.coeffs {
        if let Some(d) = y_dual.coeffs.get(mi) {
            acc += c * d;
        }
    }
    Ok(acc)
}
