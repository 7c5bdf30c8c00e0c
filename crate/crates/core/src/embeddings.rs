//! Veronese re-embeddings of ℙⁿ and Segre products of projective spaces.
//!
//! Veronese spaces are degree-d monomial coordinate spaces with symbolic
//! polynomial multiplication; Segre spaces are tensor coordinate spaces with
//! lexicographically ordered elementary tensors.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::{rat, Rational};
use crate::linalg::{SparseVec, Subspace};

/// Coordinate space of degree-d forms in `n + 1` variables, or of tensors over the given factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialSpace {
    factor_dims: Vec<usize>,
    degree: usize,
    /// Veronese: exponent vectors; Segre: one coordinate index per factor.
    basis: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
}

impl MonomialSpace {
    /// Degree-d monomials in `n + 1` variables, ordered lexicographically by exponent vector (descending).
    pub fn veronese(d: usize, n: usize) -> Self {
        let mut basis = Vec::new();
        let mut cur = vec![0; n + 1];
        fn rec(pos: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(cur.clone());
                return;
            }
            for e in (0..=left).rev() {
                cur[pos] = e;
                rec(pos + 1, left - e, cur, out);
            }
        }
        rec(0, d, &mut cur, &mut basis);
        MonomialSpace::with_basis(vec![n + 1], d, basis)
    }

    /// Elementary tensors of `ℚ^{a_1} ⊗ … ⊗ ℚ^{a_s}` in lexicographic order.
    pub fn segre(factor_dims: &[usize]) -> Self {
        let mut basis: Vec<Vec<usize>> = vec![vec![]];
        for &a in factor_dims {
            basis = basis
                .into_iter()
                .flat_map(|prefix| {
                    (0..a).map(move |j| {
                        let mut v = prefix.clone();
                        v.push(j);
                        v
                    })
                })
                .collect();
        }
        MonomialSpace::with_basis(factor_dims.to_vec(), 1, basis)
    }

    fn with_basis(factor_dims: Vec<usize>, degree: usize, basis: Vec<Vec<usize>>) -> Self {
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        MonomialSpace { factor_dims, degree, basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn position(&self, key: &[usize]) -> Option<usize> {
        self.index.get(key).copied()
    }

    fn sparse(&self, poly: &BTreeMap<Vec<usize>, Rational>) -> SparseVec {
        let mut v: SparseVec = poly
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (self.index[m], c.clone()))
            .collect();
        v.sort_by_key(|x| x.0);
        v
    }
}

type Poly = BTreeMap<Vec<usize>, Rational>;

fn poly_one(vars: usize) -> Poly {
    let mut p = Poly::new();
    p.insert(vec![0; vars], rat(1));
    p
}

fn poly_linear(coords: &[Rational]) -> Poly {
    let vars = coords.len();
    let mut p = Poly::new();
    for (i, c) in coords.iter().enumerate() {
        if !c.is_zero() {
            let mut e = vec![0; vars];
            e[i] = 1;
            p.insert(e, c.clone());
        }
    }
    p
}

fn poly_variable(i: usize, vars: usize) -> Poly {
    let mut e = vec![0; vars];
    e[i] = 1;
    let mut p = Poly::new();
    p.insert(e, rat(1));
    p
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let entry = out.entry(e).or_insert_with(Rational::zero);
            *entry += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_pow(a: &Poly, k: usize, vars: usize) -> Poly {
    (0..k).fold(poly_one(vars), |acc, _| poly_mul(&acc, a))
}

fn check_point(x: &[Rational], n: usize) -> Result<()> {
    if x.len() != n + 1 {
        return Err(Error::VectorLength { len: x.len(), ambient: n + 1 });
    }
    if x.iter().all(|c| c.is_zero()) {
        return Err(Error::ZeroPoint);
    }
    Ok(())
}

/// `x^{d-1} · ℚ^{n+1}` inside degree-d forms.
pub fn veronese_tangent_cone(d: usize, n: usize, x: &[Rational]) -> Result<Subspace> {
    if d == 0 {
        return Err(Error::Unsupported("Veronese degree must be at least 1".into()));
    }
    check_point(x, n)?;
    let space = MonomialSpace::veronese(d, n);
    let vars = n + 1;
    let base = poly_pow(&poly_linear(x), d - 1, vars);
    let gens = (0..vars).map(|i| space.sparse(&poly_mul(&base, &poly_variable(i, vars))));
    Subspace::from_sparse(gens, space.dim())
}

/// Leibniz sum `T̂⁽²⁾_x ∘ x^{d-1} + T̂_x ∘ T̂_x ∘ x^{d-2}` for X = ℙⁿ.
pub fn veronese_osculating2_cone(d: usize, n: usize, x: &[Rational]) -> Result<Subspace> {
    if d < 2 {
        return Err(Error::Unsupported(format!("second osculating cone needs d >= 2, got {d}")));
    }
    check_point(x, n)?;
    let space = MonomialSpace::veronese(d, n);
    let vars = n + 1;
    let lin = poly_linear(x);
    let first = poly_pow(&lin, d - 1, vars);
    let second = poly_pow(&lin, d - 2, vars);
    let mut gens = Vec::new();
    for i in 0..vars {
        gens.push(space.sparse(&poly_mul(&first, &poly_variable(i, vars))));
        for j in i..vars {
            let quad = poly_mul(&poly_variable(i, vars), &poly_variable(j, vars));
            gens.push(space.sparse(&poly_mul(&second, &quad)));
        }
    }
    Subspace::from_sparse(gens, space.dim())
}

/// Intersection of the second osculating cone at `x` with the tangent cone at `y`.
pub fn veronese_intersection(d: usize, n: usize, x: &[Rational], y: &[Rational]) -> Result<Subspace> {
    veronese_osculating2_cone(d, n, x)?.intersection(&veronese_tangent_cone(d, n, y)?)
}

fn unit(i: usize, len: usize) -> Vec<Rational> {
    let mut v = vec![rat(0); len];
    v[i] = rat(1);
    v
}

/// True iff the second osculating cone at `x = e_0` meets the tangent cone at `y = e_n` only in 0.
pub fn veronese_check(d: usize, n: usize) -> Result<bool> {
    if d < 2 || n < 1 {
        return Err(Error::Unsupported(format!("veronese_check needs d >= 2 and n >= 1, got d={d}, n={n}")));
    }
    Ok(veronese_intersection(d, n, &unit(0, n + 1), &unit(n, n + 1))?.is_zero())
}

fn check_factors(points: &[Vec<Rational>]) -> Result<Vec<usize>> {
    if !(2..=3).contains(&points.len()) {
        return Err(Error::Unsupported(format!("Segre products need 2 or 3 factors, got {}", points.len())));
    }
    if points.iter().any(|p| p.is_empty() || p.iter().all(|c| c.is_zero())) {
        return Err(Error::ZeroPoint);
    }
    Ok(points.iter().map(|p| p.len()).collect())
}

/// Tensor product of per-factor vectors as sparse coordinates.
fn tensor(space: &MonomialSpace, vectors: &[&[Rational]]) -> SparseVec {
    let mut terms: Vec<(Vec<usize>, Rational)> = vec![(vec![], rat(1))];
    for v in vectors {
        terms = terms
            .into_iter()
            .flat_map(|(key, c)| {
                v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(move |(j, x)| {
                    let mut k = key.clone();
                    k.push(j);
                    (k, &c * x)
                })
            })
            .collect();
    }
    let mut out: SparseVec = terms.into_iter().map(|(k, c)| (space.index[&k], c)).collect();
    out.sort_by_key(|x| x.0);
    out
}

/// Spans the tensors obtained by putting a full factor space in each slot of `free` and the base point elsewhere.
fn segre_span(points: &[Vec<Rational>], free_sets: &[Vec<usize>]) -> Result<Subspace> {
    let dims: Vec<usize> = points.iter().map(|p| p.len()).collect();
    let space = MonomialSpace::segre(&dims);
    let mut gens = Vec::new();
    for free in free_sets {
        // every choice of unit vectors in the free slots
        let mut choices: Vec<Vec<usize>> = vec![vec![]];
        for &f in free {
            choices = choices
                .into_iter()
                .flat_map(|c| {
                    (0..dims[f]).map(move |j| {
                        let mut c = c.clone();
                        c.push(j);
                        c
                    })
                })
                .collect();
        }
        for choice in choices {
            let units: Vec<Vec<Rational>> =
                free.iter().zip(&choice).map(|(&f, &j)| unit(j, dims[f])).collect();
            let vectors: Vec<&[Rational]> = (0..points.len())
                .map(|slot| match free.iter().position(|&f| f == slot) {
                    Some(pos) => units[pos].as_slice(),
                    None => points[slot].as_slice(),
                })
                .collect();
            gens.push(tensor(&space, &vectors));
        }
    }
    Subspace::from_sparse(gens, space.dim())
}

/// `Σᵢ p₁ ⊗ … ⊗ ℚ^{aᵢ} ⊗ … ⊗ p_s`.
pub fn segre_tangent_cone(points: &[Vec<Rational>]) -> Result<Subspace> {
    check_factors(points)?;
    let free: Vec<Vec<usize>> = (0..points.len()).map(|i| vec![i]).collect();
    segre_span(points, &free)
}

/// Leibniz sum of second-order terms; each projective factor has full second osculating space.
pub fn segre_osculating2_cone(points: &[Vec<Rational>]) -> Result<Subspace> {
    check_factors(points)?;
    let s = points.len();
    let mut free: Vec<Vec<usize>> = (0..s).map(|i| vec![i]).collect();
    for i in 0..s {
        for j in i + 1..s {
            free.push(vec![i, j]);
        }
    }
    segre_span(points, &free)
}

/// Intersection of the second osculating cone at `p` with the tangent cone at `q`.
pub fn segre_intersection(p: &[Vec<Rational>], q: &[Vec<Rational>]) -> Result<Subspace> {
    let dp = check_factors(p)?;
    let dq = check_factors(q)?;
    if dp != dq {
        return Err(Error::Unsupported(format!("factor dimensions differ: {dp:?} vs {dq:?}")));
    }
    segre_osculating2_cone(p)?.intersection(&segre_tangent_cone(q)?)
}

/// Segre check for `ℙ^{n_1} × … × ℙ^{n_s}` at the coordinate pair `e_1⊗…⊗e_1`, `e_last⊗…⊗e_last`.
pub fn segre_check(projective_dims: &[usize]) -> Result<bool> {
    if projective_dims.contains(&0) {
        return Err(Error::Unsupported("factors must have projective dimension >= 1".into()));
    }
    let p: Vec<Vec<Rational>> = projective_dims.iter().map(|&d| unit(0, d + 1)).collect();
    let q: Vec<Vec<Rational>> = projective_dims.iter().map(|&d| unit(d, d + 1)).collect();
    Ok(segre_intersection(&p, &q)?.is_zero())
}
