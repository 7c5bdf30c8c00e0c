//! Plücker-embedded Grassmannians G(k, n): tangent and second osculating cones,
//! their intersections at pairs of transverse points, and secant dimensions.
//!
//! All cones are affine subspaces of Λᵏℚⁿ; projective dimensions are cone
//! dimension minus one.

use rand::Rng;

use crate::error::{Error, Result};
use crate::exterior::{binomial, rat, wedge, KVector, Rational};
use crate::linalg::{rank_exact, MatrixQ, Subspace};

/// A k-plane in ℚⁿ given by a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanePoint {
    n: usize,
    basis: Vec<Vec<Rational>>,
}

impl PlanePoint {
    pub fn new(n: usize, basis: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(v) = basis.iter().find(|v| v.len() != n) {
            return Err(Error::VectorLength { len: v.len(), ambient: n });
        }
        let k = basis.len();
        let rank = rank_exact(&MatrixQ::from_rows(basis.clone())?);
        if rank < k {
            return Err(Error::RankDeficient { rank, expected: k });
        }
        Ok(PlanePoint { n, basis })
    }

    /// The coordinate plane spanned by `e_{first}, …, e_{first+k-1}` (1-based).
    pub fn coordinate(n: usize, first: usize, k: usize) -> Result<Self> {
        let basis = (first..first + k)
            .map(|i| {
                let mut v = vec![rat(0); n];
                if i == 0 || i > n {
                    return Err(Error::InvalidIndex { indices: vec![i], n });
                }
                v[i - 1] = rat(1);
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        PlanePoint::new(n, basis)
    }

    /// The standard general pair `⟨e_1..e_k⟩`, `⟨e_{k+1}..e_{2k}⟩`.
    pub fn coordinate_pair(k: usize, n: usize) -> Result<(Self, Self)> {
        if 2 * k > n {
            return Err(Error::Unsupported(format!("no transverse pair of {k}-planes in dimension {n}")));
        }
        Ok((PlanePoint::coordinate(n, 1, k)?, PlanePoint::coordinate(n, k + 1, k)?))
    }

    /// A plane with small random integer basis entries; retries until independent.
    pub fn random<R: Rng>(k: usize, n: usize, rng: &mut R) -> Self {
        loop {
            let basis: Vec<Vec<Rational>> =
                (0..k).map(|_| (0..n).map(|_| rat(rng.gen_range(-3..=3))).collect()).collect();
            if let Ok(p) = PlanePoint::new(n, basis) {
                return p;
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Applies a linear map (column `l` is the image of `e_l`) to every basis vector.
    pub fn transform(&self, g: &MatrixQ) -> Result<Self> {
        let cols = MatrixQ::from_rows(self.basis.clone())?.transpose();
        let image = g.mul(&cols)?.transpose();
        PlanePoint::new(self.n, image.row_vecs())
    }

    fn vectors(&self) -> Vec<KVector> {
        self.basis.iter().map(|v| KVector::from_vector(v)).collect()
    }
}

/// Wedges of all `r`-element subsets of `vs` (in order).
fn subset_wedges(vs: &[KVector], r: usize, n: usize) -> Result<Vec<KVector>> {
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(r);
    fn rec(
        vs: &[KVector],
        start: usize,
        r: usize,
        n: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<KVector>,
    ) -> Result<()> {
        if chosen.len() == r {
            let mut acc = KVector::from_terms(n, 0, std::iter::once((rat(1), &[][..])))?;
            for &i in chosen.iter() {
                acc = wedge(&acc, &vs[i])?;
            }
            out.push(acc);
            return Ok(());
        }
        for i in start..vs.len() {
            chosen.push(i);
            rec(vs, i + 1, r, n, chosen, out)?;
            chosen.pop();
        }
        Ok(())
    }
    rec(vs, 0, r, n, &mut chosen, &mut out)?;
    Ok(out)
}

fn wedge_span(left: &[KVector], right: &[KVector], n: usize, k: usize) -> Result<Subspace> {
    let mut gens = Vec::with_capacity(left.len() * right.len());
    for a in left {
        for b in right {
            let w = wedge(a, b)?;
            if !w.is_zero() {
                gens.push(w);
            }
        }
    }
    Subspace::from_kvectors(&gens, n, k)
}

/// The decomposable k-vector `v₁ ∧ … ∧ v_k`.
pub fn plucker(p: &PlanePoint) -> Result<KVector> {
    let mut acc = KVector::from_terms(p.n, 0, std::iter::once((rat(1), &[][..])))?;
    for v in p.vectors() {
        acc = wedge(&acc, &v)?;
    }
    Ok(acc)
}

/// `Λ^{k-1}E ∧ ℚⁿ`, the affine tangent cone at `[E]`.
pub fn tangent_cone(p: &PlanePoint) -> Result<Subspace> {
    let n = p.n;
    let k = p.k();
    let left = subset_wedges(&p.vectors(), k - 1, n)?;
    let right: Vec<KVector> = (1..=n).map(|i| KVector::monomial(&[i], n)).collect::<Result<_>>()?;
    wedge_span(&left, &right, n, k)
}

/// `Λ^{k-2}E ∧ Λ²ℚⁿ`, the affine second osculating cone at `[E]`.
pub fn osculating2_cone(p: &PlanePoint) -> Result<Subspace> {
    let n = p.n;
    let k = p.k();
    if k < 2 {
        return Err(Error::Unsupported(format!("second osculating cone needs k >= 2, got {k}")));
    }
    let left = subset_wedges(&p.vectors(), k - 2, n)?;
    let mut right = Vec::with_capacity(binomial(n, 2));
    for a in 1..=n {
        for b in a + 1..=n {
            right.push(KVector::monomial(&[a, b], n)?);
        }
    }
    wedge_span(&left, &right, n, k)
}

fn check_transverse(p: &PlanePoint, q: &PlanePoint) -> Result<()> {
    if p.n != q.n {
        return Err(Error::AmbientMismatch(p.n, q.n));
    }
    if p.k() != q.k() {
        return Err(Error::DegreeMismatch(p.k(), q.k()));
    }
    let stacked: Vec<Vec<Rational>> = p.basis.iter().chain(&q.basis).cloned().collect();
    let rank = rank_exact(&MatrixQ::from_rows(stacked)?);
    let meet = p.k() + q.k() - rank;
    if meet > 0 {
        return Err(Error::NotTransverse(meet));
    }
    Ok(())
}

/// Second osculating cone at `p` intersected with the tangent cone at `q`.
pub fn osculating_intersection(p: &PlanePoint, q: &PlanePoint) -> Result<Subspace> {
    check_transverse(p, q)?;
    osculating2_cone(p)?.intersection(&tangent_cone(q)?)
}

/// Projective dimension of σ₂(G(k, n)) via Terracini: `dim(T̂_P + T̂_Q) − 1`.
pub fn terracini_secant_dim(p: &PlanePoint, q: &PlanePoint) -> Result<usize> {
    check_transverse(p, q)?;
    Ok(tangent_cone(p)?.sum(&tangent_cone(q)?)?.dim() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kv(idx: &[usize], n: usize) -> KVector {
        KVector::monomial(idx, n).unwrap()
    }

    #[test]
    fn plucker_examples() {
        let p = PlanePoint::coordinate(6, 1, 3).unwrap();
        assert_eq!(plucker(&p).unwrap(), kv(&[1, 2, 3], 6));
        let y = PlanePoint::coordinate(9, 4, 3).unwrap();
        assert_eq!(plucker(&y).unwrap(), kv(&[4, 5, 6], 9));
        // (e1 + e4) ∧ e2 ∧ e3 = e123 + e423 = e123 + e234
        let mut v = vec![rat(0); 6];
        v[0] = rat(1);
        v[3] = rat(1);
        let e = |i: usize| {
            let mut w = vec![rat(0); 6];
            w[i - 1] = rat(1);
            w
        };
        let p = PlanePoint::new(6, vec![v, e(2), e(3)]).unwrap();
        assert_eq!(plucker(&p).unwrap(), kv(&[1, 2, 3], 6).add(&kv(&[2, 3, 4], 6)).unwrap());
    }

    #[test]
    fn rank_deficient_plane_is_rejected() {
        let v = vec![rat(1), rat(2), rat(3)];
        let err = PlanePoint::new(3, vec![v.clone(), v.iter().map(|x| x * rat(2)).collect()]).unwrap_err();
        assert_eq!(err, Error::RankDeficient { rank: 1, expected: 2 });
    }

    #[test]
    fn cone_dimensions() {
        for (k, n, t, o) in [(3, 6, 10, 19), (3, 8, 16, 46), (4, 8, 17, 53)] {
            let p = PlanePoint::coordinate(n, 1, k).unwrap();
            assert_eq!(tangent_cone(&p).unwrap().dim(), t, "tangent k={k} n={n}");
            assert_eq!(osculating2_cone(&p).unwrap().dim(), o, "osc k={k} n={n}");
        }
        let line = PlanePoint::coordinate(4, 1, 1).unwrap();
        assert!(osculating2_cone(&line).is_err());
    }

    #[test]
    fn k3_intersection_is_u_wedge_lambda2_u_prime() {
        let (u, u2) = PlanePoint::coordinate_pair(3, 9).unwrap();
        let meet = osculating_intersection(&u, &u2).unwrap();
        let mut expected = Vec::new();
        for i in 1..=3 {
            for s in 4..=6 {
                for t in s + 1..=6 {
                    expected.push(kv(&[i, s, t], 9));
                }
            }
        }
        assert_eq!(meet, Subspace::from_kvectors(&expected, 9, 3).unwrap());
        assert_eq!(meet.dim(), 9);
    }

    #[test]
    fn higher_k_intersection_vanishes() {
        for (k, n) in [(4, 9), (5, 10)] {
            let (p, q) = PlanePoint::coordinate_pair(k, n).unwrap();
            assert!(osculating_intersection(&p, &q).unwrap().is_zero());
        }
    }

    #[test]
    fn non_transverse_pair_is_rejected() {
        let p = PlanePoint::coordinate(8, 1, 3).unwrap();
        let q = PlanePoint::coordinate(8, 3, 3).unwrap();
        assert_eq!(osculating_intersection(&p, &q), Err(Error::NotTransverse(1)));
        assert_eq!(terracini_secant_dim(&p, &q), Err(Error::NotTransverse(1)));
    }

    #[test]
    fn terracini_trivectors() {
        for (n, d) in [(6, 19), (7, 25), (8, 31)] {
            let (p, q) = PlanePoint::coordinate_pair(3, n).unwrap();
            assert_eq!(terracini_secant_dim(&p, &q).unwrap(), d);
        }
    }
}
