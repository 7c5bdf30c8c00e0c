#![allow(dead_code)]

use gdual_core::exterior::{binomial, rat};
use gdual_core::grassmann::{osculating2_cone, tangent_cone, PlanePoint};
use gdual_core::{rank_exact, MatrixQ, Rational, Subspace};
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

/// Plain Gaussian elimination over ℚ with first-nonzero pivoting; the oracle for `rank_exact`.
pub fn naive_rank(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                let pivot = a[rank].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn to_q(rows: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
}

pub fn int_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        // a sparse-ish alphabet makes rank deficiency common
        prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -4i64..=4], c), r)
    })
}

pub fn low_rank_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=12, 1usize..=12, 1usize..=6).prop_flat_map(|(r, c, k)| {
        (
            prop::collection::vec(prop::collection::vec(-3i64..=3, k), r),
            prop::collection::vec(prop::collection::vec(-3i64..=3, c), k),
        )
            .prop_map(|(left, right)| {
                left.iter()
                    .map(|l| (0..right[0].len()).map(|j| l.iter().zip(&right).map(|(a, row)| a * row[j]).sum()).collect())
                    .collect()
            })
    })
}

pub type Grid = Vec<Vec<i64>>;

pub fn rref_input() -> impl Strategy<Value = (Grid, Grid)> {
    (int_matrix(5, 8), prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 5))
}

pub fn grassmann_input() -> impl Strategy<Value = (usize, usize, Grid)> {
    (2usize..=3, 1usize..=3, prop::collection::vec(prop::collection::vec(-2i64..=2, 6), 3))
}

pub fn check_bareiss(rows: &Grid) -> Result<(), TestCaseError> {
    let q = to_q(rows);
    prop_assert_eq!(rank_exact(&MatrixQ::from_rows(q.clone()).unwrap()), naive_rank(&q));
    Ok(())
}

pub fn check_double_annihilator(rows: &Grid) -> Result<(), TestCaseError> {
    let d = rows[0].len();
    let s = Subspace::from_rows(&to_q(rows), d).unwrap();
    let back = s.annihilator().annihilator();
    prop_assert_eq!(s.annihilator().dim() + s.dim(), d);
    prop_assert_eq!(back, s);
    Ok(())
}

pub fn check_rref_unique((rows, mix): &(Grid, Grid)) -> Result<(), TestCaseError> {
    let d = rows[0].len();
    let q = to_q(rows);
    let s = Subspace::from_rows(&q, d).unwrap();
    // random combinations of the generators leave the span, hence the RREF, unchanged
    let mut more = q.clone();
    for m in mix {
        let v: Vec<Rational> = (0..d).map(|j| q.iter().zip(m).map(|(row, &c)| &row[j] * rat(c)).sum()).collect();
        more.push(v);
    }
    more.reverse();
    let t = Subspace::from_rows(&more, d).unwrap();
    prop_assert_eq!(t.dim(), naive_rank(&q));
    prop_assert_eq!(t, s);
    Ok(())
}

pub fn check_grassmann(&(k, extra, ref seed_rows): &(usize, usize, Grid)) -> Result<(), TestCaseError> {
    let n = k + extra + 1;
    let basis: Vec<Vec<Rational>> = seed_rows
        .iter()
        .take(k)
        .map(|r| {
            let mut v: Vec<Rational> = r.iter().take(n).map(|&x| rat(x)).collect();
            v.resize(n, rat(0));
            v
        })
        .collect();
    if let Ok(p) = PlanePoint::new(n, basis) {
        let t = tangent_cone(&p).unwrap();
        let o = osculating2_cone(&p).unwrap();
        prop_assert_eq!(t.dim(), k * (n - k) + 1);
        prop_assert_eq!(o.dim(), 1 + k * (n - k) + binomial(k, 2) * binomial(n - k, 2));
        prop_assert!(t.is_subspace_of(&o).unwrap());
    }
    Ok(())
}
