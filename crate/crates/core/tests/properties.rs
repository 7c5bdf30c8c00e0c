mod common;

use common::*;
use gdual_core::exterior::{rat, sort_sign};
use gdual_core::orbits::{apply_basis_change, orbit_dim, tangent_annihilator, tangent_space, verify_dual_pair, BasisChange};
use gdual_core::sff::{assemble_star, QuadricBlocks};
use gdual_core::{pairing, rank_exact, wedge, KVector, MatrixQ};
use num_traits::Zero;
use proptest::prelude::*;

fn trivector(n: usize) -> impl Strategy<Value = Vec<(i64, [usize; 3])>> {
    prop::collection::vec(
        (
            prop_oneof![Just(1i64), Just(-1), Just(2)],
            prop::sample::subsequence((1..=n).collect::<Vec<_>>(), 3).prop_map(|v| [v[0], v[1], v[2]]),
        ),
        1..=5,
    )
}

fn build_trivector(n: usize, terms: &[(i64, [usize; 3])]) -> KVector {
    KVector::from_terms(n, 3, terms.iter().map(|(c, idx)| (rat(*c), &idx[..]))).unwrap()
}

fn invertible(n: usize) -> impl Strategy<Value = MatrixQ> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, n), n)
        .prop_map(|rows| MatrixQ::from_i64(&rows).unwrap())
        .prop_filter("invertible", |m| !m.determinant().unwrap().is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bareiss_matches_naive_rank(rows in int_matrix(12, 12)) {
        check_bareiss(&rows)?;
    }

    #[test]
    fn bareiss_matches_naive_rank_low_rank(rows in low_rank_matrix()) {
        check_bareiss(&rows)?;
    }

    #[test]
    fn double_annihilator(rows in int_matrix(6, 9)) {
        check_double_annihilator(&rows)?;
    }

    #[test]
    fn rref_is_unique(input in rref_input()) {
        check_rref_unique(&input)?;
    }

    #[test]
    fn grassmann_cone_dimensions(input in grassmann_input()) {
        check_grassmann(&input)?;
    }

    #[test]
    fn wedge_graded_commutativity(
        a in prop::sample::subsequence((1..=7).collect::<Vec<_>>(), 1..=3),
        b in prop::sample::subsequence((1..=7).collect::<Vec<_>>(), 1..=3),
        ca in -3i64..=3,
        cb in -3i64..=3,
    ) {
        let u = KVector::monomial(&a, 7).unwrap().scale(&rat(ca));
        let v = KVector::monomial(&b, 7).unwrap().scale(&rat(cb));
        let uv = wedge(&u, &v).unwrap();
        let vu = wedge(&v, &u).unwrap();
        let sign = if (a.len() * b.len()) % 2 == 0 { rat(1) } else { rat(-1) };
        prop_assert_eq!(uv.clone(), vu.scale(&sign));
        if a.iter().any(|i| b.contains(i)) {
            prop_assert!(uv.is_zero());
        } else {
            let joined: Vec<usize> = a.iter().chain(&b).copied().collect();
            let expected = KVector::monomial(&joined, 7).unwrap().scale(&rat(ca * cb));
            prop_assert_eq!(uv, expected);
            prop_assert_eq!(sort_sign(&joined).abs(), 1);
        }
    }

    #[test]
    fn assembled_quadrics_are_symmetric(entries in prop::collection::vec(-3i64..=3, 18)) {
        let skew = |e: &[i64]| {
            let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            let mut rows = vec![vec![0i64; 4]; 4];
            for (&(i, j), &x) in pairs.iter().zip(e) {
                rows[i][j] = x;
                rows[j][i] = -x;
            }
            rows
        };
        let q = QuadricBlocks::from_i64(&skew(&entries[0..6]), &skew(&entries[6..12]), &skew(&entries[12..18])).unwrap();
        let m = assemble_star(&q);
        prop_assert!(m.is_symmetric());
        prop_assert_eq!(m.rows(), 12);
        prop_assert!(rank_exact(&m) <= 12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn orbit_dim_is_basis_invariant(terms in trivector(6), g in invertible(6)) {
        let x = build_trivector(6, &terms);
        prop_assume!(!x.is_zero());
        let g = BasisChange::new(g).unwrap();
        let gx = apply_basis_change(&g, &x).unwrap();
        prop_assert_eq!(orbit_dim(&gx).unwrap(), orbit_dim(&x).unwrap());
    }

    #[test]
    fn tangent_plus_annihilator_is_everything(terms in trivector(7)) {
        let x = build_trivector(7, &terms);
        prop_assume!(!x.is_zero());
        let t = tangent_space(&x).unwrap();
        prop_assert_eq!(t.dim() + tangent_annihilator(&x).unwrap().dim(), 35);
        prop_assert!(t.contains(&x.to_coords()).unwrap());
    }

    #[test]
    fn pairing_is_equivariant(xt in trivector(6), yt in trivector(6), g in invertible(6)) {
        let x = build_trivector(6, &xt);
        let y = build_trivector(6, &yt);
        prop_assume!(!x.is_zero() && !y.is_zero());
        let g = BasisChange::new(g).unwrap();
        let h = g.contragredient().unwrap();
        let gx = apply_basis_change(&g, &x).unwrap();
        let hy = apply_basis_change(&h, &y).unwrap();
        prop_assert_eq!(pairing(&gx, &hy).unwrap(), pairing(&x, &y).unwrap());
        prop_assert_eq!(verify_dual_pair(&gx, &hy).unwrap(), verify_dual_pair(&x, &y).unwrap());
    }
}

#[test]
fn dual_pairs_survive_basis_change() {
    let x = KVector::sum_of_monomials(8, &[&[4, 6, 7], &[3, 6, 8], &[5, 7, 8]]).unwrap();
    let y = KVector::sum_of_monomials(8, &[&[1, 3, 7], &[2, 3, 7], &[2, 5, 6], &[1, 4, 8], &[3, 4, 5]]).unwrap();
    let g = BasisChange::remark_g();
    let gx = apply_basis_change(&g, &x).unwrap();
    let hy = apply_basis_change(&g.contragredient().unwrap(), &y).unwrap();
    assert!(verify_dual_pair(&gx, &hy).unwrap());
}

#[test]
fn naive_rank_oracle_sanity() {
    assert_eq!(naive_rank(&to_q(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]])), 2);
    assert_eq!(naive_rank(&to_q(&[vec![0, 0], vec![0, 0]])), 0);
}
