use alexpoly::alexmod::alexander_polynomial;
use alexpoly::cgroup::{
    abelian, example_4_1, example_4_2, g2, hurwitz_product, irreducible_components, CPresentation,
};
use alexpoly::checks::betti_statistic;
use alexpoly::involution::{canonical_block, decompose};
use alexpoly::linalg::{
    charpoly, integer_kernel, smith_qt, smith_z, unimodular_inverse, IntMatrix, PolyMatrix,
};
use alexpoly::poly::{cyclotomic, factor_cyclotomic, IntPoly};
use alexpoly::realize::{realize, Mode};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r).prop_map(move |rows| {
            let rows: Vec<Vec<BigInt>> = rows
                .into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect();
            IntMatrix::from_rows(rows, c)
        })
    })
}

fn square(n: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-bound..=bound, n), n).prop_map(move |rows| {
        let rows: Vec<Vec<BigInt>> = rows
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        IntMatrix::from_rows(rows, n)
    })
}

/// Unimodular matrix as a product of elementary row operations.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, prop_oneof![Just(-1i64), Just(1i64)]), 0..3 * n).prop_map(
        move |ops| {
            let mut w = IntMatrix::identity(n);
            for (i, j, c) in ops {
                if i == j {
                    continue;
                }
                for col in 0..n {
                    let v = &w[(i, col)] + &w[(j, col)] * c;
                    w[(i, col)] = v;
                }
            }
            w
        },
    )
}

fn rat_matrix(rows: usize, cols: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(
        prop::collection::vec(prop::collection::vec(-2i64..=2, 0..3), cols),
        rows,
    )
    .prop_map(move |data| {
        let data = data
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|c| IntPoly::from_i64s(&c).to_rat())
                    .collect()
            })
            .collect();
        PolyMatrix::new(data, cols)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_z_is_a_valid_decomposition(a in matrix(5, 6)) {
        let s = smith_z(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(a.cols()));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(diag.iter().all(|x| x > &BigInt::zero()));
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j || i >= s.rank {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn charpoly_is_conjugation_invariant(a in square(4, 4), w in unimodular(4)) {
        let w_inv = unimodular_inverse(&w).unwrap();
        prop_assert_eq!(charpoly(&w.mul(&a).mul(&w_inv)), charpoly(&a));
    }

    #[test]
    fn charpoly_has_det_at_zero(a in square(4, 5)) {
        prop_assert_eq!(charpoly(&a).coeff(0), a.det());
    }

    #[test]
    fn smith_qt_transforms(a in rat_matrix(3, 3)) {
        let s = smith_qt(&a);
        let (u, v) = (s.u.clone().unwrap(), s.v.clone().unwrap());
        prop_assert_eq!(u.mul(&a).mul(&v), s.d.clone());
        for w in s.invariant_factors.windows(2) {
            prop_assert!(w[1].div_rem(&w[0]).1.is_zero());
        }
    }

    #[test]
    fn integer_kernel_is_saturated(a in matrix(4, 5)) {
        let basis = integer_kernel(&a);
        for v in &basis {
            prop_assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
        prop_assert_eq!(basis.len(), a.cols() - smith_z(&a).rank);
        if !basis.is_empty() {
            let k = IntMatrix::from_columns(&basis, a.cols());
            prop_assert!(smith_z(&k).diagonal().iter().all(One::is_one));
        }
    }

    #[test]
    fn cyclotomic_factorization_reconstructs(
        idx in prop::collection::vec(1u64..40, 0..4),
        shift in 0usize..3,
        negative in any::<bool>(),
    ) {
        let mut p = idx.iter().fold(IntPoly::one(), |acc, &n| &acc * &cyclotomic(n)).shift(shift);
        if negative {
            p = -&p;
        }
        let f = factor_cyclotomic(&p).unwrap();
        prop_assert_eq!(f.reconstruct(), p);
        prop_assert_eq!(f.t_power, shift);
        prop_assert_eq!(f.factors.values().sum::<u32>() as usize, idx.len());
    }

    #[test]
    fn betti_is_monotone_along_divisibility(
        idx in prop::collection::vec(1u64..30, 0..4),
        n in 1u64..20,
        m in 1u64..5,
    ) {
        let p = idx.iter().fold(IntPoly::one(), |acc, &k| &acc * &cyclotomic(k));
        prop_assert!(betti_statistic(&p, n).unwrap() <= betti_statistic(&p, n * m).unwrap());
    }

    #[test]
    fn involution_roundtrip(
        n1 in 0usize..4, n2 in 0usize..4, n3 in 0usize..3,
        seed in prop::collection::vec((0usize..10, 0usize..10, prop_oneof![Just(-1i64), Just(1i64)]), 0..30),
    ) {
        let block = canonical_block(n1, n2, n3);
        let n = block.rows();
        let mut w = IntMatrix::identity(n);
        for (i, j, c) in seed {
            if n == 0 || i % n == j % n {
                continue;
            }
            let (i, j) = (i % n, j % n);
            for col in 0..n {
                let v = &w[(i, col)] + &w[(j, col)] * c;
                w[(i, col)] = v;
            }
        }
        let h = w.mul(&block).mul(&unimodular_inverse(&w).unwrap());
        let d = decompose(&h).unwrap();
        prop_assert_eq!((d.n1, d.n2, d.n3), (n1, n2, n3));
        prop_assert!(d.verify(&h));
        let mut expect = &IntPoly::from_i64s(&[-1, 1]).pow((n1 + n3) as u32)
            * &IntPoly::from_i64s(&[1, 1]).pow((n2 + n3) as u32);
        if n % 2 == 1 {
            expect = -&expect;
        }
        prop_assert_eq!(charpoly(&h), expect);
    }
}

fn corpus_groups() -> Vec<CPresentation> {
    vec![example_4_1(), example_4_2(), g2(), abelian(3)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn delta_invariant_under_relabeling(which in 0usize..4, perm_seed in any::<u64>()) {
        let g = corpus_groups().swap_remove(which);
        let m = g.num_generators();
        let mut perm: Vec<usize> = (1..=m).collect();
        let mut s = perm_seed;
        for i in (1..m).rev() {
            let j = (s % (i as u64 + 1)) as usize;
            s /= i as u64 + 1;
            perm.swap(i, j);
        }
        let h = g.relabeled(&perm);
        let (a, b) = (alexander_polynomial(&g), alexander_polynomial(&h));
        prop_assert_eq!(irreducible_components(&g), irreducible_components(&h));
        prop_assert_eq!(a.delta, b.delta);
    }

    #[test]
    fn delta_invariant_under_relation_order(which in 0usize..4, rot in 0usize..10) {
        let g = corpus_groups().swap_remove(which);
        let r = g.relations().len();
        let order: Vec<usize> = (0..r).map(|i| (i + rot) % r).rev().collect();
        let h = g.with_relation_order(&order);
        prop_assert_eq!(alexander_polynomial(&g).delta, alexander_polynomial(&h).delta);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn realize_roundtrip(
        idx in prop::collection::vec(prop_oneof![Just(6u64), Just(10), Just(12)], 0..2),
        n in 0u32..3,
        k in 0u32..3,
    ) {
        let k = k.min(n);
        let mut target = idx.iter().fold(IntPoly::one(), |acc, &m| &acc * &cyclotomic(m));
        target = &target * &(&IntPoly::from_i64s(&[-1, 1]).pow(n) * &IntPoly::from_i64s(&[1, 1]).pow(k));
        let cert = realize(&target, Mode::Auto).unwrap();
        let delta = alexander_polynomial(&cert.presentation).delta;
        let normalized = target.det_normalized().0;
        prop_assert_eq!(delta.as_poly(), Some(&cert.target));
        prop_assert_eq!(&cert.target, &normalized);
    }

    #[test]
    fn multiplicativity(a in 0usize..4, b in 0usize..4) {
        let pool = [g2(), abelian(1), abelian(2), abelian(3)];
        let (ga, gb) = (&pool[a], &pool[b]);
        let prod = hurwitz_product(ga, gb);
        let da = alexander_polynomial(ga).delta;
        let db = alexander_polynomial(gb).delta;
        let want = da.as_poly().unwrap() * db.as_poly().unwrap();
        let got = alexander_polynomial(&prod).delta;
        prop_assert_eq!(got.as_poly(), Some(&want));
        prop_assert_eq!(
            irreducible_components(&prod),
            irreducible_components(ga) + irreducible_components(gb) - 1
        );
    }
}
