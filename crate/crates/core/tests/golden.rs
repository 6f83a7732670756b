//! Hand-checked values for every public operation.

use alexpoly::alexmod::{
    alexander_polynomial, integral_module, rs_rewrite, shift_equivariance_check, Delta,
};
use alexpoly::cgroup::{
    abelian, example_4_1, example_4_2, free, g2, hurwitz_product, irreducible_components,
    is_hurwitz_presentation,
};
use alexpoly::linalg::{
    abelian_from_relations, charpoly, companion, kernel_of_abelian_map, smith_qt_factors, smith_z,
    IntMatrix, PolyMatrix,
};
use alexpoly::poly::{
    cyclotomic, eval_at_one, factor_cyclotomic, is_squarefree, prime_power_multiplicity_bound,
    root_order, IntPoly, LaurentPoly, PolyError,
};
use alexpoly::realize::{
    realize_irreducible, realize_irreducible_squarefree, realize_pm, realize_reducible_layer,
    realize_theorem2, RealizeError,
};
use num_bigint::BigInt;

fn p(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn tm1() -> IntPoly {
    p(&[-1, 1])
}

fn tp1() -> IntPoly {
    p(&[1, 1])
}

#[test]
fn cyclotomic_values() {
    assert_eq!(cyclotomic(1), p(&[-1, 1]));
    assert_eq!(cyclotomic(2), p(&[1, 1]));
    assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
}

#[test]
fn factorization_values() {
    let f = factor_cyclotomic(&(&tm1().pow(2) * &tp1())).unwrap();
    assert_eq!(
        (f.multiplicity(1), f.multiplicity(2), f.unit_sign),
        (2, 1, 1)
    );
    let f = factor_cyclotomic(&p(&[1, 1, 1])).unwrap();
    assert_eq!(f.factors.into_iter().collect::<Vec<_>>(), vec![(3, 1)]);
    assert!(matches!(
        factor_cyclotomic(&p(&[-2, 0, 1])),
        Err(PolyError::NotRootsOfUnity { .. })
    ));
}

#[test]
fn evaluation_and_order() {
    assert_eq!(eval_at_one(&cyclotomic(4)), BigInt::from(2));
    assert_eq!(eval_at_one(&cyclotomic(6)), BigInt::from(1));
    assert_eq!(eval_at_one(&(&tm1() * &p(&[3, 0, 5, 7]))), BigInt::from(0));
    assert_eq!(root_order(&cyclotomic(6)).unwrap(), 6);
    assert_eq!(root_order(&(&tm1() * &tp1())).unwrap(), 2);
    let q = &p(&[1, 1, 1]) * &tp1();
    assert_eq!(root_order(&q).unwrap(), 6);
    assert!(IntPoly::t_pow_minus_one(6).exact_div(&q).is_some());
}

#[test]
fn squarefree_values() {
    assert!(!is_squarefree(&tm1().pow(2)));
    assert!(is_squarefree(&cyclotomic(6)));
    assert!(is_squarefree(&IntPoly::constant(7)));
}

#[test]
fn prime_power_multiplicities() {
    let b = prime_power_multiplicity_bound(&(&tm1().pow(2) * &tp1().pow(3))).unwrap();
    assert_eq!(b.by_index.into_iter().collect::<Vec<_>>(), vec![(2, 3)]);
    assert_eq!(b.root_one, 2);
    let b = prime_power_multiplicity_bound(&cyclotomic(6).pow(2)).unwrap();
    assert!(b.by_index.is_empty());
    assert_eq!(b.root_one, 0);
    let b = prime_power_multiplicity_bound(&(&tm1() * &cyclotomic(4))).unwrap();
    assert_eq!(b.by_index.into_iter().collect::<Vec<_>>(), vec![(4, 1)]);
    assert_eq!(b.root_one, 1);
}

#[test]
fn smith_z_values() {
    assert_eq!(smith_z(&IntMatrix::identity(3)).d, IntMatrix::identity(3));
    let s = smith_z(&IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]));
    assert_eq!(s.d, IntMatrix::from_i64_rows(&[&[1, 0], &[0, 6]]));
    assert_eq!(smith_z(&IntMatrix::zeros(2, 2)).d, IntMatrix::zeros(2, 2));
}

#[test]
fn charpoly_values() {
    assert_eq!(
        charpoly(&IntMatrix::from_i64_rows(&[&[0, -1], &[1, 2]])),
        p(&[1, -2, 1])
    );
    let h = IntMatrix::from_i64_rows(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, -1]]);
    assert_eq!(charpoly(&h), &p(&[1, -1]) * &tp1().pow(2));
    for r in 1..5 {
        assert_eq!(charpoly(&IntMatrix::identity(r)), p(&[1, -1]).pow(r as u32));
    }
}

#[test]
fn companion_values() {
    let c = companion(&cyclotomic(6)).unwrap();
    assert_eq!(c, IntMatrix::from_i64_rows(&[&[0, -1], &[1, 1]]));
    assert_eq!(charpoly(&c), cyclotomic(6));
    assert_eq!(
        companion(&tm1()).unwrap(),
        IntMatrix::from_i64_rows(&[&[1]])
    );
}

#[test]
fn smith_qt_values() {
    let r = |q: IntPoly| q.to_rat();
    let s = smith_qt_factors(&PolyMatrix::new(vec![vec![r(tm1().pow(2))]], 1));
    assert_eq!(s.invariant_factors, vec![r(tm1().pow(2))]);
    assert_eq!(s.free_cokernel_rank, 0);
    let zero = IntPoly::zero().to_rat();
    let s = smith_qt_factors(&PolyMatrix::new(
        vec![vec![r(tm1()), zero.clone()], vec![zero, r(tm1())]],
        2,
    ));
    assert_eq!(s.invariant_factors, vec![r(tm1()), r(tm1())]);
    let s = smith_qt_factors(&PolyMatrix::new(vec![vec![r(tm1()), r(tp1())]], 2));
    assert_eq!(s.invariant_factors, vec![r(IntPoly::one())]);
    assert_eq!(s.free_cokernel_rank, 1);
}

#[test]
fn abelian_group_values() {
    let g = abelian_from_relations(2, &IntMatrix::from_i64_rows(&[&[2, 0]])).unwrap();
    assert_eq!((g.free_rank, g.torsion.clone()), (1, big(&[2])));
    let g = abelian_from_relations(1, &IntMatrix::zeros(0, 1)).unwrap();
    assert_eq!(g.to_string(), "Z");
    let g =
        abelian_from_relations(3, &IntMatrix::from_i64_rows(&[&[1, -1, 0], &[0, 1, -1]])).unwrap();
    assert_eq!(g.to_string(), "Z");
}

#[test]
fn kernel_values() {
    let z2 = abelian_from_relations(2, &IntMatrix::zeros(0, 2)).unwrap();
    let k = kernel_of_abelian_map(&z2, &IntMatrix::from_i64_rows(&[&[1, 1]])).unwrap();
    assert_eq!(k, vec![big(&[1, -1])]);
    let zt = abelian_from_relations(2, &IntMatrix::from_i64_rows(&[&[0, 2]])).unwrap();
    let k = kernel_of_abelian_map(&zt, &IntMatrix::from_i64_rows(&[&[1, 0]])).unwrap();
    assert_eq!(k, vec![big(&[0, 1])]);
    let k = kernel_of_abelian_map(&z2, &IntMatrix::from_i64_rows(&[&[2, 0], &[0, 0]])).unwrap();
    assert_eq!(k, vec![big(&[0, 1])]);
}

#[test]
fn component_counts() {
    assert_eq!(irreducible_components(&example_4_1()), 2);
    assert_eq!(irreducible_components(&free(1)), 1);
    assert_eq!(irreducible_components(&g2()), 2);
    assert_eq!(
        irreducible_components(&hurwitz_product(&g2(), &abelian(1))),
        2
    );
    let z2 = hurwitz_product(&abelian(1), &abelian(1));
    assert_eq!((z2.num_generators(), irreducible_components(&z2)), (2, 1));
}

#[test]
fn hurwitz_detection() {
    assert!(is_hurwitz_presentation(&g2()));
    assert!(!is_hurwitz_presentation(&example_4_1()));
    for n in 1..5 {
        assert!(is_hurwitz_presentation(&abelian(n)));
    }
}

#[test]
fn rewriting_rows() {
    let m = rs_rewrite(&example_4_1());
    // columns are b₂, b₃
    let lp = |low: i64, c: &[i64]| LaurentPoly::new(low, big(c));
    let unit_multiple = |row: &[LaurentPoly], want: &[LaurentPoly]| {
        [1i64, -1].iter().any(|&s| {
            (-3..=3).any(|k| {
                row.iter()
                    .zip(want)
                    .all(|(a, b)| a == &b.shift(k).scale(&BigInt::from(s)))
            })
        })
    };
    assert!(unit_multiple(&m.rows[0], &[lp(0, &[-1]), lp(1, &[1])]));
    assert!(unit_multiple(&m.rows[1], &[lp(1, &[-1]), lp(0, &[-1, 2])]));
    let f = rs_rewrite(&free(2));
    assert!(f.rows.is_empty());
    assert_eq!(f.num_module_generators, 1);
}

#[test]
fn golden_alexander_polynomials() {
    assert_eq!(
        alexander_polynomial(&example_4_1()).delta,
        Delta::Poly(tm1().pow(2))
    );
    assert_eq!(
        alexander_polynomial(&example_4_2()).delta,
        Delta::Poly(&p(&[1, -1]) * &tp1().pow(2))
    );
    assert_eq!(
        alexander_polynomial(&g2()).delta,
        Delta::Poly(p(&[-1, 0, 1]))
    );
    for n in 1..=5usize {
        let mut want = tm1().pow(n as u32 - 1);
        if n % 2 == 0 {
            want = -&want;
        }
        assert_eq!(alexander_polynomial(&abelian(n)).delta, Delta::Poly(want));
    }
    assert_eq!(alexander_polynomial(&free(2)).delta, Delta::Zero);
}

#[test]
fn integral_module_values() {
    let m = integral_module(&g2(), 2).unwrap();
    assert_eq!(m.group.free_rank, 2);
    assert_eq!(charpoly(&m.action), p(&[-1, 0, 1]));
    let m = integral_module(&abelian(2), 1).unwrap();
    assert_eq!(m.group.free_rank, 1);
    assert_eq!(m.action, IntMatrix::identity(1));
    assert_eq!(charpoly(&m.action), p(&[1, -1]));
    let m = integral_module(&free(1), 1).unwrap();
    assert!(m.group.is_trivial());
}

#[test]
fn shift_equivariance_values() {
    assert!(shift_equivariance_check(&example_4_1(), 3));
    assert!(shift_equivariance_check(&example_4_2(), 3));
    assert!(shift_equivariance_check(&g2(), 4));
}

#[test]
fn irreducible_squarefree_realizations() {
    let c = realize_irreducible_squarefree(&cyclotomic(6)).unwrap();
    let layer = &c.layers[0];
    assert_eq!(
        (layer.k, layer.d, layer.p.clone()),
        (6, 2, Some(p(&[0, 1])))
    );
    assert_eq!(c.num_generators(), 3);
    assert_eq!(c.computed_delta, cyclotomic(6));
    let c = realize_irreducible_squarefree(&IntPoly::one()).unwrap();
    assert_eq!(c.num_generators(), 1);
    assert_eq!(c.computed_delta, IntPoly::one());
    assert!(matches!(
        realize_irreducible_squarefree(&cyclotomic(3)),
        Err(RealizeError::PreconditionFailed(_))
    ));
}

#[test]
fn irreducible_realizations() {
    let c = realize_irreducible(&cyclotomic(6).pow(2)).unwrap();
    assert_eq!(c.layers.len(), 2);
    assert_eq!(c.computed_delta, cyclotomic(6).pow(2));
    assert_eq!(
        realize_irreducible(&IntPoly::one()).unwrap().computed_delta,
        IntPoly::one()
    );
    assert!(matches!(
        realize_irreducible(&(&tm1() * &tp1())),
        Err(RealizeError::PreconditionFailed(_))
    ));
}

#[test]
fn reducible_layers() {
    let c = realize_reducible_layer(&p(&[-1, 0, 1])).unwrap();
    assert_eq!((c.layers[0].k, c.num_generators()), (2, 3));
    assert_eq!(c.computed_delta, p(&[-1, 0, 1]));
    let c = realize_reducible_layer(&tm1()).unwrap();
    assert_eq!(c.computed_delta, p(&[1, -1]));
    assert!(realize_reducible_layer(&cyclotomic(6)).is_err());
}

#[test]
fn theorem2_realizations() {
    let c = realize_theorem2(&(&tm1() * &tp1())).unwrap();
    assert_eq!(c.layers.len(), 1);
    assert_eq!(c.computed_delta, p(&[-1, 0, 1]));
    let target = &(&tm1().pow(2) * &tp1().pow(2)) * &cyclotomic(6);
    let c = realize_theorem2(&target).unwrap();
    assert_eq!(c.layers.len(), 3);
    assert_eq!(c.computed_delta, target);
    assert!(matches!(
        realize_theorem2(&tp1().pow(2)),
        Err(RealizeError::PreconditionFailed(_))
    ));
}

#[test]
fn theorem3_realizations() {
    let c = realize_pm(1, 1).unwrap();
    assert_eq!(c.computed_delta, p(&[-1, 0, 1]));
    let c = realize_pm(2, 0).unwrap();
    assert_eq!(c.num_generators(), 3);
    assert_eq!(c.computed_delta, tm1().pow(2));
    assert_eq!(
        realize_pm(1, 2).unwrap_err(),
        RealizeError::NotRealizable { n: 1, k: 2 }
    );
}
