//! Reidemeister–Schreier rewriting into a Λ-module presentation of N/N′ and
//! the Alexander polynomial.
//!
//! Schreier representatives are the powers of x₁. The module generator
//! `b_j` (j ≥ 2) stands for `a_{0,j} = x_j x₁⁻¹`, and `t^k·b_j` for
//! `a_{k,j} = x₁^k x_j x₁^{-(k+1)}`, so that `t` acts as conjugation by x₁.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cgroup::{irreducible_components, is_hurwitz_presentation, CPresentation, Word};
use crate::linalg::{
    abelian_from_relations, charpoly, companion, smith_qt_factors, FgAbelianGroup, IntMatrix,
    PolyMatrix,
};
use crate::poly::{is_squarefree, IntPoly, LaurentPoly, RatPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlexError {
    #[error("no central power x1^{k} could be certified from the relations")]
    NoCentralPower { k: u64 },
    #[error("central power must be positive")]
    ZeroPower,
}

/// Λ-presentation: one row per group relation, column `c` is `b_{c+2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderModule {
    pub num_module_generators: usize,
    pub rows: Vec<Vec<LaurentPoly>>,
}

/// Abelianized rewriting of a letter sequence starting at state `s`.
/// Returns the row and the final state.
fn rewrite_letters(
    letters: impl IntoIterator<Item = (usize, i64)>,
    m: usize,
    mut s: i64,
) -> (Vec<LaurentPoly>, i64) {
    let mut row = vec![LaurentPoly::zero(); m.saturating_sub(1)];
    let one = BigInt::one();
    let minus_one = -BigInt::one();
    for (g, e) in letters {
        debug_assert!(e == 1 || e == -1);
        if e > 0 {
            if g >= 2 {
                row[g - 2].add_term(&one, s);
            }
            s += 1;
        } else {
            s -= 1;
            if g >= 2 {
                row[g - 2].add_term(&minus_one, s);
            }
        }
    }
    (row, s)
}

fn generic_row(r: &crate::cgroup::ConjRelation, m: usize) -> Vec<LaurentPoly> {
    rewrite_letters(r.relator_letters(), m, 0).0
}

pub fn rs_rewrite(g: &CPresentation) -> AlexanderModule {
    let m = g.num_generators();
    let rows = g
        .relations()
        .iter()
        .map(|r| {
            if r.conjugator.is_empty() {
                let mut row = vec![LaurentPoly::zero(); m - 1];
                if r.left >= 2 {
                    row[r.left - 2].add_term(&BigInt::one(), 0);
                }
                if r.right >= 2 {
                    row[r.right - 2].add_term(&-BigInt::one(), 0);
                }
                row
            } else {
                generic_row(r, m)
            }
        })
        .collect();
    AlexanderModule {
        num_module_generators: m - 1,
        rows,
    }
}

/// Confirms that rewriting `x₁^k r x₁^{-k}` gives `t^k` times the rewrite of
/// `r` for k = 1..=s, and that every stored row is a unit multiple of the
/// plain rewrite.
pub fn shift_equivariance_check(g: &CPresentation, s: u32) -> bool {
    let m = g.num_generators();
    let module = rs_rewrite(g);
    g.relations().iter().zip(&module.rows).all(|(r, stored)| {
        let base = generic_row(r, m);
        if !is_unit_multiple(stored, &base) {
            return false;
        }
        (1..=s as i64).all(|k| {
            let letters = std::iter::repeat_n((1, 1), k as usize)
                .chain(r.relator_letters())
                .chain(std::iter::repeat_n((1, -1), k as usize));
            let (row, end) = rewrite_letters(letters, m, 0);
            end == 0 && row.iter().zip(&base).all(|(a, b)| *a == b.shift(k))
        })
    })
}

fn is_unit_multiple(a: &[LaurentPoly], b: &[LaurentPoly]) -> bool {
    let Some(i) = b.iter().position(|x| !x.is_zero()) else {
        return a.iter().all(LaurentPoly::is_zero);
    };
    if a[i].is_zero() || a[i].coeffs().len() != b[i].coeffs().len() {
        return false;
    }
    let sign = if a[i].coeffs()[0] == b[i].coeffs()[0] {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let unit = LaurentPoly::monomial(sign, a[i].low() - b[i].low());
    a.iter().zip(b).all(|(x, y)| *x == &unit * y)
}

/// Module after eliminating generators that have a unit coefficient in some
/// row. Isomorphic to the original over Λ.
#[derive(Clone, Debug)]
pub struct ReducedModule {
    /// Surviving columns, as group generator indices (≥ 2).
    pub survivors: Vec<usize>,
    /// Nonzero rows over the surviving columns.
    pub rows: Vec<Vec<LaurentPoly>>,
}

pub fn reduce_module(module: &AlexanderModule) -> ReducedModule {
    let n = module.num_module_generators;
    let mut rows: Vec<Vec<LaurentPoly>> = module
        .rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut alive = vec![true; n];
    loop {
        let pivot = rows
            .iter()
            .enumerate()
            .find_map(|(i, r)| (0..n).find(|&c| alive[c] && r[c].is_unit()).map(|c| (i, c)));
        let Some((pr, pc)) = pivot else { break };
        let inv = rows[pr][pc].unit_inverse().unwrap();
        let prow: Vec<LaurentPoly> = rows.swap_remove(pr).iter().map(|x| x * &inv).collect();
        for r in rows.iter_mut() {
            if r[pc].is_zero() {
                continue;
            }
            let e = r[pc].clone();
            for (x, p) in r.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x = &*x - &(&e * p);
                }
            }
        }
        alive[pc] = false;
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    let cols: Vec<usize> = (0..n).filter(|&c| alive[c]).collect();
    ReducedModule {
        survivors: cols.iter().map(|c| c + 2).collect(),
        rows: rows
            .into_iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect(),
    }
}

impl ReducedModule {
    /// Rows with t-denominators cleared, as a matrix over ℚ[t].
    pub fn to_poly_matrix(&self) -> PolyMatrix {
        let data = self
            .rows
            .iter()
            .map(|r| {
                let low = r
                    .iter()
                    .filter(|x| !x.is_zero())
                    .map(|x| x.low())
                    .min()
                    .unwrap_or(0);
                r.iter()
                    .map(|x| {
                        if x.is_zero() {
                            RatPoly::zero()
                        } else {
                            x.shift(-low).to_poly_nonneg().to_rat()
                        }
                    })
                    .collect()
            })
            .collect();
        PolyMatrix::new(data, self.survivors.len())
    }
}

trait NonNegPoly {
    fn to_poly_nonneg(&self) -> IntPoly;
}

impl NonNegPoly for LaurentPoly {
    /// The polynomial with these exact exponents; `low` must be ≥ 0.
    fn to_poly_nonneg(&self) -> IntPoly {
        debug_assert!(self.low() >= 0);
        self.to_poly().shift(self.low() as usize)
    }
}

/// Δ, with the identically-zero case kept apart from any polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Delta {
    /// (N/N′) ⊗ ℂ is infinite-dimensional.
    Zero,
    Poly(IntPoly),
    /// Characteristic polynomial with non-integral coefficients.
    NonIntegral(RatPoly),
}

impl Delta {
    pub fn as_poly(&self) -> Option<&IntPoly> {
        match self {
            Delta::Poly(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Delta::Zero => write!(f, "0 (infinite-dimensional)"),
            Delta::Poly(p) => write!(f, "{p}"),
            Delta::NonIntegral(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AlexanderResult {
    pub delta: Delta,
    /// Nonunit ℚ[t] invariant factors, monic, t-powers stripped.
    pub invariant_factors: Vec<RatPoly>,
    pub components: usize,
    /// Size of the Λ-matrix handed to the Smith form, after elimination.
    pub reduced_shape: (usize, usize),
}

impl AlexanderResult {
    pub fn factors_squarefree(&self) -> bool {
        self.invariant_factors.iter().all(|f| match f.to_int() {
            Some(p) => is_squarefree(&p),
            None => f.gcd(&f.derivative()).is_constant(),
        })
    }
}

pub fn alexander_polynomial(g: &CPresentation) -> AlexanderResult {
    let components = irreducible_components(g);
    let red = reduce_module(&rs_rewrite(g));
    let shape = (red.rows.len(), red.survivors.len());
    let done = |delta, invariant_factors| AlexanderResult {
        delta,
        invariant_factors,
        components,
        reduced_shape: shape,
    };
    if red.survivors.is_empty() {
        return done(Delta::Poly(IntPoly::one()), Vec::new());
    }
    if red.rows.len() < red.survivors.len() {
        return done(Delta::Zero, Vec::new());
    }
    let s = smith_qt_factors(&red.to_poly_matrix());
    if s.free_cokernel_rank > 0 {
        return done(Delta::Zero, Vec::new());
    }
    let factors: Vec<RatPoly> = s
        .invariant_factors
        .iter()
        .map(RatPoly::strip_t_power)
        .filter(|f| !f.is_constant())
        .collect();
    let mut prod = factors.iter().fold(RatPoly::one(), |acc, f| &acc * f);
    if prod.degree().unwrap_or(0) % 2 == 1 {
        prod = -&prod;
    }
    let delta = match prod.to_int() {
        Some(p) => Delta::Poly(p),
        None => Delta::NonIntegral(prod),
    };
    if let Delta::Poly(p) = &delta {
        debug_assert!(
            !is_hurwitz_presentation(g) || p.coeff(0).abs().is_one(),
            "Hurwitz presentation with Δ(0) ≠ ±1"
        );
    }
    done(delta, factors)
}

/// N/N′ as a finitely generated abelian group together with the action of
/// conjugation by x₁ on its free part.
#[derive(Clone, Debug)]
pub struct IntegralModule {
    pub k: u64,
    /// Generator `i` is `ā_{l,j}` for `generators[i] = (l, j)`, 0 ≤ l < k,
    /// with j running over the generators kept by unit elimination.
    pub generators: Vec<(u64, usize)>,
    pub group: FgAbelianGroup,
    /// Matrix of the shift on the free part, in the group's free basis.
    pub action: IntMatrix,
    /// Shift `ā_{l,j} ↦ ā_{l+1 mod k, j}` on the generators (column images).
    pub shift: IntMatrix,
}

impl IntegralModule {
    pub fn index_of(&self, l: u64, j: usize) -> Option<usize> {
        self.generators.iter().position(|&g| g == (l % self.k, j))
    }
}

fn syntactic_central_power(g: &CPresentation, k: u64) -> bool {
    let plus = Word::power_of(1, k as i64);
    let minus = plus.inverse();
    (2..=g.num_generators()).all(|j| {
        g.relations()
            .iter()
            .any(|r| r.left == j && r.right == j && (r.conjugator == plus || r.conjugator == minus))
    })
}

/// Every surviving generator has a row `f·b_j` with `f | t^k − 1`.
fn reduced_central_power(red: &ReducedModule, k: u64) -> bool {
    let target = IntPoly::t_pow_minus_one(k as usize);
    (0..red.survivors.len()).all(|c| {
        red.rows.iter().any(|r| {
            r.iter().enumerate().all(|(i, x)| (i == c) != x.is_zero())
                && target.exact_div(&r[c].to_poly()).is_some()
        })
    })
}

/// Finite ℤ-presentation of N/N′ when x₁^k is certified central, i.e.
/// `a_{l+k,j} = a_{l,j}` for every generator.
pub fn integral_module(g: &CPresentation, k: u64) -> Result<IntegralModule, AlexError> {
    if k == 0 {
        return Err(AlexError::ZeroPower);
    }
    let red = reduce_module(&rs_rewrite(g));
    if !syntactic_central_power(g, k) && !reduced_central_power(&red, k) {
        return Err(AlexError::NoCentralPower { k });
    }
    let s = red.survivors.len();
    let n = k as usize * s;
    let generators: Vec<(u64, usize)> = (0..k)
        .flat_map(|l| red.survivors.iter().map(move |&j| (l, j)))
        .collect();
    let kk = k as i64;
    let mut rel_rows = Vec::new();
    for row in &red.rows {
        for l in 0..kk {
            let mut v = vec![BigInt::zero(); n];
            for (c, x) in row.iter().enumerate() {
                for (e, coef) in x.terms() {
                    let idx = (e + l).rem_euclid(kk) as usize * s + c;
                    v[idx] += coef;
                }
            }
            rel_rows.push(v);
        }
    }
    let relations = IntMatrix::from_rows(rel_rows, n);
    let group = abelian_from_relations(n, &relations).expect("dimensions agree");
    let mut shift = IntMatrix::zeros(n, n);
    for i in 0..n {
        shift[((i + s) % n, i)] = BigInt::one();
    }
    let free = group.free_basis();
    let mut action = IntMatrix::zeros(free.len(), free.len());
    for (c, v) in free.iter().enumerate() {
        let image = group.free_coords(&shift.mul_vec(v));
        for (r, x) in image.into_iter().enumerate() {
            action[(r, c)] = x;
        }
    }
    Ok(IntegralModule {
        k,
        generators,
        group,
        action,
        shift,
    })
}

/// Matrix of the shift on N/N′ ⊗ ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftAction {
    pub matrix: IntMatrix,
    /// When integral: the ℤ-basis `ā_{l,j}` as `(l, j)` pairs.
    pub basis: Vec<(u64, usize)>,
    /// Whether `basis` is an honest ℤ-basis of N/N′.
    pub integral: bool,
}

/// The shift action on a derived basis. When elimination leaves a single
/// generator `b_j` with cyclic relation module `Λ/(f)`, `f` monic with unit
/// constant term, the basis is `ā_{0,j}, …, ā_{deg f − 1, j}` and the matrix
/// is the companion of `f`. Otherwise a block-companion rational form of the
/// invariant factors is returned when they are integral.
pub fn shift_action(g: &CPresentation) -> Option<ShiftAction> {
    let red = reduce_module(&rs_rewrite(g));
    if red.survivors.len() == 1 {
        let polys: Vec<IntPoly> = red.rows.iter().map(|r| r[0].to_poly()).collect();
        let unit = |x: Option<&BigInt>| x.is_some_and(|c| c.abs().is_one());
        let mut cands: Vec<&IntPoly> = polys
            .iter()
            .filter(|p| unit(p.leading()) && unit(p.coeffs().first()))
            .collect();
        cands.sort_by_key(|p| p.degree());
        for f in cands {
            if polys.iter().all(|p| p.exact_div(f).is_some()) {
                let monic = if f.leading().unwrap().is_negative() {
                    -f
                } else {
                    f.clone()
                };
                let j = red.survivors[0];
                if monic.degree() == Some(0) {
                    return Some(ShiftAction {
                        matrix: IntMatrix::zeros(0, 0),
                        basis: Vec::new(),
                        integral: true,
                    });
                }
                let deg = monic.degree().unwrap() as u64;
                return Some(ShiftAction {
                    matrix: companion(&monic).expect("monic of positive degree"),
                    basis: (0..deg).map(|l| (l, j)).collect(),
                    integral: true,
                });
            }
        }
    }
    let res = alexander_polynomial(g);
    if res.delta == Delta::Zero {
        return None;
    }
    let mut blocks = Vec::new();
    for f in &res.invariant_factors {
        blocks.push(companion(&f.to_int()?).ok()?);
    }
    let matrix = IntMatrix::direct_sum(&blocks);
    debug_assert_eq!(Delta::Poly(charpoly(&matrix)), res.delta);
    Some(ShiftAction {
        matrix,
        basis: Vec::new(),
        integral: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cgroup::{abelian, example_4_1, example_4_2, free, g2};

    fn lp(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::new(low, c.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn rewriting_example_4_1() {
        let m = rs_rewrite(&example_4_1());
        // x3 = x1⁻¹x2x1: t⁻²(b2 − t·b3)
        assert_eq!(m.rows[0], vec![lp(-2, &[1]), lp(-1, &[-1])]);
        // x3 = x1⁻¹x3x2x3⁻¹x1: t⁻²(t·b2 + (1 − 2t)·b3)
        assert_eq!(m.rows[1], vec![lp(-1, &[1]), lp(-2, &[1, -2])]);
        let f = rs_rewrite(&free(2));
        assert!(f.rows.is_empty());
        assert_eq!(f.num_module_generators, 1);
    }

    #[test]
    fn golden_deltas() {
        let d = |g: &CPresentation| alexander_polynomial(g).delta;
        assert_eq!(d(&example_4_1()), Delta::Poly(poly(&[1, -2, 1])));
        assert_eq!(d(&example_4_2()), Delta::Poly(poly(&[1, 1, -1, -1])));
        assert_eq!(d(&g2()), Delta::Poly(poly(&[-1, 0, 1])));
        for n in 1..=5u32 {
            let expected = poly(&[1, -1]).pow(n - 1);
            assert_eq!(d(&abelian(n as usize)), Delta::Poly(expected));
        }
        assert_eq!(d(&free(2)), Delta::Zero);
        assert_eq!(d(&free(3)), Delta::Zero);
        assert_eq!(d(&free(1)), Delta::Poly(IntPoly::one()));
    }

    #[test]
    fn shift_equivariance() {
        for g in [example_4_1(), example_4_2(), g2(), abelian(3)] {
            assert!(shift_equivariance_check(&g, 4));
        }
    }

    #[test]
    fn golden_matrices() {
        let a = shift_action(&example_4_1()).unwrap();
        assert!(a.integral);
        assert_eq!(a.matrix, IntMatrix::from_i64_rows(&[&[0, -1], &[1, 2]]));
        assert_eq!(a.basis, vec![(0, 3), (1, 3)]);
        let b = shift_action(&example_4_2()).unwrap();
        assert_eq!(
            b.matrix,
            IntMatrix::from_i64_rows(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, -1]])
        );
        assert_eq!(b.basis, vec![(0, 3), (1, 3), (2, 3)]);
    }

    #[test]
    fn integral_examples() {
        let im = integral_module(&g2(), 2).unwrap();
        assert_eq!(im.group.free_rank, 2);
        assert_eq!(charpoly(&im.action), poly(&[-1, 0, 1]));

        let im = integral_module(&abelian(2), 1).unwrap();
        assert_eq!(im.group.free_rank, 1);
        assert_eq!(im.action, IntMatrix::identity(1));

        let im = integral_module(&free(1), 1).unwrap();
        assert!(im.group.is_trivial());

        assert_eq!(
            integral_module(&example_4_1(), 3).unwrap_err(),
            AlexError::NoCentralPower { k: 3 }
        );
    }
}
