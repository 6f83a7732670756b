//! Integer involutions: splitting (ℤⁿ, h) with h² = Id into copies of
//! A₊ (identity on ℤ), A₋ (negation on ℤ) and A₊₋ (the swap on ℤ²).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{abelian_from_relations, charpoly, integer_kernel, FgAbelianGroup, IntMatrix};
use crate::poly::IntPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvolutionError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("h·h is not the identity")]
    NotInvolution,
    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
}

/// `U⁻¹·h·U = diag(I_{n1}, −I_{n2}, swap, …, swap)` with `n3` swaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionDecomposition {
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    pub basis: IntMatrix,
}

impl InvolutionDecomposition {
    pub fn rank(&self) -> usize {
        self.n1 + self.n2 + 2 * self.n3
    }

    pub fn block(&self) -> IntMatrix {
        canonical_block(self.n1, self.n2, self.n3)
    }

    /// Checks `h·U = U·block` and `det U = ±1`.
    pub fn verify(&self, h: &IntMatrix) -> bool {
        self.basis.is_unimodular() && h.mul(&self.basis) == self.basis.mul(&self.block())
    }
}

pub fn canonical_block(n1: usize, n2: usize, n3: usize) -> IntMatrix {
    let mut blocks = Vec::new();
    if n1 > 0 {
        blocks.push(IntMatrix::identity(n1));
    }
    if n2 > 0 {
        blocks.push(IntMatrix::identity(n2).neg());
    }
    let swap = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
    blocks.extend(std::iter::repeat_n(swap, n3));
    IntMatrix::direct_sum(&blocks)
}

type Bits = Vec<bool>;

fn xor_into(dst: &mut Bits, src: &Bits) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

/// Basis of the right null space of `rows` over GF(2), one vector per free
/// column of the reduced row echelon form.
fn gf2_kernel(mut rows: Vec<Bits>, n: usize) -> Vec<Bits> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c]) else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] {
                xor_into(row, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![false; n];
            v[free] = true;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = rows[i][free];
            }
            v
        })
        .collect()
}

#[derive(Clone, Copy)]
enum RowOp {
    Add(usize, usize),
    Swap(usize, usize),
}

/// Reduces `bits` to reduced echelon form on the coordinates `range`,
/// reporting every row operation. Returns the pivot coordinate of each row,
/// or `None` if the rows are dependent on `range`.
fn gf2_echelon(
    bits: &mut [Bits],
    range: std::ops::Range<usize>,
    mut record: impl FnMut(RowOp),
) -> Option<Vec<usize>> {
    let k = bits.len();
    let mut pivots = Vec::with_capacity(k);
    let mut r = 0;
    for c in range {
        if r == k {
            break;
        }
        let Some(p) = (r..k).find(|&i| bits[i][c]) else {
            continue;
        };
        if p != r {
            bits.swap(r, p);
            record(RowOp::Swap(r, p));
        }
        for i in 0..k {
            if i != r && bits[i][c] {
                let src = bits[r].clone();
                xor_into(&mut bits[i], &src);
                record(RowOp::Add(i, r));
            }
        }
        pivots.push(c);
        r += 1;
    }
    (r == k).then_some(pivots)
}

fn combine(basis: &[Vec<BigInt>], coeffs: &[BigInt], dim: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); dim];
    for (v, c) in basis.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

pub fn decompose(h: &IntMatrix) -> Result<InvolutionDecomposition, InvolutionError> {
    if !h.is_square() {
        return Err(InvolutionError::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let n = h.rows();
    let id = IntMatrix::identity(n);
    if h.mul(h) != id {
        return Err(InvolutionError::NotInvolution);
    }
    let plus = integer_kernel(&h.sub(&id));
    let minus = integer_kernel(&h.add(&id));
    let (np, nm) = (plus.len(), minus.len());
    if np + nm != n {
        return Err(InvolutionError::VerificationFailed(format!(
            "eigenlattices have ranks {np} + {nm} != {n}"
        )));
    }

    // M/M' is the set of 0/1 coordinate vectors v with E·v ≡ 0 (mod 2),
    // where the columns of E are the bases of M₊ and M₋.
    let e_cols: Vec<&Vec<BigInt>> = plus.iter().chain(&minus).collect();
    let e_mod2: Vec<Bits> = (0..n)
        .map(|i| e_cols.iter().map(|col| col[i].is_odd()).collect())
        .collect();
    let mut reps = gf2_kernel(e_mod2, n);
    let n3 = reps.len();

    // First round: echelon form on the M₋ coordinates.
    let minus_pivots = gf2_echelon(&mut reps, np..n, |_| {}).ok_or_else(|| {
        InvolutionError::VerificationFailed(
            "M₋ parts of coset representatives are dependent".into(),
        )
    })?;
    let mut minus_basis = minus.clone();
    for (rep, &pc) in reps.iter().zip(&minus_pivots) {
        let beta: Vec<BigInt> = rep[np..].iter().map(|&b| BigInt::from(b as u8)).collect();
        minus_basis[pc - np] = combine(&minus, &beta, n);
    }
    // In the new M₋ basis each q_i is a unit vector; track it exactly.
    let mut gamma: Vec<Vec<BigInt>> = minus_pivots
        .iter()
        .map(|&pc| {
            let mut g = vec![BigInt::zero(); nm];
            g[pc - np] = BigInt::one();
            g
        })
        .collect();

    // Second round: echelon form on the M₊ coordinates. Corrections stay in
    // M₊, so the M₋ parts change by elementary integer operations only.
    let mut ops = Vec::new();
    let plus_pivots = gf2_echelon(&mut reps, 0..np, |op| ops.push(op)).ok_or_else(|| {
        InvolutionError::VerificationFailed(
            "M₊ parts of coset representatives are dependent".into(),
        )
    })?;
    for op in ops {
        match op {
            RowOp::Add(i, j) => {
                let src = gamma[j].clone();
                for (x, y) in gamma[i].iter_mut().zip(&src) {
                    *x += y;
                }
            }
            RowOp::Swap(i, j) => gamma.swap(i, j),
        }
    }

    let mut plus_basis = plus.clone();
    let mut pairs = Vec::with_capacity(n3);
    for ((rep, g), &pc) in reps.iter().zip(&gamma).zip(&plus_pivots) {
        let alpha: Vec<BigInt> = rep[..np].iter().map(|&b| BigInt::from(b as u8)).collect();
        let p = combine(&plus, &alpha, n);
        let q = combine(&minus_basis, g, n);
        plus_basis[pc] = p.clone();
        let mut a = Vec::with_capacity(n);
        for (x, y) in p.iter().zip(&q) {
            let s = x + y;
            if s.is_odd() {
                return Err(InvolutionError::VerificationFailed(
                    "coset representative is not integral".into(),
                ));
            }
            a.push(s / 2);
        }
        let ha = h.mul_vec(&a);
        pairs.push(if ha < a { (ha, a) } else { (a, ha) });
    }

    let mut columns: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    columns.extend(
        (0..np)
            .filter(|k| !plus_pivots.contains(k))
            .map(|k| plus_basis[k].clone()),
    );
    columns.extend(
        (0..nm)
            .filter(|k| !minus_pivots.contains(&(k + np)))
            .map(|k| minus_basis[k].clone()),
    );
    for (a, ha) in pairs {
        columns.push(a);
        columns.push(ha);
    }
    let decomposition = InvolutionDecomposition {
        n1: np - n3,
        n2: nm - n3,
        n3,
        basis: IntMatrix::from_columns(&columns, n),
    };
    if !decomposition.verify(h) {
        return Err(InvolutionError::VerificationFailed(
            "assembled basis does not conjugate h to the canonical block".into(),
        ));
    }
    Ok(decomposition)
}

/// Invariants of `G = ℤⁿ ⋊ ⟨h⟩` for `h` the canonical block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidirectStats {
    pub abelianization: FgAbelianGroup,
    /// `det(t·Id − h)`.
    pub char_t_minus_h: IntPoly,
    /// `det(h − t·Id)`, the Alexander polynomial convention.
    pub char_h_minus_t: IntPoly,
}

pub fn semidirect_stats(n1: usize, n2: usize, n3: usize) -> SemidirectStats {
    let h = canonical_block(n1, n2, n3);
    let n = h.rows();
    // generators e_1..e_n of ℤⁿ and the free generator x; relations e_i = h(e_i)
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut r: Vec<BigInt> = h.column(i);
            r[i] -= 1;
            r.push(BigInt::zero());
            r
        })
        .collect();
    let abelianization = abelian_from_relations(n + 1, &IntMatrix::from_rows(rows, n + 1))
        .expect("relation matrix has n + 1 columns");
    let char_h_minus_t = charpoly(&h);
    let char_t_minus_h = if n.is_multiple_of(2) {
        char_h_minus_t.clone()
    } else {
        -&char_h_minus_t
    };
    SemidirectStats {
        abelianization,
        char_t_minus_h,
        char_h_minus_t,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{smith_z, unimodular_inverse};

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn counts(d: &InvolutionDecomposition) -> (usize, usize, usize) {
        (d.n1, d.n2, d.n3)
    }

    #[test]
    fn small_examples() {
        let d = decompose(&IntMatrix::identity(2)).unwrap();
        assert_eq!(counts(&d), (2, 0, 0));
        let d = decompose(&m(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(counts(&d), (0, 0, 1));
        let h = m(&[&[1, 1], &[0, -1]]);
        let d = decompose(&h).unwrap();
        assert_eq!(counts(&d), (0, 0, 1));
        assert_eq!(d.basis, m(&[&[0, 1], &[1, -1]]));
        assert!(d.verify(&h));
    }

    #[test]
    fn rejects_non_involutions() {
        assert_eq!(
            decompose(&m(&[&[1, 1], &[0, 1]])),
            Err(InvolutionError::NotInvolution)
        );
        assert!(matches!(
            decompose(&IntMatrix::zeros(2, 3)),
            Err(InvolutionError::NotSquare { .. })
        ));
    }

    #[test]
    fn empty_and_negation() {
        let d = decompose(&IntMatrix::zeros(0, 0)).unwrap();
        assert_eq!(counts(&d), (0, 0, 0));
        let d = decompose(&IntMatrix::identity(3).neg()).unwrap();
        assert_eq!(counts(&d), (0, 3, 0));
    }

    #[test]
    fn n3_matches_two_rank_of_quotient() {
        let b = IntMatrix::direct_sum(&[m(&[&[1, 1], &[0, -1]]), IntMatrix::identity(1)]);
        let w = m(&[&[1, 2, 0], &[0, 1, 1], &[0, 0, 1]]);
        let h = w.mul(&b).mul(&unimodular_inverse(&w).unwrap());
        let d = decompose(&h).unwrap();
        let plus = integer_kernel(&h.sub(&IntMatrix::identity(3)));
        let minus = integer_kernel(&h.add(&IntMatrix::identity(3)));
        let cols: Vec<Vec<BigInt>> = plus.into_iter().chain(minus).collect();
        let twos = smith_z(&IntMatrix::from_columns(&cols, 3))
            .diagonal()
            .iter()
            .filter(|x| **x == BigInt::from(2))
            .count();
        assert_eq!((d.n1, d.n3), (1, twos));
        assert!(d.verify(&h));
    }

    #[test]
    fn lemma_statistics() {
        let s = semidirect_stats(0, 0, 1);
        assert_eq!(s.abelianization.free_rank, 2);
        assert!(s.abelianization.torsion.is_empty());
        assert_eq!(s.char_t_minus_h, IntPoly::from_i64s(&[-1, 0, 1]));
        let s = semidirect_stats(1, 0, 0);
        assert_eq!(s.abelianization.to_string(), "Z^2");
        assert_eq!(s.char_t_minus_h, IntPoly::from_i64s(&[-1, 1]));
        let s = semidirect_stats(0, 1, 0);
        assert_eq!(s.abelianization.to_string(), "Z + Z/2");
        assert_eq!(s.char_t_minus_h, IntPoly::from_i64s(&[1, 1]));
        assert_eq!(s.char_h_minus_t, IntPoly::from_i64s(&[-1, -1]));
    }
}
