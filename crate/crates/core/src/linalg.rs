//! Exact linear algebra over ℤ and ℚ[t]: Smith normal forms, characteristic
//! polynomials, finitely generated abelian groups and maps between them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::{IntPoly, RatPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("polynomial {0} is not monic of positive degree")]
    NotMonic(IntPoly),
    #[error("map is ill-defined: relation {relation} of the domain has nonzero image")]
    MapIllDefined { relation: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        IntMatrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            cols,
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<BigInt>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn add(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &IntMatrix) -> IntMatrix {
        self.add(&rhs.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.to_rows();
        let mut prev = BigInt::one();
        let mut sign = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                m.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        if n == 0 {
            BigInt::one()
        } else {
            sign * &m[n - 1][n - 1]
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[IntMatrix]) -> IntMatrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{self}")
    }
}

/// Nested-list form, e.g. `[[0, -1], [1, 2]]`.
impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Entries of a Euclidean domain, as needed by the Smith normal form driver.
trait Euclid: Clone {
    type Key: Ord;
    fn zero_el() -> Self;
    fn one_el() -> Self;
    fn is_zero_el(&self) -> bool;
    /// Pivot preference; smaller keys are preferred.
    fn pivot_key(&self) -> Self::Key;
    fn div_rem(&self, d: &Self) -> (Self, Self);
    fn sub_mul(&self, q: &Self, x: &Self) -> Self;
    fn add(&self, x: &Self) -> Self;
    fn mul(&self, x: &Self) -> Self;
    /// A unit `u` (and its inverse) such that `u·self` is normalized.
    fn normalizer(&self) -> (Self, Self);
}

impl Euclid for BigInt {
    type Key = BigInt;
    fn zero_el() -> Self {
        Zero::zero()
    }
    fn one_el() -> Self {
        One::one()
    }
    fn is_zero_el(&self) -> bool {
        Zero::is_zero(self)
    }
    fn pivot_key(&self) -> BigInt {
        self.abs()
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        Integer::div_rem(self, d)
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Self {
        self - q * x
    }
    fn add(&self, x: &Self) -> Self {
        self + x
    }
    fn mul(&self, x: &Self) -> Self {
        self * x
    }
    fn normalizer(&self) -> (Self, Self) {
        let u = if self.is_negative() {
            BigInt::from(-1)
        } else {
            BigInt::one()
        };
        (u.clone(), u)
    }
}

impl Euclid for RatPoly {
    type Key = (usize, BigRational);
    fn zero_el() -> Self {
        RatPoly::zero()
    }
    fn one_el() -> Self {
        RatPoly::one()
    }
    fn is_zero_el(&self) -> bool {
        RatPoly::is_zero(self)
    }
    fn pivot_key(&self) -> Self::Key {
        (
            self.degree().unwrap_or(0),
            self.leading().map(|l| l.abs()).unwrap_or_default(),
        )
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        RatPoly::div_rem(self, d)
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Self {
        self - &(q * x)
    }
    fn add(&self, x: &Self) -> Self {
        self + x
    }
    fn mul(&self, x: &Self) -> Self {
        self * x
    }
    fn normalizer(&self) -> (Self, Self) {
        match self.leading() {
            Some(l) => (RatPoly::constant(l.recip()), RatPoly::constant(l.clone())),
            None => (RatPoly::one(), RatPoly::one()),
        }
    }
}

type Mat<E> = Vec<Vec<E>>;

fn ident<E: Euclid>(n: usize) -> Mat<E> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { E::one_el() } else { E::zero_el() })
                .collect()
        })
        .collect()
}

/// Row and column transforms recorded by the Smith driver.
struct Transforms<E> {
    u: Option<Mat<E>>,
    u_inv: Option<Mat<E>>,
    v: Option<Mat<E>>,
    v_inv: Option<Mat<E>>,
}

impl<E: Euclid> Transforms<E> {
    fn new(rows: usize, cols: usize, track_rows: bool, track_cols: bool) -> Self {
        Transforms {
            u: track_rows.then(|| ident(rows)),
            u_inv: track_rows.then(|| ident(rows)),
            v: track_cols.then(|| ident(cols)),
            v_inv: track_cols.then(|| ident(cols)),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if let Some(u) = &mut self.u {
            u.swap(a, b);
        }
        if let Some(ui) = &mut self.u_inv {
            for row in ui.iter_mut() {
                row.swap(a, b);
            }
        }
    }

    /// Row `i` -= q · row `t`.
    fn row_sub(&mut self, i: usize, t: usize, q: &E) {
        if let Some(u) = &mut self.u {
            let rt = u[t].clone();
            for (x, y) in u[i].iter_mut().zip(&rt) {
                *x = x.sub_mul(q, y);
            }
        }
        if let Some(ui) = &mut self.u_inv {
            for row in ui.iter_mut() {
                row[t] = row[t].add(&q.mul(&row[i]));
            }
        }
    }

    /// Row `i` *= unit with inverse `inv`.
    fn row_scale(&mut self, i: usize, unit: &E, inv: &E) {
        if let Some(u) = &mut self.u {
            for x in u[i].iter_mut() {
                *x = x.mul(unit);
            }
        }
        if let Some(ui) = &mut self.u_inv {
            for row in ui.iter_mut() {
                row[i] = row[i].mul(inv);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(a, b);
            }
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap(a, b);
        }
    }

    /// Column `j` -= q · column `t`.
    fn col_sub(&mut self, j: usize, t: usize, q: &E) {
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row[j] = row[j].sub_mul(q, &row[t]);
            }
        }
        if let Some(vi) = &mut self.v_inv {
            let rj = vi[j].clone();
            for (x, y) in vi[t].iter_mut().zip(&rj) {
                *x = x.add(&q.mul(y));
            }
        }
    }
}

/// Diagonalize `d` in place with a divisibility chain on the diagonal.
/// Pivot: smallest key in the active block, ties to the lowest row then column.
fn smith_driver<E: Euclid>(d: &mut Mat<E>, cols: usize, tr: &mut Transforms<E>) -> usize {
    let rows = d.len();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = best_pivot(d, t, t..rows, t..cols) else {
            break;
        };
        move_pivot(d, tr, t, pi, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if d[i][t].is_zero_el() {
                    continue;
                }
                let (q, r) = d[i][t].div_rem(&d[t][t]);
                let rt = d[t].clone();
                for (x, y) in d[i].iter_mut().zip(&rt).skip(t) {
                    *x = x.sub_mul(&q, y);
                }
                tr.row_sub(i, t, &q);
                if !r.is_zero_el() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if d[t][j].is_zero_el() {
                    continue;
                }
                let (q, r) = d[t][j].div_rem(&d[t][t]);
                for row in d.iter_mut().skip(t) {
                    row[j] = row[j].sub_mul(&q, &row[t]);
                }
                tr.col_sub(j, t, &q);
                if !r.is_zero_el() {
                    clean = false;
                }
            }
            if !clean {
                // a remainder survived in row t or column t; it is the new pivot
                let cand = best_pivot(d, t, t..rows, t..t + 1)
                    .into_iter()
                    .chain(best_pivot(d, t, t..t + 1, t..cols))
                    .min_by(|a, b| {
                        d[a.0][a.1]
                            .pivot_key()
                            .cmp(&d[b.0][b.1].pivot_key())
                            .then(a.cmp(b))
                    })
                    .expect("nonzero remainder must exist");
                move_pivot(d, tr, t, cand.0, cand.1);
                continue;
            }
            // divisibility of the remaining block by the pivot
            let bad = (t + 1..rows).find(|&i| {
                (t + 1..cols)
                    .any(|j| !d[i][j].is_zero_el() && !d[i][j].div_rem(&d[t][t]).1.is_zero_el())
            });
            match bad {
                Some(i) => {
                    // row t += row i
                    let ri = d[i].clone();
                    for (x, y) in d[t].iter_mut().zip(&ri) {
                        *x = x.add(y);
                    }
                    let minus_one = E::zero_el().sub_mul(&E::one_el(), &E::one_el());
                    tr.row_sub(t, i, &minus_one);
                }
                None => break,
            }
        }
        let (unit, inv) = d[t][t].normalizer();
        for x in d[t].iter_mut() {
            *x = x.mul(&unit);
        }
        tr.row_scale(t, &unit, &inv);
        t += 1;
    }
    t
}

fn best_pivot<E: Euclid>(
    d: &Mat<E>,
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), E::Key)> = None;
    for i in rows {
        for j in cols.clone() {
            if d[i][j].is_zero_el() {
                continue;
            }
            let key = d[i][j].pivot_key();
            if best.as_ref().is_none_or(|(_, k)| key < *k) {
                best = Some(((i, j), key));
            }
        }
    }
    best.map(|(p, _)| p)
}

fn move_pivot<E: Euclid>(d: &mut Mat<E>, tr: &mut Transforms<E>, t: usize, pi: usize, pj: usize) {
    if pi != t {
        d.swap(pi, t);
        tr.swap_rows(pi, t);
    }
    if pj != t {
        for row in d.iter_mut() {
            row.swap(pj, t);
        }
        tr.swap_cols(pj, t);
    }
}

/// `u · a · v = d` with `u`, `v` unimodular and `d` diagonal with a
/// divisibility chain of positive entries followed by zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecompositionZ {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub d: IntMatrix,
    pub rank: usize,
}

impl SmithDecompositionZ {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

fn to_int_matrix(m: Mat<BigInt>, cols: usize) -> IntMatrix {
    IntMatrix::from_rows(m, cols)
}

pub fn smith_z(a: &IntMatrix) -> SmithDecompositionZ {
    let mut d = a.to_rows();
    let mut tr = Transforms::new(a.rows, a.cols, true, true);
    let rank = smith_driver(&mut d, a.cols, &mut tr);
    SmithDecompositionZ {
        u: to_int_matrix(tr.u.unwrap(), a.rows),
        u_inv: to_int_matrix(tr.u_inv.unwrap(), a.rows),
        v: to_int_matrix(tr.v.unwrap(), a.cols),
        v_inv: to_int_matrix(tr.v_inv.unwrap(), a.cols),
        d: IntMatrix::from_rows(d, a.cols),
        rank,
    }
}

/// Exact inverse of a matrix with determinant ±1.
pub fn unimodular_inverse(a: &IntMatrix) -> Option<IntMatrix> {
    if !a.is_square() {
        return None;
    }
    let s = smith_z(a);
    (s.rank == a.rows() && s.diagonal().iter().all(One::is_one)).then(|| s.v.mul(&s.u))
}

/// Smith form tracking column transforms only.
fn smith_z_cols(a: &IntMatrix) -> (Vec<BigInt>, IntMatrix, IntMatrix, usize) {
    let mut d = a.to_rows();
    let mut tr = Transforms::new(a.rows, a.cols, false, true);
    let rank = smith_driver(&mut d, a.cols, &mut tr);
    let diag = (0..rank).map(|i| d[i][i].clone()).collect();
    (
        diag,
        to_int_matrix(tr.v.unwrap(), a.cols),
        to_int_matrix(tr.v_inv.unwrap(), a.cols),
        rank,
    )
}

/// `det(h - t·Id)` by fraction-free elimination over ℤ[t]. The leading
/// coefficient is `(-1)^r`.
pub fn charpoly(h: &IntMatrix) -> IntPoly {
    assert!(
        h.is_square(),
        "characteristic polynomial of a non-square matrix"
    );
    let n = h.rows();
    if n == 0 {
        return IntPoly::one();
    }
    let mut m: Vec<Vec<IntPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = IntPoly::constant(h[(i, j)].clone());
                    if i == j {
                        &c - &IntPoly::t()
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let mut prev = IntPoly::one();
    for k in 0..n - 1 {
        // leading principal minors of h - t·Id have leading term (-t)^(k+1)
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &pivot) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
        }
        prev = pivot;
    }
    m[n - 1][n - 1].clone()
}

/// Matrix of multiplication by `t` on ℤ[t]/(psi) in the basis t⁰, …, t^(d-1).
pub fn companion(psi: &IntPoly) -> Result<IntMatrix, LinalgError> {
    let d = match psi.degree() {
        Some(d) if d >= 1 && psi.is_monic() => d,
        _ => return Err(LinalgError::NotMonic(psi.clone())),
    };
    let mut m = IntMatrix::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = BigInt::one();
    }
    for i in 0..d {
        m[(i, d - 1)] = -psi.coeff(i);
    }
    Ok(m)
}

/// Dense matrix over ℚ[t].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<RatPoly>>,
}

impl PolyMatrix {
    pub fn new(data: Vec<Vec<RatPoly>>, cols: usize) -> Self {
        for r in &data {
            assert_eq!(r.len(), cols, "ragged matrix rows");
        }
        PolyMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn identity(n: usize) -> Self {
        PolyMatrix::new(ident(n), n)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &RatPoly {
        &self.data[i][j]
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, rhs.rows);
        let data = (0..self.rows)
            .map(|i| {
                (0..rhs.cols)
                    .map(|j| {
                        (0..self.cols).fold(RatPoly::zero(), |acc, k| {
                            &acc + &(&self.data[i][k] * &rhs.data[k][j])
                        })
                    })
                    .collect()
            })
            .collect();
        PolyMatrix::new(data, rhs.cols)
    }
}

/// Smith decomposition over ℚ[t]: `u · a · v = d`.
#[derive(Clone, Debug)]
pub struct SmithDecompositionQt {
    /// Monic diagonal entries d₁ | d₂ | … | d_r (units included).
    pub invariant_factors: Vec<RatPoly>,
    /// Rank of the free part of the cokernel, `cols - r`.
    pub free_cokernel_rank: usize,
    pub u: Option<PolyMatrix>,
    pub v: Option<PolyMatrix>,
    pub d: PolyMatrix,
}

/// Invariant factors of the cokernel ℚ[t]^cols / (row space of `a`).
/// Records both transforms.
pub fn smith_qt(a: &PolyMatrix) -> SmithDecompositionQt {
    smith_qt_impl(a, true)
}

/// Same as [`smith_qt`] without recording transforms.
pub fn smith_qt_factors(a: &PolyMatrix) -> SmithDecompositionQt {
    smith_qt_impl(a, false)
}

fn smith_qt_impl(a: &PolyMatrix, track: bool) -> SmithDecompositionQt {
    let mut d = a.data.clone();
    let mut tr = Transforms::new(a.rows, a.cols, track, track);
    let rank = smith_driver(&mut d, a.cols, &mut tr);
    let invariant_factors = (0..rank).map(|i| d[i][i].clone()).collect();
    SmithDecompositionQt {
        invariant_factors,
        free_cokernel_rank: a.cols - rank,
        u: tr.u.map(|u| PolyMatrix::new(u, a.rows)),
        v: tr.v.map(|v| PolyMatrix::new(v, a.cols)),
        d: PolyMatrix::new(d, a.cols),
    }
}

/// ℤ^free_rank ⊕ ⊕ ℤ/dᵢ presented on `num_generators` generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbelianGroup {
    pub num_generators: usize,
    /// One relation per row, in the original generators.
    pub relations: IntMatrix,
    pub free_rank: usize,
    /// Invariant factors > 1 with d₁ | d₂ | ….
    pub torsion: Vec<BigInt>,
    /// `coords · x` expresses an element `x` (original generators) in the
    /// Smith basis; the first `rank` coordinates are the cyclic factors
    /// (including trivial ones), the rest span the free part.
    pub coords: IntMatrix,
    /// Row `i` is Smith generator `i` written in the original generators.
    pub basis: IntMatrix,
    /// Number of nonzero invariant factors (trivial ones included).
    pub rank: usize,
}

impl FgAbelianGroup {
    /// Coordinates of `x` on the free part (a quotient by torsion).
    pub fn free_coords(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.coords.mul_vec(x)[self.rank..].to_vec()
    }

    /// Free part generators written in the original generators.
    pub fn free_basis(&self) -> Vec<Vec<BigInt>> {
        (self.rank..self.num_generators)
            .map(|i| self.basis.row(i).to_vec())
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Cokernel invariants of the relation matrix (rows are relations).
pub fn abelian_from_relations(
    generators: usize,
    relations: &IntMatrix,
) -> Result<FgAbelianGroup, LinalgError> {
    if relations.cols() != generators {
        return Err(LinalgError::Dimension(format!(
            "relation matrix has {} columns for {} generators",
            relations.cols(),
            generators
        )));
    }
    let (diag, v, v_inv, rank) = smith_z_cols(relations);
    Ok(FgAbelianGroup {
        num_generators: generators,
        relations: relations.clone(),
        free_rank: generators - rank,
        torsion: diag.into_iter().filter(|d| !d.is_one()).collect(),
        coords: v.transpose(),
        basis: v_inv,
        rank,
    })
}

/// Saturated ℤ-basis of `{x : m·x = 0}`, in column Hermite form.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (_, v, _, rank) = smith_z_cols(m);
    let basis: Vec<Vec<BigInt>> = (rank..m.cols()).map(|j| v.column(j)).collect();
    hermite_reduce(basis, m.cols())
}

/// Column-style Hermite normal form of a lattice basis: pivots are positive,
/// entries at earlier pivot rows are reduced into `[0, pivot)`.
pub fn hermite_reduce(mut basis: Vec<Vec<BigInt>>, dim: usize) -> Vec<Vec<BigInt>> {
    let k = basis.len();
    let mut r = 0;
    let mut pivots = Vec::new();
    for row in 0..dim {
        if r == k {
            break;
        }
        // gcd-combine entries at `row` among vectors r.. into vector r
        loop {
            let nz: Vec<usize> = (r..k).filter(|&j| !basis[j][row].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz
                .iter()
                .min_by_key(|&&j| (basis[j][row].abs(), j))
                .unwrap();
            basis.swap(r, p);
            let mut done = true;
            for j in r + 1..k {
                if basis[j][row].is_zero() {
                    continue;
                }
                let q = basis[j][row].div_floor(&basis[r][row]);
                let br = basis[r].clone();
                for (x, y) in basis[j].iter_mut().zip(&br) {
                    *x -= &q * y;
                }
                if !basis[j][row].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < k && !basis[r][row].is_zero() {
            if basis[r][row].is_negative() {
                for x in basis[r].iter_mut() {
                    *x = -&*x;
                }
            }
            for j in 0..r {
                let q = basis[j][row].div_floor(&basis[r][row]);
                if !q.is_zero() {
                    let br = basis[r].clone();
                    for (x, y) in basis[j].iter_mut().zip(&br) {
                        *x -= &q * y;
                    }
                }
            }
            pivots.push(row);
            r += 1;
        }
    }
    basis
}

/// Generators of the kernel of `f : domain → ℤ^c`, given by the images of the
/// original generators as the columns of `map_on_generators`.
pub fn kernel_of_abelian_map(
    domain: &FgAbelianGroup,
    map_on_generators: &IntMatrix,
) -> Result<Vec<Vec<BigInt>>, LinalgError> {
    if map_on_generators.cols() != domain.num_generators {
        return Err(LinalgError::Dimension(format!(
            "map has {} columns for {} generators",
            map_on_generators.cols(),
            domain.num_generators
        )));
    }
    for r in 0..domain.relations.rows() {
        if map_on_generators
            .mul_vec(domain.relations.row(r))
            .iter()
            .any(|x| !x.is_zero())
        {
            return Err(LinalgError::MapIllDefined { relation: r });
        }
    }
    Ok(integer_kernel(map_on_generators))
}
