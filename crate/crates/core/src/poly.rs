//! Exact univariate polynomials over ℤ and ℚ, Laurent polynomials over ℤ,
//! and cyclotomic-polynomial machinery.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{divisors, is_prime_power, totient};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("not every root is a root of unity: factor {remainder} is not a product of cyclotomic polynomials")]
    NotRootsOfUnity { remainder: IntPoly },
    #[error("content {content} is not a unit; the polynomial has value {content} up to cyclotomic factors")]
    NonUnitContent { content: BigInt },
}

/// Polynomial with integer coefficients in ascending degree order.
///
/// The zero polynomial has no coefficients; otherwise the highest stored
/// coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = c.into();
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `t^n - 1`.
    pub fn t_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = BigInt::from(-1);
        coeffs[n] += BigInt::one();
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Largest `a` such that `t^a` divides `self` (0 for the zero polynomial).
    pub fn t_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divide out the largest power of `t`; returns the quotient and the power.
    pub fn strip_t_power(&self) -> (Self, usize) {
        let a = self.t_valuation();
        (
            IntPoly {
                coeffs: self.coeffs[a..].to_vec(),
            },
            a,
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Long division over ℤ. Returns `None` unless the remainder is zero and
    /// every step divides exactly.
    pub fn exact_div(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.div_rem_integral(divisor)?;
        r.is_zero().then_some(q)
    }

    /// Long division over ℤ; fails if a quotient coefficient is not integral.
    /// With a divisor of leading coefficient ±1 this never fails.
    pub fn div_rem_integral(&self, divisor: &IntPoly) -> Option<(IntPoly, IntPoly)> {
        let dd = divisor.degree()?;
        let lead = divisor.leading()?.clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((IntPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let (q, r) = rem[i].div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &q * dc;
            }
            quot[i - dd] = q;
        }
        Some((IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem)))
    }

    /// Normalize to the determinant convention `det(h - t·Id)`: strip any
    /// power of `t` and fix the sign so that the leading coefficient has sign
    /// `(-1)^degree`. Returns the normalized polynomial, the stripped power
    /// and whether the sign was flipped.
    pub fn det_normalized(&self) -> (IntPoly, usize, bool) {
        let (p, a) = self.strip_t_power();
        let Some(deg) = p.degree() else {
            return (p, 0, false);
        };
        let want_negative = deg % 2 == 1;
        let flip = p
            .leading()
            .is_some_and(|l| l.is_negative() != want_negative);
        (if flip { -&p } else { p }, a, flip)
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::from_coeffs(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// Human-readable form accepted back by the polynomial parser, e.g. `t^2 - t + 1`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.to_string()))
            .collect();
        write_terms(f, terms.into_iter().rev().map(|(i, c)| (i as i64, c)), "")
    }
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, String)>,
    empty: &str,
) -> fmt::Result {
    let mut first = true;
    for (exp, c) in terms {
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, c),
        };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let var = match exp {
            0 => String::new(),
            1 => "t".to_string(),
            e if e < 0 => format!("t^({e})"),
            e => format!("t^{e}"),
        };
        match (mag.as_str(), var.is_empty()) {
            (_, true) => write!(f, "{mag}")?,
            ("1", false) => write!(f, "{var}")?,
            (_, false) => write!(f, "{mag}*{var}")?,
        }
    }
    if first {
        write!(f, "{}", if empty.is_empty() { "0" } else { empty })?;
    }
    Ok(())
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $tr:ident, $m:ident) => {
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned_binop!(IntPoly, Add, add);
forward_owned_binop!(IntPoly, Sub, sub);
forward_owned_binop!(IntPoly, Mul, mul);

/// Polynomial with rational coefficients, ascending degree order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_coeffs(vec![BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Scale to leading coefficient 1; zero stays zero.
    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) if !l.is_one() => self.scale(&l.recip()),
            _ => self.clone(),
        }
    }

    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &lead_inv;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let delta = &q * dc;
                rem[i - dd + j] -= delta;
            }
            quot[i - dd] = q;
        }
        (RatPoly::from_coeffs(quot), RatPoly::from_coeffs(rem))
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Largest power of `t` dividing the polynomial.
    pub fn t_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn strip_t_power(&self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs[self.t_valuation()..].to_vec(),
        }
    }

    /// `Some` when every coefficient is an integer.
    pub fn to_int(&self) -> Option<IntPoly> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::from_coeffs)
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(i64, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64, c.to_string()))
            .collect();
        write_terms(f, terms.into_iter().rev(), "")
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(out)
    }
}

forward_owned_binop!(RatPoly, Add, add);
forward_owned_binop!(RatPoly, Sub, sub);
forward_owned_binop!(RatPoly, Mul, mul);

/// Element of Λ = ℤ[t, t⁻¹]: `coeffs[i]` is the coefficient of `t^(low + i)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        Self::new(exp, vec![c.into()])
    }

    pub fn new(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient (0 for zero).
    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let i = exp - self.low;
        if i < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Add `c·t^exp` in place.
    pub fn add_term(&mut self, c: &BigInt, exp: i64) {
        if c.is_zero() {
            return;
        }
        if self.coeffs.is_empty() {
            self.low = exp;
            self.coeffs.push(c.clone());
            return;
        }
        if exp < self.low {
            let pad = (self.low - exp) as usize;
            let mut v = vec![BigInt::zero(); pad];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.low = exp;
        }
        let i = (exp - self.low) as usize;
        if i >= self.coeffs.len() {
            self.coeffs.resize(i + 1, BigInt::zero());
        }
        self.coeffs[i] += c;
        self.normalize();
    }

    /// Multiply by `t^k`; only the exponent offset moves.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// `±t^a`, the units of Λ.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].abs().is_one()
    }

    /// Inverse of a unit `±t^a`.
    pub fn unit_inverse(&self) -> Option<Self> {
        self.is_unit()
            .then(|| LaurentPoly::monomial(self.coeffs[0].clone(), -self.low))
    }

    /// The ordinary polynomial `t^(-low) · self`.
    pub fn to_poly(&self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.clone())
    }

    pub fn from_poly(p: &IntPoly) -> Self {
        Self::new(0, p.coeffs().to_vec())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(i64, String)> = self.terms().map(|(e, c)| (e, c.to_string())).collect();
        write_terms(f, terms.into_iter().rev(), "")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for p in [self, rhs] {
            let off = (p.low - low) as usize;
            for (i, c) in p.coeffs.iter().enumerate() {
                coeffs[off + i] += c;
            }
        }
        LaurentPoly::new(low, coeffs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let p = &self.to_poly() * &rhs.to_poly();
        LaurentPoly::new(self.low + rhs.low, p.coeffs().to_vec())
    }
}

forward_owned_binop!(LaurentPoly, Add, add);
forward_owned_binop!(LaurentPoly, Sub, sub);
forward_owned_binop!(LaurentPoly, Mul, mul);

/// `unit_sign · t^t_power · ∏ Φ_n^mult`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicFactorization {
    pub factors: BTreeMap<u64, u32>,
    pub unit_sign: i8,
    pub t_power: usize,
}

impl CyclotomicFactorization {
    pub fn reconstruct(&self) -> IntPoly {
        let mut p = IntPoly::constant(self.unit_sign as i64).shift(self.t_power);
        for (&n, &m) in &self.factors {
            p = &p * &cyclotomic(n).pow(m);
        }
        p
    }

    pub fn multiplicity(&self, n: u64) -> u32 {
        self.factors.get(&n).copied().unwrap_or(0)
    }

    /// Total degree of the cyclotomic part.
    pub fn degree(&self) -> u64 {
        self.factors
            .iter()
            .map(|(&n, &m)| totient(n) * m as u64)
            .sum()
    }
}

/// The n-th cyclotomic polynomial Φ_n, obtained by dividing `t^n - 1` by
/// Φ_d for every proper divisor d of n.
pub fn cyclotomic(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut memo: HashMap<u64, IntPoly> = HashMap::new();
    cyclotomic_memo(n, &mut memo)
}

fn cyclotomic_memo(n: u64, memo: &mut HashMap<u64, IntPoly>) -> IntPoly {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut p = IntPoly::t_pow_minus_one(n as usize);
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_memo(d, memo);
        p = p
            .exact_div(&phi_d)
            .expect("cyclotomic divisor must divide t^n - 1 exactly");
    }
    memo.insert(n, p.clone());
    p
}

/// Largest index whose cyclotomic polynomial can have degree ≤ `deg`.
/// Uses φ(n) ≥ √(n/2).
fn cyclotomic_index_bound(deg: usize) -> u64 {
    let mut bound = 1;
    let cap = 2 * (deg as u64).pow(2) + 2;
    for n in 1..=cap {
        if totient(n) <= deg as u64 {
            bound = n;
        }
    }
    bound
}

/// Factor `p` as `±t^a ∏ Φ_n^m`, scanning candidate indices in ascending order.
pub fn factor_cyclotomic(p: &IntPoly) -> Result<CyclotomicFactorization, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let (mut rest, t_power) = p.strip_t_power();
    let mut factors = BTreeMap::new();
    let bound = cyclotomic_index_bound(rest.degree().unwrap_or(0));
    for n in 1..=bound {
        let rdeg = rest.degree().unwrap_or(0) as u64;
        if rdeg == 0 {
            break;
        }
        if totient(n) > rdeg {
            continue;
        }
        let phi = cyclotomic(n);
        while let Some(q) = rest.exact_div(&phi) {
            *factors.entry(n).or_insert(0) += 1;
            rest = q;
            if rest.degree() == Some(0) {
                break;
            }
        }
    }
    match rest.degree() {
        Some(0) if rest.coeffs()[0].abs().is_one() => Ok(CyclotomicFactorization {
            factors,
            unit_sign: if rest.coeffs()[0].is_negative() {
                -1
            } else {
                1
            },
            t_power,
        }),
        Some(0) => Err(PolyError::NonUnitContent {
            content: rest.coeffs()[0].clone(),
        }),
        _ => Err(PolyError::NotRootsOfUnity { remainder: rest }),
    }
}

pub fn eval_at_one(p: &IntPoly) -> BigInt {
    p.eval_at_one()
}

/// Smallest k such that every root of `p` is a k-th root of unity.
pub fn root_order(p: &IntPoly) -> Result<u64, PolyError> {
    let f = factor_cyclotomic(p)?;
    Ok(f.factors.keys().fold(1u64, |acc, &n| acc.lcm(&n)))
}

/// True iff gcd(p, p') over ℚ is constant. Constants count as squarefree.
pub fn is_squarefree(p: &IntPoly) -> bool {
    if p.degree().unwrap_or(0) == 0 {
        return true;
    }
    let g = p.to_rat().gcd(&p.derivative().to_rat());
    g.degree() == Some(0)
}

/// Multiplicities of prime-power cyclotomic factors Φ_q (q = p^k > 1) and of Φ₁.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePowerMultiplicities {
    pub by_index: BTreeMap<u64, u32>,
    pub root_one: u32,
}

impl PrimePowerMultiplicities {
    /// No prime-power factor outnumbers Φ₁.
    pub fn bounded_by_root_one(&self) -> bool {
        self.by_index.values().all(|&m| m <= self.root_one)
    }
}

pub fn prime_power_multiplicity_bound(p: &IntPoly) -> Result<PrimePowerMultiplicities, PolyError> {
    let f = factor_cyclotomic(p)?;
    Ok(PrimePowerMultiplicities {
        by_index: f
            .factors
            .iter()
            .filter(|(&n, _)| n > 1 && is_prime_power(n))
            .map(|(&n, &m)| (n, m))
            .collect(),
        root_one: f.multiplicity(1),
    })
}
