//! Explicit Hurwitz C-groups with a prescribed Alexander polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::alexmod::{alexander_polynomial, integral_module, AlexError, Delta};
use crate::cgroup::{
    abelian, g2, hurwitz_product_with, irreducible_components, CGroupError, CPresentation,
    ConjRelation, Word,
};
use crate::checks::{classify_realizability, Realizability};
use crate::linalg::{companion, kernel_of_abelian_map, unimodular_inverse, IntMatrix, LinalgError};
use crate::poly::{
    cyclotomic, factor_cyclotomic, is_squarefree, prime_power_multiplicity_bound, root_order,
    IntPoly, PolyError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizeError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("not realizable: (-1)^(n+k) (t-1)^n (t+1)^k needs n >= k, got n = {n}, k = {k}")]
    NotRealizable { n: u32, k: u32 },
    #[error("construction needs {needed} generators, above the ceiling of {limit}")]
    TooLarge { needed: usize, limit: usize },
    #[error("verification failed: expected {expected}, computed {computed}")]
    VerificationFailed { expected: IntPoly, computed: String },
    #[error(transparent)]
    Alex(#[from] AlexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    CGroup(#[from] CGroupError),
}

fn precondition(msg: impl Into<String>) -> RealizeError {
    RealizeError::PreconditionFailed(msg.into())
}

/// `M ⋊ F₁` with `M = ℤ[t]/(Ψ)` and `x₀⁻¹ μ(v) x₀ = μ(h₀ v)`.
#[derive(Clone, Debug)]
pub struct SemidirectModel {
    pub psi: IntPoly,
    pub d: usize,
    pub h0: IntMatrix,
    h0_inv: IntMatrix,
}

/// The element `x₀^e · μ(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelElement {
    pub e: i64,
    pub v: Vec<BigInt>,
}

impl SemidirectModel {
    pub fn new(psi: &IntPoly) -> Result<Self, RealizeError> {
        if !psi.is_monic() || psi.degree().unwrap_or(0) == 0 {
            return Err(precondition(format!(
                "{psi} is not monic of positive degree"
            )));
        }
        if !psi.coeff(0).abs().is_one() {
            return Err(precondition(format!(
                "{psi} has constant term other than ±1"
            )));
        }
        let h0 = companion(psi)?;
        let h0_inv = unimodular_inverse(&h0).expect("constant term ±1");
        Ok(SemidirectModel {
            psi: psi.clone(),
            d: h0.rows(),
            h0,
            h0_inv,
        })
    }

    /// `h₀^n · v` for any integer `n`.
    pub fn act(&self, n: i64, v: &[BigInt]) -> Vec<BigInt> {
        let m = if n >= 0 { &self.h0 } else { &self.h0_inv };
        let mut out = v.to_vec();
        for _ in 0..n.unsigned_abs() {
            out = m.mul_vec(&out);
        }
        out
    }

    pub fn identity(&self) -> ModelElement {
        ModelElement {
            e: 0,
            v: vec![BigInt::zero(); self.d],
        }
    }

    pub fn mul(&self, a: &ModelElement, b: &ModelElement) -> ModelElement {
        let av = self.act(b.e, &a.v);
        ModelElement {
            e: a.e + b.e,
            v: av.iter().zip(&b.v).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn inv(&self, a: &ModelElement) -> ModelElement {
        ModelElement {
            e: -a.e,
            v: self.act(-a.e, &a.v).into_iter().map(|x| -x).collect(),
        }
    }

    pub fn pow(&self, a: &ModelElement, n: i64) -> ModelElement {
        let base = if n < 0 { self.inv(a) } else { a.clone() };
        (0..n.unsigned_abs()).fold(self.identity(), |acc, _| self.mul(&acc, &base))
    }

    pub fn x0(&self) -> ModelElement {
        ModelElement {
            e: 1,
            v: vec![BigInt::zero(); self.d],
        }
    }

    /// Coordinates of `Q mod Ψ` in the basis t⁰, …, t^{d-1}.
    pub fn reduce(&self, q: &IntPoly) -> Vec<BigInt> {
        let (_, r) = q.div_rem_integral(&self.psi).expect("Ψ is monic");
        (0..self.d).map(|i| r.coeff(i)).collect()
    }

    /// `μ(Q)`, written multiplicatively as `∏ t_i^{c_i}`.
    pub fn mu(&self, q: &IntPoly) -> ModelElement {
        ModelElement {
            e: 0,
            v: self.reduce(q),
        }
    }

    /// `t_i = x₀⁻ⁱ t₀ x₀ⁱ`.
    pub fn t_elem(&self, i: usize) -> ModelElement {
        self.mu(&IntPoly::monomial(1, i))
    }

    /// `x_Q = x₀ · μ(Q)`.
    pub fn x_of(&self, q: &IntPoly) -> ModelElement {
        self.mul(&self.x0(), &self.mu(q))
    }

    /// `x_{t^i}`.
    pub fn x_t(&self, i: usize) -> ModelElement {
        self.x_of(&IntPoly::monomial(1, i))
    }

    /// Evaluates a word; generator `g` maps to `images[g - 1]`.
    pub fn eval(&self, w: &Word, images: &[ModelElement]) -> ModelElement {
        w.letters().iter().fold(self.identity(), |acc, &(g, e)| {
            self.mul(&acc, &self.pow(&images[g - 1], e))
        })
    }

    /// Images `x₁ ↦ x₀`, `x_i ↦ x_{t^{i-2}}` for a group on `m` generators.
    pub fn standard_images(&self, m: usize) -> Vec<ModelElement> {
        std::iter::once(self.x0())
            .chain((2..=m).map(|i| self.x_t(i - 2)))
            .collect()
    }
}

/// How a user-supplied polynomial was brought to the `det(h − t·Id)` form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Normalization {
    pub stripped_t_power: usize,
    pub sign_flipped: bool,
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.stripped_t_power, self.sign_flipped) {
            (0, false) => write!(f, "none"),
            (0, true) => write!(f, "sign flipped"),
            (a, false) => write!(f, "divided by t^{a}"),
            (a, true) => write!(f, "divided by -t^{a}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayerKind {
    /// Ψ(1) = 1, one component, generators x₁..x_{d+1}.
    Irreducible,
    /// (t − 1) | Ψ, two components, generators x₁..x_{k+1}.
    Reducible,
    /// Builtin factor (G(2) or ℤⁿ).
    Builtin,
}

/// One factor of a Hurwitz product.
#[derive(Clone, Debug)]
pub struct LayerRecord {
    pub kind: LayerKind,
    /// Monic defining polynomial of the layer.
    pub psi: IntPoly,
    pub k: u64,
    pub d: usize,
    /// `(Ψ − 1)/(t − 1)` for irreducible layers.
    pub p: Option<IntPoly>,
    /// Word for `g₁,₀` in x₁..x_{d+1}.
    pub conjugator: Option<Word>,
    /// Words whose classes generate the kernel of N/N′ → M.
    pub kernel_words: Vec<Word>,
    pub presentation: CPresentation,
    pub hurwitz_word: Word,
    pub delta: IntPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Trivial,
    Theorem1,
    Theorem2,
    Theorem3,
    Layer,
}

#[derive(Clone, Debug)]
pub struct RealizationCertificate {
    pub route: Route,
    /// Target in `det(h − t·Id)` form.
    pub target: IntPoly,
    pub normalization: Normalization,
    pub presentation: CPresentation,
    /// Positive word in the generators whose value is central.
    pub hurwitz_word: Word,
    pub computed_delta: IntPoly,
    pub components: usize,
    pub layers: Vec<LayerRecord>,
}

impl RealizationCertificate {
    /// Length of the central positive word.
    pub fn degree(&self) -> u64 {
        self.hurwitz_word.length()
    }

    pub fn num_generators(&self) -> usize {
        self.presentation.num_generators()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RealizeOptions {
    pub max_generators: Option<usize>,
}

impl RealizeOptions {
    fn check(&self, needed: usize) -> Result<(), RealizeError> {
        match self.max_generators {
            Some(limit) if needed > limit => Err(RealizeError::TooLarge { needed, limit }),
            _ => Ok(()),
        }
    }
}

/// `(−1)^deg · p` for monic `p`.
fn det_form(p: &IntPoly) -> IntPoly {
    if p.degree().unwrap_or(0) % 2 == 1 {
        -p
    } else {
        p.clone()
    }
}

fn normalize_input(p: &IntPoly) -> Result<(IntPoly, Normalization), RealizeError> {
    if p.is_zero() {
        return Err(precondition("the zero polynomial is not realizable"));
    }
    let (q, a, flip) = p.det_normalized();
    Ok((
        q,
        Normalization {
            stripped_t_power: a,
            sign_flipped: flip,
        },
    ))
}

/// Monic form of a polynomial given up to a unit `±t^a`.
fn monic_form(p: &IntPoly) -> Result<IntPoly, RealizeError> {
    if p.is_zero() {
        return Err(precondition("the zero polynomial is not realizable"));
    }
    let (q, _) = p.strip_t_power();
    if !q.leading().unwrap().abs().is_one() {
        return Err(precondition(format!(
            "{p} does not have leading coefficient ±1"
        )));
    }
    Ok(if q.leading().unwrap().is_negative() {
        -&q
    } else {
        q
    })
}

fn verify(g: &CPresentation, expected: &IntPoly) -> Result<IntPoly, RealizeError> {
    match alexander_polynomial(g).delta {
        Delta::Poly(p) if &p == expected => Ok(p),
        other => Err(RealizeError::VerificationFailed {
            expected: expected.clone(),
            computed: other.to_string(),
        }),
    }
}

fn poly_error(e: PolyError) -> RealizeError {
    precondition(e.to_string())
}

/// `a_{l,j} = x₁^l x_j x₁^{-(l+1)}`.
fn a_word(l: u64, j: usize) -> Word {
    Word::power_of(1, l as i64)
        .concat(&Word::generator(j))
        .concat(&Word::power_of(1, -(l as i64) - 1))
}

/// Kernel words of N/N′ → M and the centralized presentation.
fn centralize(
    tilde: &CPresentation,
    model: &SemidirectModel,
    k: u64,
) -> Result<(CPresentation, Vec<Word>), RealizeError> {
    let im = integral_module(tilde, k)?;
    let images = model.standard_images(tilde.num_generators());
    let mut map = IntMatrix::zeros(model.d, im.generators.len());
    for (c, &(l, j)) in im.generators.iter().enumerate() {
        let el = model.eval(&a_word(l, j), &images);
        debug_assert_eq!(el.e, 0);
        for (r, x) in el.v.into_iter().enumerate() {
            map[(r, c)] = x;
        }
    }
    let kernel = kernel_of_abelian_map(&im.group, &map)?;
    let words: Vec<Word> = kernel
        .iter()
        .map(|vec| {
            im.generators
                .iter()
                .zip(vec)
                .fold(Word::empty(), |w, (&(l, j), c)| {
                    let c = i64::try_from(c).expect("kernel coefficient fits in i64");
                    w.concat(&a_word(l, j).pow(c))
                })
        })
        .filter(|w| !w.is_empty())
        .collect();
    let m = tilde.num_generators();
    let extra = words
        .iter()
        .flat_map(|w| (1..=m).map(move |j| ConjRelation::commutes(j, w.clone())));
    Ok((tilde.extended(extra)?, words))
}

fn staircase_word(m: usize, k: u64) -> Word {
    Word::new((1..=m).map(|i| (i, k as i64)))
}

fn squarefree_cyclotomic(psi: &IntPoly) -> Result<u64, RealizeError> {
    factor_cyclotomic(psi).map_err(poly_error)?;
    if !is_squarefree(psi) {
        return Err(precondition(format!("{psi} has a multiple root")));
    }
    root_order(psi).map_err(poly_error)
}

fn irreducible_layer(psi: &IntPoly) -> Result<LayerRecord, RealizeError> {
    let psi = monic_form(psi)?;
    let k = squarefree_cyclotomic(&psi)?;
    if psi.eval_at_one() != BigInt::one() {
        return Err(precondition(format!(
            "{psi} takes the value {} at t = 1, not 1",
            psi.eval_at_one()
        )));
    }
    if psi.is_one() {
        let g = abelian(1);
        return Ok(LayerRecord {
            kind: LayerKind::Irreducible,
            psi,
            k: 1,
            d: 0,
            p: None,
            conjugator: None,
            kernel_words: Vec::new(),
            hurwitz_word: Word::generator(1),
            presentation: g,
            delta: IntPoly::one(),
        });
    }
    let d = psi.degree().unwrap();
    let model = SemidirectModel::new(&psi)?;
    let p = (&psi - &IntPoly::one())
        .exact_div(&IntPoly::from_i64s(&[-1, 1]))
        .expect("Ψ(1) = 1");
    let mut w = Word::empty();
    for i in 0..d {
        let c = i64::try_from(p.coeff(i)).expect("small coefficient");
        let t_i = Word::new([(1, -1), (i + 2, 1)]);
        w = w.concat(&t_i.pow(c));
    }
    let mut rels = Vec::new();
    for i in 2..=d {
        rels.push(ConjRelation::new(i + 1, i, Word::generator(1)));
    }
    for i in 2..=d + 1 {
        rels.push(ConjRelation::commutes(i, Word::power_of(1, k as i64)));
    }
    rels.push(ConjRelation::new(2, 1, w.clone()));
    let tilde = CPresentation::new(d + 1, rels)?;
    let (g, kernel_words) = centralize(&tilde, &model, k)?;
    let delta = verify(&g, &det_form(&psi))?;
    Ok(LayerRecord {
        kind: LayerKind::Irreducible,
        psi,
        k,
        d,
        p: Some(p),
        conjugator: Some(w),
        kernel_words,
        hurwitz_word: staircase_word(d + 1, k),
        presentation: g,
        delta,
    })
}

fn reducible_layer(psi: &IntPoly) -> Result<LayerRecord, RealizeError> {
    let psi = monic_form(psi)?;
    let k = squarefree_cyclotomic(&psi)?;
    if !psi.eval_at_one().is_zero() {
        return Err(precondition(format!("t - 1 does not divide {psi}")));
    }
    let model = SemidirectModel::new(&psi)?;
    let m = k as usize + 1;
    let mut rels = Vec::new();
    for i in 2..=k as usize {
        rels.push(ConjRelation::new(i + 1, i, Word::generator(1)));
    }
    rels.push(ConjRelation::new(2, m, Word::generator(1)));
    for i in 2..=k as usize {
        for j in 1..=m {
            rels.push(ConjRelation::commutes(j, Word::power_of(i, k as i64)));
        }
    }
    let tilde = CPresentation::new(m, rels)?;
    let (g, kernel_words) = centralize(&tilde, &model, k)?;
    let delta = verify(&g, &det_form(&psi))?;
    Ok(LayerRecord {
        kind: LayerKind::Reducible,
        d: psi.degree().unwrap(),
        psi,
        k,
        p: None,
        conjugator: None,
        kernel_words,
        hurwitz_word: staircase_word(m, k),
        presentation: g,
        delta,
    })
}

fn builtin_layer(g: CPresentation, psi: IntPoly) -> LayerRecord {
    let m = g.num_generators();
    let delta = det_form(&psi);
    LayerRecord {
        kind: LayerKind::Builtin,
        d: psi.degree().unwrap_or(0),
        psi,
        k: 0,
        p: None,
        conjugator: None,
        kernel_words: Vec::new(),
        hurwitz_word: Word::new((1..=m).map(|i| (i, 1))),
        presentation: g,
        delta,
    }
}

/// Folds layers with the Hurwitz product and verifies the product's Δ.
fn assemble(
    route: Route,
    target: IntPoly,
    normalization: Normalization,
    layers: Vec<LayerRecord>,
) -> Result<RealizationCertificate, RealizeError> {
    let mut iter = layers.iter();
    let first = iter.next().expect("at least one layer");
    let mut g = first.presentation.clone();
    let mut h = first.hurwitz_word.clone();
    for layer in iter {
        let (ng, nh) = hurwitz_product_with(&g, &h, &layer.presentation, &layer.hurwitz_word)?;
        g = ng;
        h = nh;
    }
    let computed_delta = if layers.len() == 1 && first.kind != LayerKind::Builtin {
        first.delta.clone()
    } else {
        verify(&g, &target)?
    };
    if computed_delta != target {
        return Err(RealizeError::VerificationFailed {
            expected: target,
            computed: computed_delta.to_string(),
        });
    }
    Ok(RealizationCertificate {
        route,
        target,
        normalization,
        components: irreducible_components(&g),
        presentation: g,
        hurwitz_word: h,
        computed_delta,
        layers,
    })
}

/// Irreducible Hurwitz C-group with Δ = Ψ for squarefree Ψ with Ψ(1) = 1
/// and only roots of unity as roots.
pub fn realize_irreducible_squarefree(
    psi: &IntPoly,
) -> Result<RealizationCertificate, RealizeError> {
    realize_irreducible_squarefree_with(psi, &RealizeOptions::default())
}

pub fn realize_irreducible_squarefree_with(
    psi: &IntPoly,
    opts: &RealizeOptions,
) -> Result<RealizationCertificate, RealizeError> {
    let (target, normalization) = normalize_input(psi)?;
    opts.check(target.degree().unwrap_or(0) + 1)?;
    let layer = irreducible_layer(&target)?;
    let route = if target.is_one() {
        Route::Trivial
    } else {
        Route::Theorem1
    };
    assemble(route, target, normalization, vec![layer])
}

/// Multiplicity slices `∏_{mult(Φ_n) ≥ i} Φ_n`, i = 1, 2, ….
fn slices(factors: &std::collections::BTreeMap<u64, u32>) -> Vec<IntPoly> {
    let top = factors.values().copied().max().unwrap_or(0);
    (1..=top)
        .map(|i| {
            factors
                .iter()
                .filter(|&(_, &m)| m >= i)
                .fold(IntPoly::one(), |acc, (&n, _)| &acc * &cyclotomic(n))
        })
        .collect()
}

fn irreducible_layers(
    p: &IntPoly,
    opts: &RealizeOptions,
) -> Result<Vec<LayerRecord>, RealizeError> {
    let f = factor_cyclotomic(p).map_err(poly_error)?;
    if p.eval_at_one() != BigInt::one() {
        return Err(precondition(format!(
            "{p} takes the value {} at t = 1, not 1",
            p.eval_at_one()
        )));
    }
    let parts = slices(&f.factors);
    opts.check(parts.iter().map(|s| s.degree().unwrap() + 1).sum())?;
    parts.iter().map(irreducible_layer).collect()
}

/// Irreducible Hurwitz C-group with Δ = p, when p(1) = 1 and all roots of p
/// are roots of unity.
pub fn realize_irreducible(p: &IntPoly) -> Result<RealizationCertificate, RealizeError> {
    realize_irreducible_with(p, &RealizeOptions::default())
}

pub fn realize_irreducible_with(
    p: &IntPoly,
    opts: &RealizeOptions,
) -> Result<RealizationCertificate, RealizeError> {
    let (target, normalization) = normalize_input(p)?;
    if target.is_one() {
        let layer = irreducible_layer(&target)?;
        return assemble(Route::Trivial, target, normalization, vec![layer]);
    }
    let layers = irreducible_layers(&target, opts)?;
    assemble(Route::Theorem1, target, normalization, layers)
}

/// Hurwitz C-group with two components and Δ = Ψ, for squarefree Ψ with
/// (t − 1) | Ψ and only roots of unity as roots.
pub fn realize_reducible_layer(psi: &IntPoly) -> Result<RealizationCertificate, RealizeError> {
    realize_reducible_layer_with(psi, &RealizeOptions::default())
}

pub fn realize_reducible_layer_with(
    psi: &IntPoly,
    opts: &RealizeOptions,
) -> Result<RealizationCertificate, RealizeError> {
    let (target, normalization) = normalize_input(psi)?;
    let monic = monic_form(&target)?;
    let k = squarefree_cyclotomic(&monic)?;
    opts.check(k as usize + 1)?;
    let layer = reducible_layer(&monic)?;
    assemble(Route::Layer, target, normalization, vec![layer])
}

/// Hurwitz C-group with Δ = p when every prime-power primitive root of
/// unity has multiplicity at most that of t = 1.
pub fn realize_theorem2(p: &IntPoly) -> Result<RealizationCertificate, RealizeError> {
    realize_theorem2_with(p, &RealizeOptions::default())
}

pub fn realize_theorem2_with(
    p: &IntPoly,
    opts: &RealizeOptions,
) -> Result<RealizationCertificate, RealizeError> {
    let (target, normalization) = normalize_input(p)?;
    let f = factor_cyclotomic(&target).map_err(poly_error)?;
    let bound = prime_power_multiplicity_bound(&target).map_err(poly_error)?;
    if let Some((q, m)) = bound.by_index.iter().find(|&(_, &m)| m > bound.root_one) {
        return Err(precondition(format!(
            "root multiplicity condition violated: Phi_{q} has multiplicity {m} > {} = multiplicity of t = 1",
            bound.root_one
        )));
    }
    let n = bound.root_one as usize;
    if n == 0 {
        let mut cert = realize_irreducible_with(&target, opts)?;
        cert.normalization = normalization;
        return Ok(cert);
    }
    let mut layer_polys = vec![cyclotomic(1); n];
    let mut cursor = 0;
    for (&q, &m) in &bound.by_index {
        for _ in 0..m {
            layer_polys[cursor % n] = &layer_polys[cursor % n] * &cyclotomic(q);
            cursor += 1;
        }
    }
    let mut residual = f.factors.clone();
    residual.retain(|&q, _| q != 1 && !bound.by_index.contains_key(&q));
    let residual_poly = residual
        .iter()
        .fold(IntPoly::one(), |acc, (&q, &m)| &acc * &cyclotomic(q).pow(m));

    let layer_gens: usize = layer_polys
        .iter()
        .map(|psi| root_order(psi).map(|k| k as usize + 1).unwrap_or(0))
        .sum();
    let residual_gens: usize = slices(&residual)
        .iter()
        .map(|s| s.degree().unwrap() + 1)
        .sum();
    opts.check(layer_gens + residual_gens)?;

    let mut layers = layer_polys
        .iter()
        .map(reducible_layer)
        .collect::<Result<Vec<_>, _>>()?;
    if !residual_poly.is_one() {
        layers.extend(irreducible_layers(&residual_poly, opts)?);
    }
    assemble(Route::Theorem2, target, normalization, layers)
}

/// `G(2)^{◇k} ◇ ℤ^{n+1−k}`, with Δ = (−1)^{n+k}(t − 1)^n (t + 1)^k.
pub fn realize_pm(n: u32, k: u32) -> Result<RealizationCertificate, RealizeError> {
    realize_pm_with(n, k, &RealizeOptions::default())
}

pub fn realize_pm_with(
    n: u32,
    k: u32,
    opts: &RealizeOptions,
) -> Result<RealizationCertificate, RealizeError> {
    if n < k {
        return Err(RealizeError::NotRealizable { n, k });
    }
    opts.check(4 * k as usize + (n + 1 - k) as usize)?;
    let tm1 = IntPoly::from_i64s(&[-1, 1]);
    let tp1 = IntPoly::from_i64s(&[1, 1]);
    let mut layers: Vec<LayerRecord> = (0..k).map(|_| builtin_layer(g2(), &tm1 * &tp1)).collect();
    let rank = (n + 1 - k) as usize;
    layers.push(builtin_layer(abelian(rank), tm1.pow(rank as u32 - 1)));
    let target = det_form(&(&tm1.pow(n) * &tp1.pow(k)));
    assemble(Route::Theorem3, target, Normalization::default(), layers)
}

/// Which construction `realize` should use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    /// The strongest theorem that applies.
    #[default]
    Auto,
    Thm1,
    Thm2,
    Thm3,
}

pub fn realize(p: &IntPoly, mode: Mode) -> Result<RealizationCertificate, RealizeError> {
    realize_with(p, mode, &RealizeOptions::default())
}

pub fn realize_with(
    p: &IntPoly,
    mode: Mode,
    opts: &RealizeOptions,
) -> Result<RealizationCertificate, RealizeError> {
    match mode {
        Mode::Thm1 => realize_irreducible_with(p, opts),
        Mode::Thm2 => realize_theorem2_with(p, opts),
        Mode::Thm3 => realize_pm_form(p, opts),
        Mode::Auto => {
            let c = classify_realizability(p).map_err(poly_error)?;
            match c.verdict {
                Realizability::RealizableThm1 => realize_irreducible_with(p, opts),
                Realizability::RealizableThm2 => realize_theorem2_with(p, opts),
                Realizability::RealizableThm3 | Realizability::NotRealizablePM => {
                    realize_pm_form(p, opts)
                }
                Realizability::NotRootsOfUnityNecessary | Realizability::UnknownConjecture => {
                    Err(precondition(format!("{}: {}", c.verdict, c.witness)))
                }
            }
        }
    }
}

/// Theorem 3 applied to `±t^a (t − 1)^n (t + 1)^k`.
fn realize_pm_form(
    p: &IntPoly,
    opts: &RealizeOptions,
) -> Result<RealizationCertificate, RealizeError> {
    let (target, normalization) = normalize_input(p)?;
    let f = factor_cyclotomic(&target).map_err(poly_error)?;
    if let Some(q) = f.factors.keys().find(|&&q| q > 2) {
        return Err(precondition(format!(
            "Theorem 3 needs the form (t-1)^n (t+1)^k, but Phi_{q} divides the target"
        )));
    }
    let mut cert = realize_pm_with(f.multiplicity(1), f.multiplicity(2), opts)?;
    cert.normalization = normalization;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn model_relations() {
        let m = SemidirectModel::new(&cyclotomic(6)).unwrap();
        for i in 0..4 {
            let lhs = m.x_t(i + 1);
            let rhs = m.mul(&m.mul(&m.inv(&m.x0()), &m.x_t(i)), &m.x0());
            assert_eq!(lhs, rhs);
        }
        // g⁻¹ x₀ g = x_{t⁰} with g = μ(P), P = t
        let g = m.mu(&poly(&[0, 1]));
        assert_eq!(m.mul(&m.mul(&m.inv(&g), &m.x0()), &g), m.x_t(0));
        // x₀⁶ is central
        let x6 = m.pow(&m.x0(), 6);
        let t1 = m.t_elem(1);
        assert_eq!(m.mul(&x6, &t1), m.mul(&t1, &x6));
    }

    #[test]
    fn phi6() {
        let c = realize_irreducible_squarefree(&cyclotomic(6)).unwrap();
        let l = &c.layers[0];
        assert_eq!((l.k, l.d), (6, 2));
        assert_eq!(l.p, Some(poly(&[0, 1])));
        assert_eq!(c.num_generators(), 3);
        assert_eq!(c.computed_delta, cyclotomic(6));
        assert_eq!(c.components, 1);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            realize_irreducible_squarefree(&cyclotomic(3)),
            Err(RealizeError::PreconditionFailed(_))
        ));
        assert!(realize_irreducible(&poly(&[-1, 0, 1])).is_err());
        assert!(realize_reducible_layer(&cyclotomic(6)).is_err());
        assert!(realize_theorem2(&poly(&[1, 2, 1])).is_err());
        assert_eq!(
            realize_pm(1, 2).unwrap_err(),
            RealizeError::NotRealizable { n: 1, k: 2 }
        );
    }

    #[test]
    fn trivial_target() {
        let c = realize_irreducible(&IntPoly::one()).unwrap();
        assert_eq!(c.computed_delta, IntPoly::one());
        assert_eq!(c.num_generators(), 1);
    }

    #[test]
    fn reducible_layers() {
        let c = realize_reducible_layer(&poly(&[-1, 0, 1])).unwrap();
        assert_eq!(c.layers[0].k, 2);
        assert_eq!(c.num_generators(), 3);
        assert_eq!(c.components, 2);
        let c = realize_reducible_layer(&poly(&[-1, 1])).unwrap();
        assert_eq!(c.computed_delta, poly(&[1, -1]));
    }

    #[test]
    fn pm_small() {
        let c = realize_pm(1, 1).unwrap();
        assert_eq!(c.computed_delta, poly(&[-1, 0, 1]));
        let c = realize_pm(2, 0).unwrap();
        assert_eq!(c.computed_delta, poly(&[1, -2, 1]));
    }

    #[test]
    fn auto_mode_routes() {
        let c = realize(&cyclotomic(6), Mode::Auto).unwrap();
        assert_eq!(c.route, Route::Theorem1);
        let c = realize(&poly(&[-1, 0, 1]), Mode::Auto).unwrap();
        assert_eq!(c.route, Route::Theorem3);
        assert_eq!(c.computed_delta, poly(&[-1, 0, 1]));
        assert_eq!(
            realize(&poly(&[1, 2, 1]), Mode::Auto).unwrap_err(),
            RealizeError::NotRealizable { n: 0, k: 2 }
        );
        assert!(matches!(
            realize(&poly(&[-1, 2]), Mode::Auto),
            Err(RealizeError::PreconditionFailed(_))
        ));
        assert!(realize(&cyclotomic(6), Mode::Thm3).is_err());
    }
}
