//! C-presentations: generators plus relations `x_i = w⁻¹ x_j w`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CGroupError {
    #[error("a presentation needs at least one generator")]
    NoGenerators,
    #[error("relation {relation} refers to x{index}, but there are only {m} generators")]
    IndexOutOfRange {
        relation: usize,
        index: usize,
        m: usize,
    },
    #[error("unknown builtin `{0}` (expected example_4_1, example_4_2, g2, free:M or abelian:N)")]
    UnknownBuiltin(String),
    #[error("Hurwitz word must be a nonempty positive word")]
    BadHurwitzWord,
}

/// Freely reduced word in the generators; letters are `(index, exponent)`
/// with 1-based indices and nonzero exponents.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<(usize, i64)>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn generator(i: usize) -> Self {
        Word {
            letters: vec![(i, 1)],
        }
    }

    pub fn power_of(i: usize, e: i64) -> Self {
        Word::new(vec![(i, e)])
    }

    /// Freely reduces the given letter sequence.
    pub fn new(letters: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for (g, e) in letters {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some(last) if last.0 == g => {
                    last.1 += e;
                    if last.1 == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of letters counted with multiplicity.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&(_, e)| e > 0)
    }

    pub fn max_index(&self) -> usize {
        self.letters.iter().map(|&(g, _)| g).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Applies `f` to every generator index.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Word {
        Word::new(self.letters.iter().map(|&(g, e)| (f(g), e)))
    }

    /// Expands into single letters `(index, ±1)`.
    pub fn unit_letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.letters
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n((g, e.signum()), e.unsigned_abs() as usize))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

/// Space-separated letters such as `x1^-1 x2 x1`; the empty word prints as `1`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for (n, &(g, e)) in self.letters.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            if e == 1 {
                write!(f, "x{g}")?;
            } else {
                write!(f, "x{g}^{e}")?;
            }
        }
        Ok(())
    }
}

/// The relation `x_left = conjugator⁻¹ · x_right · conjugator`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConjRelation {
    pub left: usize,
    pub right: usize,
    pub conjugator: Word,
}

impl ConjRelation {
    pub fn new(left: usize, right: usize, conjugator: Word) -> Self {
        ConjRelation {
            left,
            right,
            conjugator,
        }
    }

    /// `x_i = x_j`.
    pub fn identify(left: usize, right: usize) -> Self {
        Self::new(left, right, Word::empty())
    }

    /// `[x_i, w] = 1`, written as `x_i = w⁻¹ x_i w`.
    pub fn commutes(i: usize, w: Word) -> Self {
        Self::new(i, i, w)
    }

    /// The relator `x_left⁻¹ w⁻¹ x_right w`, unreduced letter by letter.
    pub fn relator_letters(&self) -> Vec<(usize, i64)> {
        let mut out = vec![(self.left, -1)];
        out.extend(self.conjugator.inverse().unit_letters());
        out.push((self.right, 1));
        out.extend(self.conjugator.unit_letters());
        out
    }

    pub fn relator(&self) -> Word {
        Word::new(self.relator_letters())
    }

    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> ConjRelation {
        ConjRelation {
            left: f(self.left),
            right: f(self.right),
            conjugator: self.conjugator.relabel(f),
        }
    }
}

impl fmt::Display for ConjRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{} = ", self.left)?;
        if self.conjugator.is_empty() {
            write!(f, "x{}", self.right)
        } else {
            write!(
                f,
                "{} x{} {}",
                self.conjugator.inverse(),
                self.right,
                self.conjugator
            )
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPresentation {
    m: usize,
    relations: Vec<ConjRelation>,
    labels: Option<Vec<String>>,
}

impl CPresentation {
    pub fn new(m: usize, relations: Vec<ConjRelation>) -> Result<Self, CGroupError> {
        if m == 0 {
            return Err(CGroupError::NoGenerators);
        }
        for (n, r) in relations.iter().enumerate() {
            let bad = std::iter::once(r.left)
                .chain(std::iter::once(r.right))
                .chain(r.conjugator.letters().iter().map(|&(g, _)| g))
                .find(|&g| g == 0 || g > m);
            if let Some(index) = bad {
                return Err(CGroupError::IndexOutOfRange {
                    relation: n + 1,
                    index,
                    m,
                });
            }
            debug_assert_eq!(r.relator().exponent_sum(), 0);
        }
        Ok(CPresentation {
            m,
            relations,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.m, "one label per generator");
        self.labels = Some(labels);
        self
    }

    pub fn num_generators(&self) -> usize {
        self.m
    }

    pub fn relations(&self) -> &[ConjRelation] {
        &self.relations
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Adds relations, checking indices.
    pub fn extended(
        &self,
        extra: impl IntoIterator<Item = ConjRelation>,
    ) -> Result<Self, CGroupError> {
        let mut rels = self.relations.clone();
        rels.extend(extra);
        CPresentation::new(self.m, rels)
    }

    /// Renames generator `i` to `perm[i - 1]`.
    pub fn relabeled(&self, perm: &[usize]) -> CPresentation {
        assert_eq!(perm.len(), self.m);
        let rels = self
            .relations
            .iter()
            .map(|r| r.relabel(|g| perm[g - 1]))
            .collect();
        CPresentation {
            m: self.m,
            relations: rels,
            labels: None,
        }
    }

    pub fn with_relation_order(&self, order: &[usize]) -> CPresentation {
        let rels = order.iter().map(|&i| self.relations[i].clone()).collect();
        CPresentation {
            m: self.m,
            relations: rels,
            labels: self.labels.clone(),
        }
    }

    /// Total number of letters over all relators.
    pub fn size(&self) -> u64 {
        self.relations
            .iter()
            .map(|r| 2 + 2 * r.conjugator.length())
            .sum()
    }
}

/// Canonical text form: a `cgroup m=N` header, then one relation per line.
impl fmt::Display for CPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cgroup m={}", self.m)?;
        for r in &self.relations {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Number of classes of generators under `left ~ right`; the rank of G/G'.
pub fn irreducible_components(g: &CPresentation) -> usize {
    component_labels(g)
        .into_iter()
        .collect::<BTreeSet<_>>()
        .len()
}

/// For each generator, the smallest generator index in its class.
pub fn component_labels(g: &CPresentation) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..=g.m).collect();
    for r in &g.relations {
        let (a, b) = (find(&mut parent, r.left), find(&mut parent, r.right));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    (1..=g.m).map(|i| find(&mut parent, i)).collect()
}

/// `x_1 x_2 … x_m`.
pub fn full_product_word(m: usize) -> Word {
    Word::new((1..=m).map(|i| (i, 1)))
}

/// True iff every generator has a relation `x_i = P⁻¹ x_i P` with
/// `P = x_1 … x_m` verbatim.
pub fn is_hurwitz_presentation(g: &CPresentation) -> bool {
    let p = full_product_word(g.m);
    (1..=g.m).all(|i| {
        g.relations
            .iter()
            .any(|r| r.left == i && r.right == i && r.conjugator == p)
    })
}

/// Hurwitz product of two Hurwitz presentations with product words `x_1…x_m`.
pub fn hurwitz_product(g1: &CPresentation, g2: &CPresentation) -> CPresentation {
    hurwitz_product_with(g1, &full_product_word(g1.m), g2, &full_product_word(g2.m))
        .expect("full product words are positive")
        .0
}

/// Hurwitz product relative to positive central words `h1`, `h2` of the
/// factors. The generators of `g2` are shifted by `m1`. The generators of
/// the last letters of `h1` and `h2` are identified, and every generator
/// occurring in an earlier position of `h_i` commutes with `h_ī^{|h_i|}`.
/// Returns the presentation and the central word `h1^{|h2|} h2^{|h1|}`.
pub fn hurwitz_product_with(
    g1: &CPresentation,
    h1: &Word,
    g2: &CPresentation,
    h2: &Word,
) -> Result<(CPresentation, Word), CGroupError> {
    for h in [h1, h2] {
        if h.is_empty() || !h.is_positive() {
            return Err(CGroupError::BadHurwitzWord);
        }
    }
    let m1 = g1.m;
    let shift = |g: usize| g + m1;
    let h2s = h2.relabel(shift);
    let (d1, d2) = (h1.length() as i64, h2.length() as i64);

    let mut rels: Vec<ConjRelation> = g1.relations.clone();
    rels.extend(g2.relations.iter().map(|r| r.relabel(shift)));
    let last1 = h1.letters().last().unwrap().0;
    let last2 = h2s.letters().last().unwrap().0;
    rels.push(ConjRelation::identify(last1, last2));

    let c2 = h2s.pow(d1);
    for j in leading_generators(h1) {
        rels.push(ConjRelation::commutes(j, c2.clone()));
    }
    let c1 = h1.pow(d2);
    for j in leading_generators(&h2s) {
        rels.push(ConjRelation::commutes(j, c1.clone()));
    }
    let g = CPresentation::new(m1 + g2.m, rels)?;
    Ok((g, h1.pow(d2).concat(&h2s.pow(d1))))
}

/// Distinct generators among all letters but the last, by first occurrence.
fn leading_generators(h: &Word) -> Vec<usize> {
    let letters: Vec<usize> = h.unit_letters().map(|(g, _)| g).collect();
    let mut seen = BTreeSet::new();
    letters[..letters.len() - 1]
        .iter()
        .copied()
        .filter(|&g| seen.insert(g))
        .collect()
}

/// Free C-group on `m` generators.
pub fn free(m: usize) -> CPresentation {
    CPresentation::new(m, Vec::new()).expect("m ≥ 1")
}

/// ℤⁿ with pairwise commutation and product-centrality relations.
pub fn abelian(n: usize) -> CPresentation {
    let mut rels = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            rels.push(ConjRelation::commutes(i, Word::generator(j)));
        }
    }
    let p = full_product_word(n);
    rels.extend((1..=n).map(|i| ConjRelation::commutes(i, p.clone())));
    CPresentation::new(n, rels).expect("n ≥ 1")
}

/// The four-generator Hurwitz C-group with Δ = t² − 1.
pub fn g2() -> CPresentation {
    let p = full_product_word(4);
    let mut rels = vec![
        ConjRelation::new(4, 1, Word::power_of(2, -2)),
        ConjRelation::identify(3, 2),
        ConjRelation::commutes(2, Word::power_of(4, -2)),
    ];
    rels.extend((1..=4).map(|i| ConjRelation::commutes(i, p.clone())));
    CPresentation::new(4, rels).unwrap()
}

/// `⟨x1,x2,x3 | x3 = x1⁻¹x2x1, x3 = x1⁻¹x3x2x3⁻¹x1⟩`.
pub fn example_4_1() -> CPresentation {
    CPresentation::new(
        3,
        vec![
            ConjRelation::new(3, 2, Word::generator(1)),
            ConjRelation::new(3, 2, Word::new([(3, -1), (1, 1)])),
        ],
    )
    .unwrap()
}

/// `⟨x1,x2,x3 | x3 = x1⁻¹x2x1, [x1, x3²x1⁻¹x2x1⁻¹x3] = 1⟩`.
pub fn example_4_2() -> CPresentation {
    CPresentation::new(
        3,
        vec![
            ConjRelation::new(3, 2, Word::generator(1)),
            ConjRelation::commutes(1, Word::new([(3, 2), (1, -1), (2, 1), (1, -1), (3, 1)])),
        ],
    )
    .unwrap()
}

/// Looks up `example_4_1`, `example_4_2`, `g2`, `free:M` or `abelian:N`.
pub fn builtin(name: &str) -> Result<CPresentation, CGroupError> {
    let unknown = || CGroupError::UnknownBuiltin(name.to_string());
    let (base, param) = match name.split_once(':') {
        Some((b, p)) => (b, Some(p.parse::<usize>().map_err(|_| unknown())?)),
        None => (name, None),
    };
    match (base, param) {
        ("example_4_1", None) => Ok(example_4_1()),
        ("example_4_2", None) => Ok(example_4_2()),
        ("g2", None) => Ok(g2()),
        ("free", Some(m)) if m >= 1 => Ok(free(m)),
        ("abelian", Some(n)) if n >= 1 => Ok(abelian(n)),
        _ => Err(unknown()),
    }
}
