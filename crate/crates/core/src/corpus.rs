//! Regression corpus of C-groups with known Alexander polynomials.

use crate::alexmod::Delta;
use crate::cgroup::{
    abelian, example_4_1, example_4_2, free, full_product_word, g2, hurwitz_product_with,
    CPresentation, Word,
};
use crate::poly::{cyclotomic, IntPoly};
use crate::realize::{realize_irreducible, realize_reducible_layer};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub presentation: CPresentation,
    /// Positive central word when the presentation is Hurwitz.
    pub hurwitz_word: Option<Word>,
    pub expected: Delta,
}

impl CorpusEntry {
    pub fn is_hurwitz(&self) -> bool {
        self.hurwitz_word.is_some()
    }

    /// Length of the central word.
    pub fn degree(&self) -> Option<u64> {
        self.hurwitz_word.as_ref().map(Word::length)
    }
}

fn tm1() -> IntPoly {
    IntPoly::from_i64s(&[-1, 1])
}

/// `(−1)^{n−1}(t − 1)^{n−1}`.
pub fn abelian_delta(n: usize) -> IntPoly {
    let p = tm1().pow(n as u32 - 1);
    if n.is_multiple_of(2) {
        -&p
    } else {
        p
    }
}

fn entry(name: &str, g: CPresentation, hurwitz: bool, expected: Delta) -> CorpusEntry {
    let word = hurwitz.then(|| full_product_word(g.num_generators()));
    CorpusEntry {
        name: name.to_string(),
        presentation: g,
        hurwitz_word: word,
        expected,
    }
}

/// The builtin groups with their golden Alexander polynomials.
pub fn builtin_corpus() -> Vec<CorpusEntry> {
    let mut out = vec![
        entry(
            "example_4_1",
            example_4_1(),
            false,
            Delta::Poly(IntPoly::from_i64s(&[1, -2, 1])),
        ),
        entry(
            "example_4_2",
            example_4_2(),
            false,
            Delta::Poly(IntPoly::from_i64s(&[1, 1, -1, -1])),
        ),
        entry(
            "g2",
            g2(),
            true,
            Delta::Poly(IntPoly::from_i64s(&[-1, 0, 1])),
        ),
    ];
    for n in 1..=5 {
        out.push(entry(
            &format!("abelian:{n}"),
            abelian(n),
            true,
            Delta::Poly(abelian_delta(n)),
        ));
    }
    for m in 2..=3 {
        out.push(entry(&format!("free:{m}"), free(m), false, Delta::Zero));
    }
    out
}

/// Realized layers and Hurwitz products of corpus members. Expected values
/// are the realization targets and products of the factors' golden values.
pub fn derived_corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    let phi6 = realize_irreducible(&cyclotomic(6)).expect("Phi_6 satisfies Theorem 1");
    out.push(CorpusEntry {
        name: "layer:Phi6".into(),
        presentation: phi6.presentation.clone(),
        hurwitz_word: Some(phi6.hurwitz_word.clone()),
        expected: Delta::Poly(phi6.target.clone()),
    });
    let t2m1 = IntPoly::from_i64s(&[-1, 0, 1]);
    let red = realize_reducible_layer(&t2m1).expect("t^2 - 1 is a reducible layer");
    out.push(CorpusEntry {
        name: "layer:t^2-1".into(),
        presentation: red.presentation.clone(),
        hurwitz_word: Some(red.hurwitz_word.clone()),
        expected: Delta::Poly(red.target.clone()),
    });
    let builtins = builtin_corpus();
    let find = |name: &str| {
        builtins
            .iter()
            .chain(out.iter())
            .find(|e| e.name == name)
            .cloned()
            .expect("corpus member exists")
    };
    let mut products = Vec::new();
    for (a, b) in [
        ("g2", "g2"),
        ("g2", "abelian:2"),
        ("abelian:2", "layer:Phi6"),
    ] {
        products.push(product(&find(a), &find(b)));
    }
    out.extend(products);
    out
}

/// Hurwitz product of two Hurwitz corpus members with the product of their
/// expected polynomials as the expected value.
pub fn product(a: &CorpusEntry, b: &CorpusEntry) -> CorpusEntry {
    let (ha, hb) = (
        a.hurwitz_word.as_ref().expect("first factor is Hurwitz"),
        b.hurwitz_word.as_ref().expect("second factor is Hurwitz"),
    );
    let (g, h) = hurwitz_product_with(&a.presentation, ha, &b.presentation, hb)
        .expect("central words are positive");
    let expected = match (&a.expected, &b.expected) {
        (Delta::Poly(p), Delta::Poly(q)) => Delta::Poly(p * q),
        _ => Delta::Zero,
    };
    CorpusEntry {
        name: format!("{} * {}", a.name, b.name),
        presentation: g,
        hurwitz_word: Some(h),
        expected,
    }
}

pub fn full_corpus() -> Vec<CorpusEntry> {
    let mut out = builtin_corpus();
    out.extend(derived_corpus());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexmod::alexander_polynomial;

    #[test]
    fn corpus_matches_expected() {
        for e in full_corpus() {
            assert_eq!(
                alexander_polynomial(&e.presentation).delta,
                e.expected,
                "{}",
                e.name
            );
        }
    }
}
