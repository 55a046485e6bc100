use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::WordSpace;
use crate::automata::{Dfa, Letter};
use crate::langops::{Op, OpWord};

/// An explicit set of words, all of length ≤ the space's `max_len`.
///
/// Operations treat the set as a finite language and truncate the result to
/// the same length bound; complement is taken relative to `Σ^{≤max_len}`.
#[derive(Clone)]
pub struct BoundedLang {
    space: Arc<WordSpace>,
    bits: FixedBitSet,
}

impl PartialEq for BoundedLang {
    fn eq(&self, other: &Self) -> bool {
        self.space.sigma() == other.space.sigma()
            && self.space.max_len() == other.space.max_len()
            && self.bits == other.bits
    }
}

impl Eq for BoundedLang {}

impl BoundedLang {
    pub fn empty(space: &Arc<WordSpace>) -> Self {
        BoundedLang {
            space: Arc::clone(space),
            bits: FixedBitSet::with_capacity(space.word_count()),
        }
    }

    /// All of `Σ^{≤max_len}`.
    pub fn universe(space: &Arc<WordSpace>) -> Self {
        let mut lang = BoundedLang::empty(space);
        lang.bits.insert_range(..);
        lang
    }

    pub fn from_indices(space: &Arc<WordSpace>, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut lang = BoundedLang::empty(space);
        lang.bits.extend(indices);
        lang
    }

    /// Words longer than the space's bound are dropped.
    pub fn from_words<'a>(space: &Arc<WordSpace>, words: impl IntoIterator<Item = &'a [Letter]>) -> Self {
        BoundedLang::from_indices(space, words.into_iter().filter_map(|w| space.index_of(w)))
    }

    /// `L(dfa) ∩ Σ^{≤max_len}`.
    pub fn from_dfa(space: &Arc<WordSpace>, dfa: &Dfa) -> Self {
        assert_eq!(dfa.alphabet().len(), space.sigma(), "alphabet size mismatch");
        // states along the shortlex tree: state(w·a) = δ(state(w), a)
        let n = space.word_count();
        let sigma = space.sigma();
        let mut states = vec![dfa.initial(); n];
        let mut lang = BoundedLang::empty(space);
        for i in 0..n {
            if i > 0 {
                states[i] = dfa.next(states[space.parent(i)], (i - 1) % sigma);
            }
            lang.bits.set(i, dfa.is_final(states[i]));
        }
        lang
    }

    pub fn space(&self) -> &Arc<WordSpace> {
        &self.space
    }

    pub fn max_len(&self) -> usize {
        self.space.max_len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn contains(&self, word: &[Letter]) -> bool {
        self.space.index_of(word).is_some_and(|i| self.bits.contains(i))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn words(&self) -> impl Iterator<Item = Vec<Letter>> + '_ {
        self.bits.ones().map(|i| self.space.word(i))
    }

    pub fn is_subset(&self, other: &BoundedLang) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Keep only words of length ≤ `len`, re-homed in `smaller`.
    pub fn restrict(&self, smaller: &Arc<WordSpace>) -> BoundedLang {
        assert_eq!(smaller.sigma(), self.space.sigma());
        assert!(smaller.max_len() <= self.space.max_len());
        let n = smaller.word_count();
        BoundedLang::from_indices(smaller, self.bits.ones().take_while(|&i| i < n))
    }

    /// The same finite set viewed inside a larger space.
    pub fn embed(&self, larger: &Arc<WordSpace>) -> BoundedLang {
        assert_eq!(larger.sigma(), self.space.sigma());
        assert!(larger.max_len() >= self.space.max_len());
        BoundedLang::from_indices(larger, self.bits.ones())
    }

    /// All of `Σ^{≤max_len}`.
    pub fn is_universe(&self) -> bool {
        self.bits.is_full()
    }

    /// `self ∪ {ε}`.
    pub fn with_epsilon(&self) -> BoundedLang {
        let mut out = self.clone();
        out.bits.insert(0);
        out
    }

    /// Whether this is one of `∅`, `{ε}`, `Σ^{1..ℓ}`, `Σ^{≤ℓ}`: the bounded
    /// images of the trivial class `∅, {ε}, Σ⁺, Σ*`.
    pub fn is_trivial(&self) -> bool {
        let n = self.bits.len();
        let rest = self.bits.count_ones(1..);
        rest == 0 || rest == n - 1
    }

    pub fn apply(&self, op: Op) -> BoundedLang {
        let s = &*self.space;
        let n = s.word_count();
        let mut out = BoundedLang::empty(&self.space);
        match op {
            Op::C => {
                out.bits = self.bits.clone();
                out.bits.toggle_range(..);
            }
            Op::K | Op::E => {
                let star = self.star();
                if op == Op::K {
                    out = star;
                } else {
                    // L⁺ = L·L*
                    for i in 0..n {
                        let len = s.length(i);
                        let hit = (0..=len).any(|j| {
                            self.bits.contains(s.prefix(i, j)) && star.bits.contains(s.suffix_from(i, j))
                        });
                        out.bits.set(i, hit);
                    }
                }
            }
            Op::P | Op::S | Op::F | Op::W => {
                out.bits = self.bits.clone();
                for i in (1..n).rev() {
                    if !out.bits.contains(i) {
                        continue;
                    }
                    match op {
                        Op::P => out.bits.insert(s.parent(i)),
                        Op::S => out.bits.insert(s.tail(i)),
                        Op::F => {
                            out.bits.insert(s.parent(i));
                            out.bits.insert(s.tail(i));
                        }
                        _ => {
                            for &d in s.deletions(i) {
                                out.bits.insert(d as usize);
                            }
                        }
                    }
                }
            }
            Op::Q => {
                let parents = BoundedLang::from_indices(
                    &self.space,
                    self.bits.ones().filter(|&i| i > 0).map(|i| s.parent(i)),
                );
                out = parents.apply(Op::P);
            }
            Op::R => {
                out.bits.extend(self.bits.ones().map(|i| s.reversed(i)));
            }
            Op::T | Op::N => {
                for x in self.bits.ones() {
                    if x == 0 {
                        out.bits.insert(0);
                        continue;
                    }
                    let len = s.length(x);
                    let mut power = Some(x);
                    while let Some(y) = power {
                        out.bits.insert(y);
                        if op == Op::N {
                            for j in 1..len {
                                if let Some(z) = s.concat(y, s.prefix(x, j)) {
                                    out.bits.insert(z);
                                }
                            }
                        }
                        power = s.concat(y, x);
                    }
                }
            }
        }
        out
    }

    fn star(&self) -> BoundedLang {
        let s = &*self.space;
        let mut out = BoundedLang::empty(&self.space);
        out.bits.insert(0);
        for i in 1..s.word_count() {
            let len = s.length(i);
            let hit = (1..=len)
                .any(|j| self.bits.contains(s.prefix(i, j)) && out.bits.contains(s.suffix_from(i, j)));
            out.bits.set(i, hit);
        }
        out
    }

    /// Rightmost operation first.
    pub fn apply_word(&self, word: &OpWord) -> BoundedLang {
        word.in_application_order()
            .fold(self.clone(), |lang, op| lang.apply(op))
    }

    /// Words spelled with the letters `a`, `b`, ..., `ε` for the empty word.
    pub fn spelled(&self) -> Vec<String> {
        self.words().map(|w| spell(&w)).collect()
    }
}

pub(crate) fn spell(word: &[Letter]) -> String {
    if word.is_empty() {
        "ε".to_string()
    } else {
        word.iter().map(|&a| char::from(b'a' + a as u8)).collect()
    }
}

impl fmt::Debug for BoundedLang {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.spelled().join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lang(space: &Arc<WordSpace>, words: &[&str]) -> BoundedLang {
        let encoded: Vec<Vec<Letter>> = words
            .iter()
            .map(|w| w.bytes().map(|b| (b - b'a') as Letter).collect())
            .collect();
        BoundedLang::from_words(space, encoded.iter().map(Vec::as_slice))
    }

    #[test]
    fn complement_of_empty_is_window() {
        let space = Arc::new(WordSpace::new(1, 3));
        let c = BoundedLang::empty(&space).apply(Op::C);
        assert_eq!(c.spelled(), vec!["ε", "a", "aa", "aaa"]);
    }

    #[test]
    fn closures_of_ab() {
        let space = Arc::new(WordSpace::new(2, 4));
        let ab = lang(&space, &["ab"]);
        assert_eq!(ab.apply(Op::P).spelled(), vec!["ε", "a", "ab"]);
        assert_eq!(ab.apply(Op::S).spelled(), vec!["ε", "b", "ab"]);
        assert_eq!(ab.apply(Op::F).spelled(), vec!["ε", "a", "b", "ab"]);
        assert_eq!(ab.apply(Op::Q).spelled(), vec!["ε", "a"]);
        assert_eq!(ab.apply(Op::R).spelled(), vec!["ba"]);
        assert_eq!(ab.apply(Op::K).spelled(), vec!["ε", "ab", "abab"]);
        assert_eq!(ab.apply(Op::E).spelled(), vec!["ab", "abab"]);
        assert_eq!(ab.apply(Op::T).spelled(), vec!["ab", "abab"]);
        assert_eq!(ab.apply(Op::N).spelled(), vec!["ab", "aba", "abab"]);
    }

    #[test]
    fn subwords_are_scattered() {
        let space = Arc::new(WordSpace::new(3, 3));
        let w = lang(&space, &["abc"]).apply(Op::W);
        assert!(w.contains(&[0, 2]));
        assert_eq!(w.len(), 8);
    }

    #[test]
    fn plus_of_language_with_epsilon() {
        let space = Arc::new(WordSpace::new(2, 3));
        let l = lang(&space, &["", "a"]);
        assert_eq!(l.apply(Op::E), l.apply(Op::K));
    }

    #[test]
    fn trivial_detection() {
        let space = Arc::new(WordSpace::new(2, 3));
        assert!(BoundedLang::empty(&space).is_trivial());
        assert!(BoundedLang::universe(&space).is_trivial());
        assert!(lang(&space, &[""]).is_trivial());
        assert!(lang(&space, &[""]).apply(Op::C).is_trivial());
        assert!(!lang(&space, &["a"]).is_trivial());
    }

    #[test]
    fn restrict_and_embed() {
        let small = Arc::new(WordSpace::new(2, 2));
        let big = Arc::new(WordSpace::new(2, 4));
        let l = lang(&big, &["a", "abb", "ba"]);
        assert_eq!(l.restrict(&small).spelled(), vec!["a", "ba"]);
        assert_eq!(l.restrict(&small).embed(&big).spelled(), vec!["a", "ba"]);
    }

    #[test]
    fn dfa_truncation() {
        let space = Arc::new(WordSpace::new(2, 3));
        let sigma = crate::automata::Alphabet::first(2);
        let dfa = Dfa::from_word(sigma, &[0, 1]);
        assert_eq!(BoundedLang::from_dfa(&space, &dfa).spelled(), vec!["ab"]);
    }
}
