use std::collections::{HashMap, VecDeque};
use std::hash::{Hash, Hasher};

use super::{Alphabet, AutomataError, Label, Letter, Nfa};

/// Complete deterministic automaton. Every state has exactly one successor
/// per letter, so complement is a flip of the final flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    delta: Vec<usize>,
    initial: usize,
    finals: Vec<bool>,
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        delta: Vec<Vec<usize>>,
        initial: usize,
        finals: impl IntoIterator<Item = usize>,
    ) -> Result<Self, AutomataError> {
        let count = delta.len();
        if count == 0 {
            return Err(AutomataError::NoStates);
        }
        let check = |state: usize| {
            if state < count {
                Ok(state)
            } else {
                Err(AutomataError::StateOutOfRange { state, count })
            }
        };
        let mut flat = Vec::with_capacity(count * alphabet.len());
        for (row, targets) in delta.iter().enumerate() {
            if targets.len() != alphabet.len() {
                return Err(AutomataError::RowWidth {
                    row,
                    got: targets.len(),
                    expected: alphabet.len(),
                });
            }
            for &t in targets {
                flat.push(check(t)?);
            }
        }
        check(initial)?;
        let mut flags = vec![false; count];
        for q in finals {
            flags[check(q)?] = true;
        }
        Ok(Dfa::from_parts(alphabet, flat, initial, flags))
    }

    pub(crate) fn from_parts(
        alphabet: Alphabet,
        delta: Vec<usize>,
        initial: usize,
        finals: Vec<bool>,
    ) -> Self {
        debug_assert_eq!(delta.len(), finals.len() * alphabet.len());
        debug_assert!(delta.iter().all(|&t| t < finals.len()));
        Dfa {
            alphabet,
            delta,
            initial,
            finals,
        }
    }

    /// The one-state automaton for ∅.
    pub fn empty(alphabet: Alphabet) -> Self {
        let n = alphabet.len();
        Dfa::from_parts(alphabet, vec![0; n], 0, vec![false])
    }

    /// The one-state automaton for Σ*.
    pub fn universal(alphabet: Alphabet) -> Self {
        Dfa::empty(alphabet).complement()
    }

    /// Minimal automaton for the single word `word`.
    pub fn from_word(alphabet: Alphabet, word: &[Letter]) -> Self {
        Dfa::from_words(alphabet, std::iter::once(word))
    }

    /// Automaton for a finite set of words (a trie plus sink), minimized.
    pub fn from_words<'a>(alphabet: Alphabet, words: impl IntoIterator<Item = &'a [Letter]>) -> Self {
        let sigma = alphabet.len();
        // state 0 is the sink, state 1 the root
        let mut delta = vec![0; 2 * sigma];
        let mut finals = vec![false, false];
        for word in words {
            let mut q = 1;
            for &a in word {
                if delta[q * sigma + a] == 0 {
                    let fresh = finals.len();
                    finals.push(false);
                    delta.extend(std::iter::repeat_n(0, sigma));
                    delta[q * sigma + a] = fresh;
                }
                q = delta[q * sigma + a];
            }
            finals[q] = true;
        }
        Dfa::from_parts(alphabet, delta, 1, finals).minimize()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.state_count()).filter(|&q| self.finals[q])
    }

    pub fn next(&self, q: usize, a: Letter) -> usize {
        self.delta[q * self.alphabet.len() + a]
    }

    pub fn run(&self, word: &[Letter]) -> usize {
        word.iter().fold(self.initial, |q, &a| self.next(q, a))
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        self.finals[self.run(word)]
    }

    /// Membership for a word spelled in the alphabet's symbols; unknown
    /// symbols are rejected.
    pub fn accepts_str(&self, word: &str) -> bool {
        self.alphabet
            .encode(word)
            .map(|w| self.accepts(&w))
            .unwrap_or(false)
    }

    pub fn complement(&self) -> Dfa {
        Dfa {
            finals: self.finals.iter().map(|f| !f).collect(),
            ..self.clone()
        }
    }

    /// Same transition structure, different final states.
    pub fn with_finals(&self, finals: impl IntoIterator<Item = usize>) -> Dfa {
        let mut flags = vec![false; self.state_count()];
        for q in finals {
            flags[q] = true;
        }
        Dfa {
            finals: flags,
            ..self.clone()
        }
    }

    pub fn with_initial(&self, initial: usize) -> Dfa {
        Dfa {
            initial,
            ..self.clone()
        }
    }

    /// States reachable from the initial state.
    pub fn accessible(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        seen[self.initial] = true;
        let mut stack = vec![self.initial];
        while let Some(q) = stack.pop() {
            for a in 0..self.alphabet.len() {
                let t = self.next(q, a);
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// States from which some final state is reachable (by a path of length ≥ 0).
    pub fn coaccessible(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut preds = vec![Vec::new(); n];
        for q in 0..n {
            for a in 0..self.alphabet.len() {
                preds[self.next(q, a)].push(q);
            }
        }
        let mut seen = self.finals.clone();
        let mut stack: Vec<usize> = self.finals().collect();
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    pub fn is_empty(&self) -> bool {
        let acc = self.accessible();
        !(0..self.state_count()).any(|q| acc[q] && self.finals[q])
    }

    pub fn is_universal(&self) -> bool {
        self.complement().is_empty()
    }

    /// Whether the language is `∅`, `{ε}`, `Σ⁺` or `Σ*`, i.e. all nonempty
    /// words agree.
    pub fn is_trivial(&self) -> bool {
        let mut reach = vec![false; self.state_count()];
        for a in 0..self.alphabet.len() {
            let q = self.next(self.initial, a);
            for (r, yes) in self.with_initial(q).accessible().into_iter().enumerate() {
                reach[r] |= yes;
            }
        }
        let mut finals = (0..self.state_count()).filter(|&q| reach[q]).map(|q| self.finals[q]);
        let first = finals.next().unwrap_or(false);
        finals.all(|f| f == first)
    }

    pub fn accepts_epsilon(&self) -> bool {
        self.finals[self.initial]
    }

    /// Whether the accepted language is finite: no cycle passes through a
    /// state that is both accessible and co-accessible.
    pub fn is_finite(&self) -> bool {
        let useful = self.useful();
        // Kahn's algorithm on the trim subgraph
        let n = self.state_count();
        let mut indegree = vec![0usize; n];
        for q in (0..n).filter(|&q| useful[q]) {
            for a in 0..self.alphabet.len() {
                let t = self.next(q, a);
                if useful[t] {
                    indegree[t] += 1;
                }
            }
        }
        let mut stack: Vec<usize> = (0..n).filter(|&q| useful[q] && indegree[q] == 0).collect();
        let mut removed = 0;
        while let Some(q) = stack.pop() {
            removed += 1;
            for a in 0..self.alphabet.len() {
                let t = self.next(q, a);
                if useful[t] {
                    indegree[t] -= 1;
                    if indegree[t] == 0 {
                        stack.push(t);
                    }
                }
            }
        }
        removed == useful.iter().filter(|&&u| u).count()
    }

    fn useful(&self) -> Vec<bool> {
        let acc = self.accessible();
        let co = self.coaccessible();
        acc.iter().zip(&co).map(|(a, c)| *a && *c).collect()
    }

    /// All accepted words, in length-lexicographic order, or `None` when the
    /// language is infinite.
    pub fn finite_words(&self) -> Option<Vec<Vec<Letter>>> {
        if !self.is_finite() {
            return None;
        }
        let useful = self.useful();
        let mut out = Vec::new();
        let mut layer = vec![(self.initial, Vec::new())];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for (q, word) in layer {
                if !useful[q] {
                    continue;
                }
                if self.finals[q] {
                    out.push(word.clone());
                }
                for a in 0..self.alphabet.len() {
                    let mut w = word.clone();
                    w.push(a);
                    next.push((self.next(q, a), w));
                }
            }
            layer = next;
        }
        Some(out)
    }

    /// Letters read on some transition between useful states, i.e. letters
    /// occurring in some accepted word.
    pub fn minimal_alphabet(&self) -> Vec<Letter> {
        let useful = self.useful();
        (0..self.alphabet.len())
            .filter(|&a| {
                (0..self.state_count()).any(|q| useful[q] && useful[self.next(q, a)])
            })
            .collect()
    }

    /// View as an NFA over the same state numbers.
    pub fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new(self.alphabet.clone());
        for _ in 0..self.state_count() {
            nfa.add_state();
        }
        for q in 0..self.state_count() {
            for a in 0..self.alphabet.len() {
                nfa.add_move(q, Label::Letter(a), self.next(q, a));
            }
            nfa.set_final(q, self.finals[q]);
        }
        nfa.set_initial(self.initial, true);
        nfa
    }

    /// Renumber the accessible states in breadth-first discovery order,
    /// following letters in alphabet order. Unreachable states are dropped.
    fn bfs_renumber(&self) -> Dfa {
        let n = self.state_count();
        let sigma = self.alphabet.len();
        let mut order = vec![usize::MAX; n];
        let mut states = vec![self.initial];
        order[self.initial] = 0;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for a in 0..sigma {
                let t = self.next(q, a);
                if order[t] == usize::MAX {
                    order[t] = states.len();
                    states.push(t);
                    queue.push_back(t);
                }
            }
        }
        let mut delta = Vec::with_capacity(states.len() * sigma);
        for &q in &states {
            for a in 0..sigma {
                delta.push(order[self.next(q, a)]);
            }
        }
        let finals = states.iter().map(|&q| self.finals[q]).collect();
        Dfa::from_parts(self.alphabet.clone(), delta, 0, finals)
    }

    /// Minimal equivalent automaton, in breadth-first numbering.
    ///
    /// Moore-style refinement: states start split by finality and are split
    /// further by the classes of their successors until the partition is
    /// stable.
    pub fn minimize(&self) -> Dfa {
        let reach = self.bfs_renumber();
        let n = reach.state_count();
        let sigma = reach.alphabet.len();
        let mut class: Vec<usize> = reach.finals.iter().map(|&f| usize::from(f)).collect();
        let mut classes = class.iter().copied().max().map_or(0, |m| m + 1);
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut refined = Vec::with_capacity(n);
            for q in 0..n {
                let mut sig = Vec::with_capacity(sigma + 1);
                sig.push(class[q]);
                sig.extend((0..sigma).map(|a| class[reach.next(q, a)]));
                let fresh = ids.len();
                refined.push(*ids.entry(sig).or_insert(fresh));
            }
            let count = ids.len();
            class = refined;
            if count == classes {
                break;
            }
            classes = count;
        }
        let mut delta = vec![0; classes * sigma];
        let mut finals = vec![false; classes];
        for q in 0..n {
            for a in 0..sigma {
                delta[class[q] * sigma + a] = class[reach.next(q, a)];
            }
            finals[class[q]] = reach.finals[q];
        }
        Dfa::from_parts(reach.alphabet.clone(), delta, class[0], finals).bfs_renumber()
    }

    pub fn canonicalize(&self) -> CanonicalDfa {
        CanonicalDfa::from_minimal(self.minimize())
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool, AutomataError> {
        if self.alphabet != other.alphabet {
            return Err(AutomataError::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: other.alphabet.to_string(),
            });
        }
        Ok(self.canonicalize() == other.canonicalize())
    }
}

/// A minimized, breadth-first numbered automaton together with a flat byte
/// encoding. Equal encodings mean equal languages over the same alphabet.
#[derive(Clone, Debug)]
pub struct CanonicalDfa {
    dfa: Dfa,
    key: Vec<u8>,
}

impl CanonicalDfa {
    fn from_minimal(dfa: Dfa) -> Self {
        let mut key = Vec::new();
        for &c in dfa.alphabet.letters() {
            let mut buf = [0; 4];
            key.extend_from_slice(c.encode_utf8(&mut buf).as_bytes());
        }
        key.push(0);
        key.extend_from_slice(&(dfa.state_count() as u32).to_le_bytes());
        for &t in &dfa.delta {
            key.extend_from_slice(&(t as u32).to_le_bytes());
        }
        for chunk in dfa.finals.chunks(8) {
            key.push(
                chunk
                    .iter()
                    .enumerate()
                    .fold(0u8, |b, (i, &f)| b | (u8::from(f) << i)),
            );
        }
        CanonicalDfa { dfa, key }
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn into_dfa(self) -> Dfa {
        self.dfa
    }

    pub fn encoding(&self) -> &[u8] {
        &self.key
    }
}

impl PartialEq for CanonicalDfa {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for CanonicalDfa {}

impl Hash for CanonicalDfa {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unary_ln(n: usize) -> Dfa {
        let delta = (0..n).map(|q| vec![(q + 1).min(n - 1)]).collect();
        Dfa::new(Alphabet::first(1), delta, 0, 0..n - 1).unwrap()
    }

    #[test]
    fn validation() {
        let sigma = Alphabet::first(2);
        assert_eq!(
            Dfa::new(sigma.clone(), vec![], 0, []),
            Err(AutomataError::NoStates)
        );
        assert_eq!(
            Dfa::new(sigma.clone(), vec![vec![0]], 0, []),
            Err(AutomataError::RowWidth { row: 0, got: 1, expected: 2 })
        );
        assert_eq!(
            Dfa::new(sigma, vec![vec![0, 1]], 0, []),
            Err(AutomataError::StateOutOfRange { state: 1, count: 1 })
        );
    }

    #[test]
    fn unary_ln_is_minimal() {
        let l5 = unary_ln(5);
        assert_eq!(l5.minimize().state_count(), 5);
        assert!(l5.accepts_str("aaa"));
        assert!(!l5.accepts_str("aaaa"));
    }

    #[test]
    fn trivial_languages() {
        let sigma = Alphabet::first(2);
        let eps = Dfa::from_word(sigma.clone(), &[]);
        assert!(Dfa::empty(sigma.clone()).is_trivial());
        assert!(Dfa::universal(sigma.clone()).is_trivial());
        assert!(eps.is_trivial());
        assert!(eps.complement().is_trivial());
        assert!(!Dfa::from_word(sigma, &[0]).is_trivial());
    }

    #[test]
    fn redundant_universal_collapses() {
        let sigma = Alphabet::first(2);
        let dfa = Dfa::new(sigma, vec![vec![1, 2], vec![2, 1], vec![0, 0]], 0, 0..3).unwrap();
        let min = dfa.minimize();
        assert_eq!(min.state_count(), 1);
        assert!(min.is_universal());
    }

    #[test]
    fn predicates() {
        let sigma = Alphabet::first(2);
        let empty = Dfa::empty(sigma.clone());
        assert!(empty.is_empty());
        assert!(!empty.accepts_epsilon());
        let plus = Dfa::new(sigma.clone(), vec![vec![1, 1], vec![1, 1]], 0, [1]).unwrap();
        assert!(!plus.is_universal());
        assert!(!plus.accepts_epsilon());
        assert!(Dfa::universal(sigma).is_universal());
    }

    #[test]
    fn empty_and_epsilon_differ() {
        let sigma = Alphabet::first(2);
        let eps = Dfa::from_word(sigma.clone(), &[]);
        assert_ne!(eps.canonicalize(), Dfa::empty(sigma).canonicalize());
    }

    #[test]
    fn permuted_states_share_canonical_form() {
        let sigma = Alphabet::first(2);
        let a = Dfa::new(sigma.clone(), vec![vec![1, 0], vec![2, 0], vec![2, 2]], 0, [2]).unwrap();
        let b = Dfa::new(sigma, vec![vec![0, 0], vec![0, 2], vec![1, 2]], 2, [0]).unwrap();
        assert_eq!(a.canonicalize(), b.canonicalize());
        assert_eq!(a.canonicalize().encoding(), b.canonicalize().encoding());
    }

    #[test]
    fn finiteness_and_enumeration() {
        let sigma = Alphabet::first(2);
        let words: Vec<Vec<Letter>> = vec![vec![], vec![0, 1], vec![1]];
        let dfa = Dfa::from_words(sigma.clone(), words.iter().map(Vec::as_slice));
        assert!(dfa.is_finite());
        assert_eq!(dfa.finite_words().unwrap(), vec![vec![], vec![1], vec![0, 1]]);
        assert!(!Dfa::universal(sigma).is_finite());
    }

    #[test]
    fn minimal_alphabet_skips_unused_letters() {
        let sigma = Alphabet::first(3);
        let dfa = Dfa::from_word(sigma.clone(), &sigma.encode("ab").unwrap());
        assert_eq!(dfa.minimal_alphabet(), vec![0, 1]);
        assert!(Dfa::empty(sigma).minimal_alphabet().is_empty());
    }

    #[test]
    fn equivalence_requires_same_alphabet() {
        let a = Dfa::empty(Alphabet::first(2));
        let b = Dfa::empty(Alphabet::first(3));
        assert!(matches!(a.equivalent(&b), Err(AutomataError::AlphabetMismatch { .. })));
    }
}
