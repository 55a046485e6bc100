//! The language operations as automaton constructions.

use std::fmt;
use std::str::FromStr;

use crate::automata::{Dfa, Label, Letter, Nfa};

/// One language operation. Declaration order is the breadth-first
/// enumeration order `k < e < c < p < f < s < w < r`, followed by the three
/// operations outside the main set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    /// Kleene star.
    K,
    /// Positive closure.
    E,
    /// Complement relative to Σ*.
    C,
    /// Prefix closure.
    P,
    /// Factor closure.
    F,
    /// Suffix closure.
    S,
    /// Subword (scattered subsequence) closure.
    W,
    /// Reversal.
    R,
    /// Proper prefixes.
    Q,
    /// Exponentiation, `{x^i : x ∈ L, i ≥ 1}`.
    T,
    /// Fractional exponentiation, `⋃ x⁺·p({x})`.
    N,
}

impl Op {
    pub const ALL: [Op; 11] = [
        Op::K,
        Op::E,
        Op::C,
        Op::P,
        Op::F,
        Op::S,
        Op::W,
        Op::R,
        Op::Q,
        Op::T,
        Op::N,
    ];

    pub fn letter(self) -> char {
        match self {
            Op::K => 'k',
            Op::E => 'e',
            Op::C => 'c',
            Op::P => 'p',
            Op::F => 'f',
            Op::S => 's',
            Op::W => 'w',
            Op::R => 'r',
            Op::Q => 'q',
            Op::T => 't',
            Op::N => 'n',
        }
    }

    pub fn from_letter(c: char) -> Option<Op> {
        Op::ALL.into_iter().find(|op| op.letter() == c)
    }

    /// Expanding, inclusion-preserving and idempotent.
    pub fn is_closure(self) -> bool {
        matches!(self, Op::K | Op::E | Op::P | Op::S | Op::F | Op::W | Op::T)
    }

    /// Only defined here on finite input languages.
    pub fn needs_finite_input(self) -> bool {
        matches!(self, Op::T | Op::N)
    }

    fn bit(self) -> u16 {
        1 << self as u16
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LangOpError {
    #[error("unsupported: non-finite input for exponentiation ({0})")]
    NonFinite(Op),
    #[error("unknown operation letter '{0}'")]
    UnknownOp(char),
}

/// A set of operations, iterated in enumeration order.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct OpSet(u16);

impl OpSet {
    pub fn new(ops: impl IntoIterator<Item = Op>) -> Self {
        OpSet(ops.into_iter().fold(0, |m, op| m | op.bit()))
    }

    pub fn contains(self, op: Op) -> bool {
        self.0 & op.bit() != 0
    }

    pub fn insert(&mut self, op: Op) {
        self.0 |= op.bit();
    }

    pub fn is_subset(self, other: OpSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Op> {
        Op::ALL.into_iter().filter(move |&op| self.contains(op))
    }

    pub fn covers(self, word: &[Op]) -> bool {
        word.iter().all(|&op| self.contains(op))
    }
}

impl fmt::Display for OpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.iter().try_for_each(|op| write!(f, "{op}"))
    }
}

impl fmt::Debug for OpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromStr for OpSet {
    type Err = LangOpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|&c| c != ',' && !c.is_whitespace())
            .map(|c| Op::from_letter(c).ok_or(LangOpError::UnknownOp(c)))
            .collect::<Result<Vec<_>, _>>()
            .map(OpSet::new)
    }
}

/// A composition of operations written as in `x = a₁a₂⋯aₙ`, meaning
/// `a₁(a₂(⋯aₙ(L)))`: the rightmost letter acts first.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpWord(Vec<Op>);

impl OpWord {
    pub fn new(ops: Vec<Op>) -> Self {
        OpWord(ops)
    }

    pub fn empty() -> Self {
        OpWord(Vec::new())
    }

    pub fn ops(&self) -> &[Op] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `op · self`: apply `op` after everything in `self`.
    pub fn prepend(&self, op: Op) -> OpWord {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(op);
        v.extend_from_slice(&self.0);
        OpWord(v)
    }

    /// Operations in the order they act on a language.
    pub fn in_application_order(&self) -> impl Iterator<Item = Op> + '_ {
        self.0.iter().rev().copied()
    }
}

impl fmt::Display for OpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        self.0.iter().try_for_each(|op| write!(f, "{op}"))
    }
}

impl fmt::Debug for OpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OpWord({self})")
    }
}

impl FromStr for OpWord {
    type Err = LangOpError;

    /// Parses operation letters; `""` and `"ε"` are the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "ε" {
            return Ok(OpWord::empty());
        }
        s.chars()
            .map(|c| Op::from_letter(c).ok_or(LangOpError::UnknownOp(c)))
            .collect::<Result<Vec<_>, _>>()
            .map(OpWord)
    }
}

impl From<Vec<Op>> for OpWord {
    fn from(v: Vec<Op>) -> Self {
        OpWord(v)
    }
}

/// `op(L)` as a minimized complete automaton.
pub fn apply(op: Op, dfa: &Dfa) -> Result<Dfa, LangOpError> {
    let out = match op {
        Op::C => dfa.complement(),
        Op::K => star(dfa, true),
        Op::E => star(dfa, false),
        Op::P => dfa.with_finals(flagged(&dfa.coaccessible())),
        Op::Q => {
            let co = dfa.coaccessible();
            let sigma = dfa.alphabet().len();
            dfa.with_finals(
                (0..dfa.state_count()).filter(|&q| (0..sigma).any(|a| co[dfa.next(q, a)])),
            )
        }
        Op::S => {
            let mut nfa = dfa.to_nfa();
            mark_initial(&mut nfa, &dfa.accessible());
            nfa.determinize()
        }
        Op::F => {
            let mut nfa = dfa.with_finals(flagged(&dfa.coaccessible())).to_nfa();
            mark_initial(&mut nfa, &dfa.accessible());
            nfa.determinize()
        }
        Op::W => {
            let mut nfa = dfa.to_nfa();
            let skips: Vec<_> = nfa.moves().map(|(q, _, t)| (q, t)).collect();
            for (q, t) in skips {
                nfa.add_move(q, Label::Epsilon, t);
            }
            nfa.determinize()
        }
        Op::R => reverse(dfa),
        Op::T => {
            let words = dfa.finite_words().ok_or(LangOpError::NonFinite(op))?;
            powers(dfa, &words, false)
        }
        Op::N => {
            let words = dfa.finite_words().ok_or(LangOpError::NonFinite(op))?;
            powers(dfa, &words, true)
        }
    };
    Ok(out.minimize())
}

/// `word(L)`, rightmost operation first.
pub fn apply_word(word: &OpWord, dfa: &Dfa) -> Result<Dfa, LangOpError> {
    let mut cur = dfa.minimize();
    for op in word.in_application_order() {
        cur = apply(op, &cur)?;
    }
    Ok(cur)
}

/// Letters that occur in some word of the language.
pub fn minimal_alphabet(dfa: &Dfa) -> Vec<char> {
    dfa.minimal_alphabet()
        .into_iter()
        .map(|a| dfa.alphabet().symbol(a))
        .collect()
}

fn flagged(flags: &[bool]) -> impl Iterator<Item = usize> + '_ {
    flags.iter().enumerate().filter(|(_, &f)| f).map(|(q, _)| q)
}

fn mark_initial(nfa: &mut Nfa, which: &[bool]) {
    for (q, &yes) in which.iter().enumerate() {
        nfa.set_initial(q, yes);
    }
}

/// `L*` when `with_epsilon`, else `L⁺ = L·L*`.
fn star(dfa: &Dfa, with_epsilon: bool) -> Dfa {
    let mut nfa = dfa.to_nfa();
    let q0 = dfa.initial();
    for f in dfa.finals() {
        nfa.add_move(f, Label::Epsilon, q0);
    }
    if with_epsilon {
        let s = nfa.add_state();
        nfa.set_initial(q0, false);
        nfa.set_initial(s, true);
        nfa.set_final(s, true);
        nfa.add_move(s, Label::Epsilon, q0);
    }
    nfa.determinize()
}

fn reverse(dfa: &Dfa) -> Dfa {
    let mut nfa = Nfa::new(dfa.alphabet().clone());
    for q in 0..dfa.state_count() {
        nfa.add_state();
        nfa.set_initial(q, dfa.is_final(q));
    }
    nfa.set_final(dfa.initial(), true);
    for q in 0..dfa.state_count() {
        for a in 0..dfa.alphabet().len() {
            nfa.add_move(dfa.next(q, a), Label::Letter(a), q);
        }
    }
    nfa.determinize()
}

/// Union over `x ∈ words` of `x⁺`, or of `x⁺·p({x})` when `fractional`.
fn powers(dfa: &Dfa, words: &[Vec<Letter>], fractional: bool) -> Dfa {
    let mut nfa = Nfa::new(dfa.alphabet().clone());
    let start = nfa.add_state();
    nfa.set_initial(start, true);
    for x in words {
        if x.is_empty() {
            nfa.set_final(start, true);
            continue;
        }
        // first full copy of x
        let mut q = start;
        for &a in x {
            let t = nfa.add_state();
            nfa.add_move(q, Label::Letter(a), t);
            q = t;
        }
        nfa.set_final(q, true);
        // then a loop reading further copies of x
        let head = nfa.add_state();
        nfa.add_move(q, Label::Epsilon, head);
        nfa.set_final(head, true);
        let mut c = head;
        for (i, &a) in x.iter().enumerate() {
            let t = if i + 1 == x.len() { head } else { nfa.add_state() };
            nfa.add_move(c, Label::Letter(a), t);
            nfa.set_final(t, fractional || t == head);
            c = t;
        }
    }
    nfa.determinize()
}
