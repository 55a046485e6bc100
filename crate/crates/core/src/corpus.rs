//! Witness languages with known orbit data.
//!
//! States in the transition tables below are numbered as in the drawings,
//! from 1; the automata themselves use `state - 1`.

use crate::automata::{Alphabet, AutomataError, Dfa, Label, Nfa};
use crate::langops::{OpSet, OpWord};

/// A fact about a witness that the orbit engine should reproduce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expectation {
    OrbitSize { ops: OpSet, size: usize },
    /// Words generating the orbit, one per member.
    OrbitWords { ops: OpSet, words: Vec<OpWord> },
    /// `word(L)` is the witness automaton with these final states (numbered
    /// from 1).
    FinalStates { word: OpWord, states: Vec<usize> },
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub name: String,
    pub dfa: Dfa,
    pub expected: Vec<Expectation>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("L_n needs n ≥ 2, got {0}")]
    UnaryTooSmall(usize),
    #[error("unknown witness '{0}'")]
    UnknownWitness(String),
    #[error(transparent)]
    Automata(#[from] AutomataError),
}

fn ops(s: &str) -> OpSet {
    s.parse().expect("corpus op letters")
}

fn word(s: &str) -> OpWord {
    s.parse().expect("corpus op letters")
}

/// Builds a complete automaton from rows `(state, [targets in letter order])`.
fn from_table(alphabet: &str, rows: &[(usize, [usize; 4])], initial: usize, finals: &[usize]) -> Dfa {
    let mut delta = vec![Vec::new(); rows.len()];
    for (q, targets) in rows {
        delta[q - 1] = targets.iter().map(|t| t - 1).collect();
    }
    Dfa::new(
        Alphabet::new(alphabet.chars()).expect("corpus alphabet"),
        delta,
        initial - 1,
        finals.iter().map(|f| f - 1),
    )
    .expect("corpus table is complete")
}

/// The `{p,c}` witness table: the final states of each orbit member.
pub const TABLE1: [(&str, &[usize]); 14] = [
    ("", &[3, 7, 8]),
    ("c", &[1, 2, 4, 5, 6]),
    ("p", &[1, 2, 3, 5, 6, 7, 8]),
    ("pc", &[1, 2, 3, 4, 5, 6, 8]),
    ("cp", &[4]),
    ("cpc", &[7]),
    ("pcp", &[1, 4, 5, 8]),
    ("pcpc", &[1, 5, 6, 7]),
    ("cpcp", &[2, 3, 6, 7]),
    ("cpcpc", &[2, 3, 4, 8]),
    ("pcpcp", &[1, 2, 3, 5, 6, 7]),
    ("pcpcpc", &[1, 2, 3, 4, 5, 8]),
    ("cpcpcp", &[4, 8]),
    ("cpcpcpc", &[6, 7]),
];

/// Eight states over `{a,b,c,d}` whose orbit under `{p,c}` has 14 members.
pub fn figure1() -> Witness {
    let dfa = from_table(
        "abcd",
        &[
            (1, [1, 5, 5, 6]),
            (2, [3, 3, 3, 3]),
            (3, [2, 2, 2, 2]),
            (4, [4, 4, 4, 4]),
            (5, [3, 8, 4, 7]),
            (6, [7, 7, 7, 7]),
            (7, [7, 7, 7, 7]),
            (8, [4, 4, 4, 4]),
        ],
        1,
        &[3, 7, 8],
    );
    let mut expected = vec![Expectation::OrbitSize {
        ops: ops("pc"),
        size: 14,
    }];
    expected.extend(TABLE1.iter().map(|(w, states)| Expectation::FinalStates {
        word: word(w),
        states: states.to_vec(),
    }));
    Witness {
        name: "figure1".into(),
        dfa,
        expected,
    }
}

/// The five-state half of the `{k,c,f}` witness, over `{a,b,c,d}`.
pub fn figure2_base() -> Dfa {
    from_table(
        "abcd",
        &[
            (1, [2, 3, 4, 5]),
            (2, [4, 5, 3, 2]),
            (3, [4, 5, 5, 3]),
            (4, [4, 5, 2, 2]),
            (5, [4, 4, 2, 4]),
        ],
        1,
        &[2],
    )
}

/// Two copies of [`figure2_base`], the second over `{e,f,g,h}`, accepted side
/// by side over `{a,…,i}`. The letter `i` occurs in no word, which keeps
/// `kf(L) = {a,…,h}*` short of `Σ*`.
pub fn figure2() -> Witness {
    let base = figure2_base();
    let sigma = Alphabet::new("abcdefghi".chars()).expect("nine letters");
    let mut nfa = Nfa::new(sigma);
    let n = base.state_count();
    for _ in 0..2 * n {
        nfa.add_state();
    }
    for copy in 0..2 {
        let offset = copy * n;
        nfa.set_initial(offset + base.initial(), true);
        for q in 0..n {
            nfa.set_final(offset + q, base.is_final(q));
            for a in 0..4 {
                nfa.add_move(offset + q, Label::Letter(copy * 4 + a), offset + base.next(q, a));
            }
        }
    }
    Witness {
        name: "figure2".into(),
        dfa: nfa.determinize().minimize(),
        expected: vec![Expectation::OrbitSize {
            ops: ops("kcf"),
            size: 50,
        }],
    }
}

/// `L_n = {ε, a, …, a^{n-2}}` over `{a}`: `n` states, the last a sink. Its
/// orbit under `q` is `L_n, L_{n-1}, …, L_2 = {ε}, ∅`.
pub fn unary_ln(n: usize) -> Result<Witness, CorpusError> {
    if n < 2 {
        return Err(CorpusError::UnaryTooSmall(n));
    }
    let delta = (0..n).map(|q| vec![(q + 1).min(n - 1)]).collect();
    let dfa = Dfa::new(Alphabet::first(1), delta, 0, 0..n - 1)?;
    Ok(Witness {
        name: format!("L{n}"),
        dfa,
        expected: vec![Expectation::OrbitSize {
            ops: ops("q"),
            size: n,
        }],
    })
}

/// The minimal complete automaton of `{word}`.
pub fn single_word(alphabet: &Alphabet, word: &str) -> Result<Witness, CorpusError> {
    let letters = alphabet.encode(word)?;
    Ok(Witness {
        name: word.to_string(),
        dfa: Dfa::from_word(alphabet.clone(), &letters),
        expected: Vec::new(),
    })
}

/// `{abc}`, which realizes all 13 languages of the `{k,p,s,f}` bound.
pub fn abc() -> Witness {
    let mut w = single_word(&Alphabet::first(3), "abc").expect("abc over a,b,c");
    w.expected = vec![
        Expectation::OrbitSize {
            ops: ops("kpsf"),
            size: 13,
        },
        Expectation::OrbitWords {
            ops: ops("kpsf"),
            words: ["", "k", "p", "s", "f", "kp", "ks", "kf", "pk", "sk", "fk", "pks", "skp"]
                .iter()
                .map(|s| word(s))
                .collect(),
        },
    ];
    w
}

/// Looks a witness up by its command-line name; `n` is used by `Ln`.
pub fn by_name(name: &str, n: Option<usize>) -> Result<Witness, CorpusError> {
    match name {
        "figure1" => Ok(figure1()),
        "figure2" => Ok(figure2()),
        "abc" => Ok(abc()),
        "Ln" | "ln" => unary_ln(n.unwrap_or(5)),
        other => Err(CorpusError::UnknownWitness(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure1_membership() {
        let l = figure1().dfa;
        assert!(l.accepts_str("ba"));
        assert!(l.accepts_str("abb"));
        assert!(!l.accepts_str("aab"));
        assert!(!l.accepts_str("d"));
        assert!(l.accepts_str("da"));
    }

    #[test]
    fn figures_are_minimal() {
        assert_eq!(figure1().dfa.minimize().state_count(), 8);
        assert_eq!(figure2_base().minimize().state_count(), 5);
    }

    #[test]
    fn figure2_accepts_both_copies() {
        let w = figure2();
        assert!(figure2_base().accepts_str("a"));
        assert!(w.dfa.accepts_str("a"));
        assert!(w.dfa.accepts_str("e"));
        assert!(!w.dfa.accepts_str("ae"));
        assert_eq!(crate::langops::minimal_alphabet(&w.dfa).len(), 8);
    }

    #[test]
    fn unary_family() {
        assert_eq!(unary_ln(1).unwrap_err(), CorpusError::UnaryTooSmall(1));
        let l2 = unary_ln(2).unwrap().dfa;
        assert!(l2.accepts_str("") && !l2.accepts_str("a"));
        let l5 = unary_ln(5).unwrap().dfa;
        assert!(l5.accepts_str("aaa") && !l5.accepts_str("aaaa"));
    }

    #[test]
    fn lookup() {
        assert_eq!(by_name("Ln", Some(7)).unwrap().name, "L7");
        assert!(matches!(by_name("nope", None), Err(CorpusError::UnknownWitness(_))));
    }
}
