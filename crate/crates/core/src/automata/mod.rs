//! Complete DFAs, ε-NFAs, subset construction, minimization and canonical
//! forms.

mod alphabet;
mod dfa;
mod json;
mod nfa;

pub use alphabet::{Alphabet, Letter};
pub use dfa::{CanonicalDfa, Dfa};
pub use json::DfaJson;
pub use nfa::{Label, Nfa};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutomataError {
    #[error("alphabet must contain at least one letter")]
    EmptyAlphabet,
    #[error("duplicate letter '{0}' in alphabet")]
    DuplicateLetter(char),
    #[error("letter '{0}' is not in the alphabet")]
    UnknownLetter(char),
    #[error("alphabet entries must be single characters, got {0:?}")]
    BadLetter(String),
    #[error("automaton needs at least one state")]
    NoStates,
    #[error("state {state} out of range for {count} states")]
    StateOutOfRange { state: usize, count: usize },
    #[error("transition row {row} has {got} entries, expected {expected}")]
    RowWidth {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("declared {declared} states but the transition table has {rows} rows")]
    StateCount { declared: usize, rows: usize },
    #[error("alphabets differ: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },
    #[error("malformed automaton JSON: {0}")]
    Json(String),
}
