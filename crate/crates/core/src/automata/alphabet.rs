use std::fmt;

use super::AutomataError;

/// A letter, stored as its position in the owning [`Alphabet`].
pub type Letter = usize;

/// An ordered set of single-character letters.
///
/// The order matters: canonical automata are numbered by breadth-first
/// discovery in this order, so two runs over permuted alphabets produce
/// different (but equally valid) encodings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self, AutomataError> {
        let letters: Vec<char> = letters.into_iter().collect();
        if letters.is_empty() {
            return Err(AutomataError::EmptyAlphabet);
        }
        for (i, &c) in letters.iter().enumerate() {
            if letters[..i].contains(&c) {
                return Err(AutomataError::DuplicateLetter(c));
            }
        }
        Ok(Alphabet { letters })
    }

    /// The first `n` lowercase latin letters, `a`, `b`, ... Panics for `n`
    /// outside `1..=26`.
    pub fn first(n: usize) -> Self {
        assert!((1..=26).contains(&n), "alphabet size {n} outside 1..=26");
        Alphabet {
            letters: (b'a'..).take(n).map(char::from).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn symbol(&self, letter: Letter) -> char {
        self.letters[letter]
    }

    pub fn index_of(&self, c: char) -> Option<Letter> {
        self.letters.iter().position(|&l| l == c)
    }

    pub fn encode(&self, word: &str) -> Result<Vec<Letter>, AutomataError> {
        word.chars()
            .map(|c| self.index_of(c).ok_or(AutomataError::UnknownLetter(c)))
            .collect()
    }

    pub fn decode(&self, word: &[Letter]) -> String {
        word.iter().map(|&a| self.letters[a]).collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}
