use std::collections::HashMap;

use super::{Alphabet, Dfa, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Letter(Letter),
    Epsilon,
}

/// Nondeterministic automaton with ε-moves and any number of initial states.
#[derive(Clone, Debug)]
pub struct Nfa {
    alphabet: Alphabet,
    initials: Vec<bool>,
    finals: Vec<bool>,
    moves: Vec<Vec<(Label, usize)>>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet) -> Self {
        Nfa {
            alphabet,
            initials: Vec::new(),
            finals: Vec::new(),
            moves: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.moves.len()
    }

    pub fn add_state(&mut self) -> usize {
        self.initials.push(false);
        self.finals.push(false);
        self.moves.push(Vec::new());
        self.moves.len() - 1
    }

    pub fn add_move(&mut self, from: usize, label: Label, to: usize) {
        assert!(to < self.state_count(), "move target {to} out of range");
        self.moves[from].push((label, to));
    }

    pub fn set_initial(&mut self, q: usize, yes: bool) {
        self.initials[q] = yes;
    }

    pub fn set_final(&mut self, q: usize, yes: bool) {
        self.finals[q] = yes;
    }

    pub fn is_initial(&self, q: usize) -> bool {
        self.initials[q]
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn moves(&self) -> impl Iterator<Item = (usize, Label, usize)> + '_ {
        self.moves
            .iter()
            .enumerate()
            .flat_map(|(q, out)| out.iter().map(move |&(l, t)| (q, l, t)))
    }

    fn close(&self, set: &mut Vec<usize>) {
        let mut seen = vec![false; self.state_count()];
        for &q in set.iter() {
            seen[q] = true;
        }
        let mut stack = set.clone();
        while let Some(q) = stack.pop() {
            for &(label, t) in &self.moves[q] {
                if label == Label::Epsilon && !seen[t] {
                    seen[t] = true;
                    set.push(t);
                    stack.push(t);
                }
            }
        }
        set.sort_unstable();
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        let mut current: Vec<usize> = (0..self.state_count())
            .filter(|&q| self.initials[q])
            .collect();
        self.close(&mut current);
        for &a in word {
            current = self.step(&current, a);
        }
        current.iter().any(|&q| self.finals[q])
    }

    fn step(&self, from: &[usize], a: Letter) -> Vec<usize> {
        let mut next: Vec<usize> = from
            .iter()
            .flat_map(|&q| self.moves[q].iter())
            .filter(|&&(l, _)| l == Label::Letter(a))
            .map(|&(_, t)| t)
            .collect();
        next.sort_unstable();
        next.dedup();
        self.close(&mut next);
        next
    }

    /// Subset construction. The result is complete: the empty subset becomes
    /// an explicit sink whenever it is reachable.
    pub fn determinize(&self) -> Dfa {
        let sigma = self.alphabet.len();
        let mut start: Vec<usize> = (0..self.state_count())
            .filter(|&q| self.initials[q])
            .collect();
        self.close(&mut start);

        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut subsets = vec![start.clone()];
        index.insert(start, 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            for a in 0..sigma {
                let next = self.step(&subsets[i], a);
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len();
                        index.insert(next.clone(), id);
                        subsets.push(next);
                        id
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let finals = subsets
            .iter()
            .map(|s| s.iter().any(|&q| self.finals[q]))
            .collect();
        Dfa::from_parts(self.alphabet.clone(), delta, 0, finals)
    }
}
