use crate::automata::Letter;

/// Largest supported space; deletion tables must stay addressable by `u32`.
pub const MAX_WORDS: usize = 1 << 24;

/// Index tables for all words of length ≤ `max_len` over `sigma` letters.
///
/// Words are numbered in length-lexicographic order, which makes the
/// numbering a σ-ary heap: the index of `w·a` is `σ·idx(w) + 1 + a`. The
/// numbering does not depend on `max_len`, so `Σ^{≤ℓ}` is an index prefix of
/// `Σ^{≤H}` for `ℓ ≤ H`.
#[derive(Debug)]
pub struct WordSpace {
    sigma: usize,
    max_len: usize,
    start: Vec<usize>,
    letters: Vec<u8>,
    lengths: Vec<u8>,
    reversed: Vec<u32>,
    tails: Vec<u32>,
    del_start: Vec<u32>,
    deletions: Vec<u32>,
}

impl WordSpace {
    pub fn new(sigma: usize, max_len: usize) -> Self {
        assert!((1..=26).contains(&sigma), "alphabet size {sigma} outside 1..=26");
        let count = count_words(sigma, max_len);
        assert!(count <= MAX_WORDS, "word space too large");
        let mut words: Vec<Vec<u8>> = Vec::with_capacity(count);
        words.push(Vec::new());
        let mut i = 0;
        while words.len() < count {
            for a in 0..sigma {
                let mut w = words[i].clone();
                w.push(a as u8);
                words.push(w);
            }
            i += 1;
        }
        let mut space = WordSpace {
            sigma,
            max_len,
            start: Vec::with_capacity(count + 1),
            letters: Vec::new(),
            lengths: Vec::with_capacity(count),
            reversed: Vec::with_capacity(count),
            tails: Vec::with_capacity(count),
            del_start: Vec::with_capacity(count + 1),
            deletions: Vec::new(),
        };
        for w in &words {
            space.start.push(space.letters.len());
            space.letters.extend_from_slice(w);
            space.lengths.push(w.len() as u8);
        }
        space.start.push(space.letters.len());
        for w in &words {
            let rev: Vec<u8> = w.iter().rev().copied().collect();
            space.reversed.push(space.index_raw(&rev) as u32);
            space.tails.push(if w.is_empty() { 0 } else { space.index_raw(&w[1..]) as u32 });
            let mut dels: Vec<u32> = (0..w.len())
                .map(|j| {
                    let mut d = w.clone();
                    d.remove(j);
                    space.index_raw(&d) as u32
                })
                .collect();
            dels.sort_unstable();
            dels.dedup();
            space.del_start.push(space.deletions.len() as u32);
            space.deletions.extend(dels);
        }
        space.del_start.push(space.deletions.len() as u32);
        space
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn word_count(&self) -> usize {
        self.lengths.len()
    }

    /// Number of words of length ≤ `len`, i.e. the size of the index prefix
    /// covering `Σ^{≤len}`.
    pub fn count_up_to(&self, len: usize) -> usize {
        count_words(self.sigma, len)
    }

    fn index_raw(&self, word: &[u8]) -> usize {
        word.iter().fold(0, |i, &a| self.sigma * i + 1 + a as usize)
    }

    pub fn index_of(&self, word: &[Letter]) -> Option<usize> {
        if word.len() > self.max_len || word.iter().any(|&a| a >= self.sigma) {
            return None;
        }
        Some(word.iter().fold(0, |i, &a| self.sigma * i + 1 + a))
    }

    pub fn letters(&self, i: usize) -> &[u8] {
        &self.letters[self.start[i]..self.start[i + 1]]
    }

    pub fn word(&self, i: usize) -> Vec<Letter> {
        self.letters(i).iter().map(|&a| a as Letter).collect()
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i] as usize
    }

    /// The word with its last letter removed.
    pub fn parent(&self, i: usize) -> usize {
        debug_assert!(i > 0);
        (i - 1) / self.sigma
    }

    /// The word with its first letter removed.
    pub fn tail(&self, i: usize) -> usize {
        self.tails[i] as usize
    }

    pub fn reversed(&self, i: usize) -> usize {
        self.reversed[i] as usize
    }

    /// Distinct words obtained by deleting one letter.
    pub fn deletions(&self, i: usize) -> &[u32] {
        &self.deletions[self.del_start[i] as usize..self.del_start[i + 1] as usize]
    }

    /// Prefix of length `j`.
    pub fn prefix(&self, i: usize, j: usize) -> usize {
        self.index_raw(&self.letters(i)[..j])
    }

    /// Suffix starting after the first `j` letters.
    pub fn suffix_from(&self, i: usize, j: usize) -> usize {
        self.index_raw(&self.letters(i)[j..])
    }

    /// Index of `u·v`, or `None` when it is longer than `max_len`.
    pub fn concat(&self, u: usize, v: usize) -> Option<usize> {
        if self.length(u) + self.length(v) > self.max_len {
            return None;
        }
        Some(
            self.letters(v)
                .iter()
                .fold(u, |i, &a| self.sigma * i + 1 + a as usize),
        )
    }
}

pub(crate) fn count_words(sigma: usize, max_len: usize) -> usize {
    let mut level = 1usize;
    let mut total = 0usize;
    for _ in 0..=max_len {
        total = total.saturating_add(level);
        level = level.saturating_mul(sigma);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices_follow_shortlex_order() {
        let space = WordSpace::new(2, 3);
        assert_eq!(space.word_count(), 15);
        assert_eq!(space.word(0), Vec::<Letter>::new());
        assert_eq!(space.word(1), vec![0]);
        assert_eq!(space.word(4), vec![0, 1]);
        assert_eq!(space.index_of(&[1, 0, 1]), Some(12));
        assert_eq!(space.index_of(&[1, 0, 1, 1]), None);
        assert_eq!(space.count_up_to(2), 7);
    }

    #[test]
    fn structural_tables() {
        let space = WordSpace::new(3, 3);
        let abc = space.index_of(&[0, 1, 2]).unwrap();
        assert_eq!(space.word(space.parent(abc)), vec![0, 1]);
        assert_eq!(space.word(space.tail(abc)), vec![1, 2]);
        assert_eq!(space.word(space.reversed(abc)), vec![2, 1, 0]);
        assert_eq!(space.word(space.prefix(abc, 1)), vec![0]);
        assert_eq!(space.word(space.suffix_from(abc, 1)), vec![1, 2]);
        let dels: Vec<Vec<Letter>> = space.deletions(abc).iter().map(|&d| space.word(d as usize)).collect();
        assert_eq!(dels, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let ab = space.index_of(&[0, 1]).unwrap();
        let c = space.index_of(&[2]).unwrap();
        assert_eq!(space.concat(ab, c), Some(abc));
        assert_eq!(space.concat(abc, c), None);
    }

    #[test]
    fn unary_space() {
        let space = WordSpace::new(1, 4);
        assert_eq!(space.word_count(), 5);
        assert_eq!(space.index_of(&[0, 0, 0]), Some(3));
        assert_eq!(space.parent(3), 2);
        assert_eq!(space.tail(3), 2);
    }
}
