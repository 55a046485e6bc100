//! Words of operations modulo known identities.
//!
//! [`enumerate`] explores `S*` breadth first and keeps the words that no
//! identity can shorten or reorder. Every word is equivalent to one of them
//! (up to the four trivial languages), so their number bounds the orbit size
//! of every language under `S`.

mod rules;
mod status;
mod sweep;

use std::collections::HashSet;
use std::fmt;
use std::io::{self, Write};

use crate::langops::{Op, OpSet, OpWord};

pub use rules::{Rule, RuleKind, RuleSet};
pub use status::EpsilonStatus;
pub use sweep::{soundness_sweep, Engine, SweepConfig, SweepReport, Violation};

/// Rewrite steps allowed before a rule set is declared ill-oriented.
pub const STEP_BUDGET: usize = 10_000;

/// Longest irreducible word tolerated; closed rule sets stay far below it.
pub const MAX_WORD_LEN: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error("operation '{0}' has no rewrite rules")]
    UnsupportedOp(Op),
    #[error("word {word} uses operations outside {ops}")]
    ForeignWord { word: OpWord, ops: OpSet },
    #[error("rewrite budget exceeded while normalizing {0}")]
    BudgetExceeded(OpWord),
    #[error("more than {0} irreducible words; the rules do not close the monoid")]
    TooManyNodes(usize),
    #[error("irreducible words longer than {0}; the rules do not close the monoid")]
    WordTooLong(usize),
}

/// Result of normalizing one word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normal {
    /// The irreducible form.
    Word(OpWord),
    /// Some factor forces the image into `{∅, {ε}, Σ⁺, Σ*}`.
    Absorbed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub normal: Normal,
    /// Rewrite steps taken.
    pub steps: usize,
    /// Whether every step was an identity, rather than an identity modulo
    /// the trivial class.
    pub exact: bool,
}

/// Which rewrite applies to `word`, if any. Rules go first, leftmost position
/// then catalog order; `e` is turned into `k` only after that.
fn next_step(word: &[Op], rules: &RuleSet) -> Option<(Vec<Op>, bool)> {
    let n = word.len();
    for i in 0..n {
        let best = (i + 1..=n.min(i + rules.longest_factor()))
            .filter_map(|j| rules.rule_for(&word[i..j]).map(|(idx, r)| (idx, j, r)))
            .min_by_key(|&(idx, _, _)| idx);
        if let Some((_, j, rule)) = best {
            let mut out = Vec::with_capacity(n);
            out.extend_from_slice(&word[..i]);
            out.extend_from_slice(rule.rhs.ops());
            out.extend_from_slice(&word[j..]);
            return Some((out, rule.is_exact()));
        }
    }
    if rules.ops().contains(Op::K) {
        epsilon_step(word)
    } else {
        None
    }
}

/// `ek` and `ke` are already rules; these are the non-local cases.
///
/// When some `k` acts after an `e`, the `ε` that `e` may drop is restored by
/// that `k`, so the `e` can become `k` outright. Otherwise an `e` may become
/// `k` when doing so leaves the `ε`-status of the whole word unchanged and
/// known; this merges modulo the trivial class.
fn epsilon_step(word: &[Op]) -> Option<(Vec<Op>, bool)> {
    let first_k = word.iter().position(|&op| op == Op::K);
    if let Some(e) = first_k.and_then(|k| word[k..].iter().position(|&op| op == Op::E).map(|e| k + e)) {
        let mut out = word.to_vec();
        out[e] = Op::K;
        return Some((out, true));
    }
    let status = EpsilonStatus::of(word);
    if !status.is_known() {
        return None;
    }
    (0..word.len()).filter(|&i| word[i] == Op::E).find_map(|i| {
        let mut out = word.to_vec();
        out[i] = Op::K;
        (EpsilonStatus::of(&out) == status).then_some((out, false))
    })
}

fn absorbed(word: &[Op], rules: &RuleSet) -> bool {
    (0..word.len()).any(|i| {
        (i + 1..=word.len().min(i + rules.longest_factor())).any(|j| rules.is_absorbing(&word[i..j]))
    })
}

/// Rewrites `word` to an irreducible form, or reports it absorbed.
pub fn normalize(word: &OpWord, rules: &RuleSet) -> Result<Normalization, RewriteError> {
    if !rules.ops().covers(word.ops()) {
        return Err(RewriteError::ForeignWord {
            word: word.clone(),
            ops: rules.ops(),
        });
    }
    let mut cur = word.ops().to_vec();
    let mut exact = true;
    for steps in 0..=STEP_BUDGET {
        if absorbed(&cur, rules) {
            return Ok(Normalization {
                normal: Normal::Absorbed,
                steps,
                exact,
            });
        }
        match next_step(&cur, rules) {
            Some((next, step_exact)) => {
                cur = next;
                exact &= step_exact;
            }
            None => {
                return Ok(Normalization {
                    normal: Normal::Word(OpWord::new(cur)),
                    steps,
                    exact,
                })
            }
        }
    }
    Err(RewriteError::BudgetExceeded(word.clone()))
}

/// What happened to one examined word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Irreducible: a new node.
    New,
    Reduced { to: OpWord, exact: bool },
    Absorbed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogEntry {
    pub word: OpWord,
    pub outcome: Outcome,
}

impl fmt::Display for LogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::New => write!(f, "{}\t{}", self.word, self.word),
            Outcome::Reduced { to, .. } => write!(f, "{}\t{}", self.word, to),
            Outcome::Absorbed => write!(f, "{}\tABSORBED", self.word),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationResult {
    pub ops: OpSet,
    /// Irreducible words in breadth-first order, starting with `ε`.
    pub nodes: Vec<OpWord>,
    /// Every examined word, in examination order.
    pub log: Vec<LogEntry>,
    /// Whether any word was absorbed or merged modulo the trivial class.
    pub trivial_merges: bool,
}

impl EnumerationResult {
    pub fn nontrivial_count(&self) -> usize {
        self.nodes.len()
    }

    /// The node count, plus the four trivial languages when some word was
    /// absorbed or merged only modulo them; otherwise every trivial image is
    /// already one of the nodes' images.
    pub fn total_count(&self) -> usize {
        self.nodes.len() + if self.trivial_merges { 4 } else { 0 }
    }

    /// The first longest node in breadth-first order.
    pub fn longest(&self) -> &OpWord {
        let max = self.nodes.iter().map(OpWord::len).max().unwrap_or(0);
        self.nodes.iter().find(|w| w.len() == max).expect("ε is always a node")
    }

    pub fn summary(&self) -> String {
        format!(
            "nontrivial={} total={} longest={}",
            self.nontrivial_count(),
            self.total_count(),
            self.longest()
        )
    }

    /// One `word TAB reduced-form` (or `ABSORBED`) line per examined word.
    pub fn write_log(&self, mut out: impl Write) -> io::Result<()> {
        for entry in &self.log {
            writeln!(out, "{entry}")?;
        }
        Ok(())
    }
}

/// Breadth-first search over `ops*` by length, then lexicographically in the
/// order `k < e < c < p < f < s < w < r < t`. Each layer is formed by
/// prepending every operation to the previous layer's nodes. Words with a
/// reducible suffix need not be examined: rules apply to factors, and an
/// `ε`-status settled on a suffix stays settled.
pub fn enumerate(rules: &RuleSet, max_nodes: usize) -> Result<EnumerationResult, RewriteError> {
    let ops = rules.ops();
    let mut result = EnumerationResult {
        ops,
        nodes: vec![OpWord::empty()],
        log: vec![LogEntry {
            word: OpWord::empty(),
            outcome: Outcome::New,
        }],
        trivial_merges: false,
    };
    let mut frontier = vec![OpWord::empty()];
    while let Some(x) = frontier.first() {
        if x.len() >= MAX_WORD_LEN {
            return Err(RewriteError::WordTooLong(MAX_WORD_LEN));
        }
        let mut layer: Vec<OpWord> = frontier
            .iter()
            .flat_map(|x| ops.iter().map(move |a| x.prepend(a)))
            .collect();
        layer.sort();
        frontier.clear();
        for y in layer {
            let norm = normalize(&y, rules)?;
            let outcome = match norm.normal {
                Normal::Absorbed => Outcome::Absorbed,
                Normal::Word(_) if norm.steps == 0 => Outcome::New,
                Normal::Word(to) => Outcome::Reduced { to, exact: norm.exact },
            };
            match &outcome {
                Outcome::New => {
                    if result.nodes.len() >= max_nodes {
                        return Err(RewriteError::TooManyNodes(max_nodes));
                    }
                    result.nodes.push(y.clone());
                    frontier.push(y.clone());
                }
                Outcome::Absorbed | Outcome::Reduced { exact: false, .. } => result.trivial_merges = true,
                Outcome::Reduced { exact: true, .. } => {}
            }
            result.log.push(LogEntry { word: y, outcome });
        }
    }
    Ok(result)
}

/// `ops` plus the operations its words already express: `f = ps = sp`,
/// `p = rsr` and `s = rpr`. Both sets have the same orbits, and only the
/// larger one is closed under the rules.
pub fn saturate(ops: OpSet) -> OpSet {
    let mut out = ops;
    loop {
        let before = out;
        if out.contains(Op::R) && out.contains(Op::S) {
            out.insert(Op::P);
        }
        if out.contains(Op::R) && out.contains(Op::P) {
            out.insert(Op::S);
        }
        if out.contains(Op::P) && out.contains(Op::S) {
            out.insert(Op::F);
        }
        if out == before {
            return out;
        }
    }
}

/// [`enumerate`] with the default rules for the [`saturate`]d `ops`.
pub fn enumerate_ops(ops: OpSet, max_nodes: usize) -> Result<EnumerationResult, RewriteError> {
    enumerate(&RuleSet::default_for(saturate(ops))?, max_nodes)
}

/// Nodes whose `r` count or position breaks the normal form `x r?`.
pub fn misplaced_reversals(result: &EnumerationResult) -> Vec<&OpWord> {
    result
        .nodes
        .iter()
        .filter(|w| {
            let ops = w.ops();
            let count = ops.iter().filter(|&&op| op == Op::R).count();
            count > 1 || (count == 1 && ops.last() != Some(&Op::R))
        })
        .collect()
}

/// Reduced forms that are not themselves nodes; empty when the search is
/// consistent.
pub fn dangling_reductions(result: &EnumerationResult) -> Vec<&LogEntry> {
    let nodes: HashSet<&OpWord> = result.nodes.iter().collect();
    result
        .log
        .iter()
        .filter(|e| matches!(&e.outcome, Outcome::Reduced { to, .. } if !nodes.contains(to)))
        .collect()
}
