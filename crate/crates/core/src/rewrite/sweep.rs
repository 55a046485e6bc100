use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{EnumerationResult, LogEntry, Outcome};
use crate::automata::{Alphabet, CanonicalDfa, Dfa, Letter};
use crate::langops::{self, OpWord};
use crate::oracle::{self, BoundedLang, Oracle, OracleConfig, Sample};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    /// Finite sample languages, checked by the oracle.
    pub oracle: OracleConfig,
    /// Random regular languages, checked by the automata engine.
    pub dfas: usize,
    pub dfa_states: usize,
    pub dfa_alphabet: usize,
    pub seed: u64,
    /// Oracle refutations are re-judged by the staged evaluation in word
    /// spaces of at most this size before being reported; 0 reports them
    /// as found.
    pub confirm_max_words: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            oracle: OracleConfig {
                trials: 20,
                ..OracleConfig::default()
            },
            dfas: 8,
            dfa_states: 4,
            dfa_alphabet: 2,
            seed: 0,
            confirm_max_words: 1 << 17,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Oracle,
    Automata,
}

/// A logged rewrite or absorption refuted on some language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub entry: LogEntry,
    pub engine: Engine,
    /// The sample's word list, or the automaton as JSON.
    pub counterexample: String,
    /// For oracle refutations: whether the automata engine, run on the
    /// same finite sample, refutes the entry too. `None` if it could not
    /// evaluate it.
    pub exact_refutes: Option<bool>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let claim = match &self.entry.outcome {
            Outcome::Absorbed => format!("ABSORBING {}", self.entry.word),
            Outcome::Reduced { to, exact: true } => format!("IDENTITY {}={to}", self.entry.word),
            Outcome::Reduced { to, exact: false } => {
                format!("IDENTITY-MOD-TRIVIAL {}~{to}", self.entry.word)
            }
            Outcome::New => format!("NODE {}", self.entry.word),
        };
        let engine = match self.engine {
            Engine::Oracle => "oracle",
            Engine::Automata => "automata",
        };
        write!(f, "{claim} engine={engine}")?;
        match self.exact_refutes {
            Some(true) => write!(f, " exact=refutes")?,
            Some(false) => write!(f, " exact=holds")?,
            None => {}
        }
        write!(f, " counterexample={}", self.counterexample)
    }
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    /// Logged rewrites and absorptions examined.
    pub checked: usize,
    pub samples: usize,
    pub dfas: usize,
    /// (entry, automaton) pairs left to the oracle because an operation
    /// was undefined on the automaton's language.
    pub automata_skipped: usize,
    /// (entry, sample) pairs refuted at the fixed horizon but cleared by the
    /// deeper staged evaluation.
    pub horizon_artifacts: usize,
    /// Entries refuted on some random automaton, whatever the oracle found.
    pub automata_refuted: usize,
    pub violations: Vec<Violation>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SWEEP checked={} samples={} dfas={} horizon_artifacts={} automata_refuted={} violations={} exact_refutes={} result={}",
            self.checked,
            self.samples,
            self.dfas,
            self.horizon_artifacts,
            self.automata_refuted,
            self.violations.len(),
            self.violations.iter().filter(|v| v.exact_refutes == Some(true)).count(),
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        for v in &self.violations {
            write!(f, "\n{v}")?;
        }
        Ok(())
    }
}

/// What an engine needs to judge one logged entry.
trait Model {
    type Value;
    fn apply(&self, op: langops::Op, x: &Self::Value) -> Option<Self::Value>;
    fn equal(&self, x: &Self::Value, y: &Self::Value) -> bool;
    fn trivial(&self, x: &Self::Value) -> bool;
}

struct Bounded<'a> {
    window: &'a std::sync::Arc<oracle::WordSpace>,
}

impl Model for Bounded<'_> {
    type Value = BoundedLang;

    fn apply(&self, op: langops::Op, x: &BoundedLang) -> Option<BoundedLang> {
        Some(x.apply(op))
    }

    fn equal(&self, x: &BoundedLang, y: &BoundedLang) -> bool {
        x.restrict(self.window) == y.restrict(self.window)
    }

    fn trivial(&self, x: &BoundedLang) -> bool {
        x.restrict(self.window).is_trivial()
    }
}

struct Automata;

impl Model for Automata {
    type Value = (Dfa, CanonicalDfa);

    fn apply(&self, op: langops::Op, x: &Self::Value) -> Option<Self::Value> {
        let d = langops::apply(op, &x.0).ok()?;
        let key = d.canonicalize();
        Some((d, key))
    }

    fn equal(&self, x: &Self::Value, y: &Self::Value) -> bool {
        x.1 == y.1
    }

    fn trivial(&self, x: &Self::Value) -> bool {
        x.0.is_trivial()
    }
}

fn sample_dfa(sample: &Sample, sigma: usize) -> Dfa {
    let words: Vec<Vec<Letter>> = sample.lang().words().collect();
    Dfa::from_words(Alphabet::first(sigma), words.iter().map(Vec::as_slice))
}

/// Re-judges an entry refuted at the fixed horizon with the staged
/// evaluation, which gives each closure its own witness depth. Words too
/// long for that stay refuted.
fn refuted_deeply(entry: &LogEntry, sample: &Dfa, max_len: usize, max_words: usize) -> bool {
    let Some(u) = oracle::converged_image(sample, &entry.word, max_len, max_words) else {
        return true;
    };
    match &entry.outcome {
        Outcome::Absorbed => !u.is_trivial(),
        Outcome::Reduced { to, exact } => match oracle::converged_image(sample, to, max_len, max_words) {
            None => true,
            Some(v) => !(u == v || (!exact && u.is_trivial() && v.is_trivial())),
        },
        Outcome::New => false,
    }
}

/// The automata engine's verdict on one entry for `L(dfa)`.
fn refuted_exactly(entry: &LogEntry, dfa: &Dfa) -> Option<bool> {
    let value = |w: &OpWord| langops::apply_word(w, dfa).ok();
    let u = value(&entry.word)?;
    Some(match &entry.outcome {
        Outcome::Absorbed => !u.is_trivial(),
        Outcome::Reduced { to, exact } => {
            let v = value(to)?;
            !(u.canonicalize() == v.canonicalize() || (!exact && u.is_trivial() && v.is_trivial()))
        }
        Outcome::New => false,
    })
}

/// Node values on one language, then the first entry refuted on it, as an
/// index into the log. `None` values are undefined (`t` on infinite input).
fn judge<M: Model>(
    model: &M,
    result: &EnumerationResult,
    index: &HashMap<&OpWord, usize>,
    base: M::Value,
) -> (Vec<usize>, usize) {
    let mut values: Vec<Option<M::Value>> = Vec::with_capacity(result.nodes.len());
    values.push(Some(base));
    for node in &result.nodes[1..] {
        let ops = node.ops();
        let suffix = index[&OpWord::new(ops[1..].to_vec())];
        let v = values[suffix].as_ref().and_then(|x| model.apply(ops[0], x));
        values.push(v);
    }
    let mut refuted = Vec::new();
    let mut skipped = 0;
    for (i, entry) in result.log.iter().enumerate() {
        if entry.outcome == Outcome::New {
            continue;
        }
        let ops = entry.word.ops();
        let suffix = index[&OpWord::new(ops[1..].to_vec())];
        let Some(u) = values[suffix].as_ref().and_then(|x| model.apply(ops[0], x)) else {
            skipped += 1;
            continue;
        };
        let ok = match &entry.outcome {
            Outcome::Absorbed => model.trivial(&u),
            Outcome::Reduced { to, exact } => match &values[index[to]] {
                None => {
                    skipped += 1;
                    continue;
                }
                Some(v) => model.equal(&u, v) || (!exact && model.trivial(&u) && model.trivial(v)),
            },
            Outcome::New => unreachable!(),
        };
        if !ok {
            refuted.push(i);
        }
    }
    (refuted, skipped)
}

/// Checks every logged rewrite and absorption of an enumeration on finite
/// samples (oracle) and on random regular languages (automata). Rewrites
/// made modulo the trivial class are checked modulo that class.
///
/// Each entry `a·x` has a node `x` as its suffix and a node (or nothing) as
/// its reduced form, so one pass over the nodes per language gives every
/// value needed.
pub fn soundness_sweep(result: &EnumerationResult, config: &SweepConfig) -> SweepReport {
    let index: HashMap<&OpWord, usize> = result.nodes.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let oracle = Oracle::new(config.oracle.clone());
    let bounded = Bounded {
        window: oracle.window(),
    };
    let sigma = config.oracle.alphabet_size;
    let screened: Vec<(Vec<usize>, usize)> = oracle
        .samples()
        .par_iter()
        .map(|s| judge(&bounded, result, &index, s.lang().clone()))
        .collect();
    let mut horizon_artifacts = 0;
    let by_sample: Vec<(Vec<usize>, usize)> = screened
        .into_iter()
        .zip(oracle.samples())
        .map(|((refuted, skipped), sample)| {
            if refuted.is_empty() || config.confirm_max_words == 0 {
                return (refuted, skipped);
            }
            let dfa = sample_dfa(sample, sigma);
            let confirmed: Vec<usize> = refuted
                .par_iter()
                .copied()
                .filter(|&i| refuted_deeply(&result.log[i], &dfa, config.oracle.max_len, config.confirm_max_words))
                .collect();
            horizon_artifacts += refuted.len() - confirmed.len();
            (confirmed, skipped)
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let dfas: Vec<Dfa> = (0..config.dfas)
        .map(|_| {
            let n = rng.gen_range(1..=config.dfa_states);
            oracle::random_dfa(&mut rng, n, config.dfa_alphabet).minimize()
        })
        .collect();
    let by_dfa: Vec<(Vec<usize>, usize)> = dfas
        .par_iter()
        .map(|d| judge(&Automata, result, &index, (d.clone(), d.canonicalize())))
        .collect();

    // the first refuting language per entry, oracle samples first
    let mut first: HashMap<usize, Violation> = HashMap::new();
    for ((refuted, _), sample) in by_sample.iter().zip(oracle.samples()) {
        for &i in refuted {
            first.entry(i).or_insert_with(|| Violation {
                entry: result.log[i].clone(),
                engine: Engine::Oracle,
                counterexample: sample.label().to_string(),
                exact_refutes: refuted_exactly(&result.log[i], &sample_dfa(sample, sigma)),
            });
        }
    }
    for ((refuted, _), dfa) in by_dfa.iter().zip(&dfas) {
        for &i in refuted {
            first.entry(i).or_insert_with(|| Violation {
                entry: result.log[i].clone(),
                engine: Engine::Automata,
                counterexample: dfa.to_json(),
                exact_refutes: None,
            });
        }
    }
    let automata_refuted = by_dfa
        .iter()
        .flat_map(|(refuted, _)| refuted)
        .collect::<std::collections::HashSet<_>>()
        .len();
    let mut violations: Vec<(usize, Violation)> = first.into_iter().collect();
    violations.sort_by_key(|(i, _)| *i);
    SweepReport {
        checked: result.log.iter().filter(|e| e.outcome != Outcome::New).count(),
        samples: oracle.samples().len(),
        dfas: dfas.len(),
        horizon_artifacts,
        automata_refuted,
        automata_skipped: by_dfa.iter().map(|(_, s)| s).sum(),
        violations: violations.into_iter().map(|(_, v)| v).collect(),
    }
}
