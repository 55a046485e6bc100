//! Brute-force oracle over explicit sets of short words.
//!
//! Claims about operation words are tested on sampled finite languages
//! `L ⊆ Σ^{≤ℓ}`. Evaluation runs in the larger space `Σ^{≤H}` with
//! `H = ℓ + margin` and only the window `Σ^{≤ℓ}` of the result is compared.
//! Complement relative to `Σ^{≤ℓ}` itself would make every `p`, `s`, `f`, `w`
//! after a `c` see the artificial boundary, so the extra margin keeps the
//! window honest in practice. The oracle refutes claims, it never proves them.
//!
//! [`bounded_image`] does the same for a regular `L` given by an automaton,
//! which is how the two engines are cross-checked.

mod catalog;
mod lang;
mod space;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::automata::{Alphabet, Dfa};
use crate::langops::{self, LangOpError, Op, OpWord};

pub use catalog::{catalog, holds_exactly};
pub use lang::BoundedLang;
pub use space::WordSpace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Number of random languages, on top of the fixed corner cases.
    pub trials: usize,
    /// Window length ℓ.
    pub max_len: usize,
    pub alphabet_size: usize,
    pub seed: u64,
    /// `H - ℓ`.
    pub margin: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            trials: 100,
            max_len: 5,
            alphabet_size: 2,
            seed: 0,
            margin: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("alphabet size must be between 1 and 26, got {0}")]
    AlphabetSize(usize),
    #[error("{words} words up to length {horizon} over {sigma} letters exceed the limit of {limit}")]
    SpaceTooLarge {
        sigma: usize,
        horizon: usize,
        words: usize,
        limit: usize,
    },
}

/// A statement about operation words, quantified over all languages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    /// `x(L) = y(L)`.
    Equal(OpWord, OpWord),
    /// `x(L) ⊆ y(L)`.
    Subset(OpWord, OpWord),
    /// `x(L) = y(L)`, or both lie in `{∅, {ε}, Σ⁺, Σ*}`.
    EqualModTrivial(OpWord, OpWord),
    /// `x(L) ∈ {∅, {ε}, Σ⁺, Σ*}`.
    Trivial(OpWord),
    /// `x(L) ∈ {∅, Σ*}`.
    EmptyOrUniversal(OpWord),
    /// `x(L) = y(L) ∪ {ε}`.
    WithEpsilon(OpWord, OpWord),
    /// `x(L) = Σ*` or `y(L) = Σ*`.
    EitherUniversal(OpWord, OpWord),
}

impl Claim {
    fn holds(&self, eval: impl Fn(&OpWord) -> BoundedLang) -> bool {
        match self {
            Claim::Equal(x, y) => eval(x) == eval(y),
            Claim::Subset(x, y) => eval(x).is_subset(&eval(y)),
            Claim::EqualModTrivial(x, y) => {
                let (u, v) = (eval(x), eval(y));
                u == v || (u.is_trivial() && v.is_trivial())
            }
            Claim::Trivial(x) => eval(x).is_trivial(),
            Claim::EmptyOrUniversal(x) => {
                let u = eval(x);
                u.is_empty() || u.is_universe()
            }
            Claim::WithEpsilon(x, y) => eval(x) == eval(y).with_epsilon(),
            Claim::EitherUniversal(x, y) => eval(x).is_universe() || eval(y).is_universe(),
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Equal(x, y) => write!(f, "IDENTITY {x}={y}"),
            Claim::Subset(x, y) => write!(f, "INCLUSION {x}<={y}"),
            Claim::EqualModTrivial(x, y) => write!(f, "IDENTITY-MOD-TRIVIAL {x}~{y}"),
            Claim::Trivial(x) => write!(f, "ABSORBING {x}"),
            Claim::EmptyOrUniversal(x) => write!(f, "EMPTY-OR-UNIVERSAL {x}"),
            Claim::WithEpsilon(x, y) => write!(f, "IDENTITY {x}={y}+ε"),
            Claim::EitherUniversal(x, y) => write!(f, "UNIVERSAL {x}|{y}"),
        }
    }
}

/// One sampled finite language, stored embedded in the horizon space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    lang: BoundedLang,
    label: String,
}

impl Sample {
    fn new(lang: &BoundedLang, horizon: &Arc<WordSpace>) -> Self {
        Sample {
            label: format!("{{{}}}", lang.spelled().join(",")),
            lang: lang.embed(horizon),
        }
    }

    pub fn lang(&self) -> &BoundedLang {
        &self.lang
    }

    /// The words of the sample, as `{ε,ab,...}`.
    pub fn label(&self) -> &str {
        &self.label
    }
}

/// Outcome of testing one claim. Failures carry the sampled language.
#[derive(Clone, Debug)]
pub struct Report {
    pub claim: Claim,
    pub trials: usize,
    pub counterexample: Option<Sample>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} trials={} result=", self.claim, self.trials)?;
        match &self.counterexample {
            None => write!(f, "PASS"),
            Some(l) => write!(f, "FAIL counterexample={}", l.label),
        }
    }
}

/// A fixed, seeded family of sample languages plus the evaluation spaces.
pub struct Oracle {
    config: OracleConfig,
    window: Arc<WordSpace>,
    horizon: Arc<WordSpace>,
    samples: Vec<Sample>,
}

impl Oracle {
    /// Samples, in order: `∅`, `{ε}`, `Σ^{≤ℓ}`, `Σ^{1..ℓ}`, four single-word
    /// languages, then `trials` random languages. Each word of `Σ^{≤ℓ}` is
    /// kept with probability 1/2, except in every second language where it
    /// is 1/8: dense samples almost never miss a whole cone `uΣ^{≤ℓ-|u|}`,
    /// and several identities only separate on languages that do.
    ///
    /// Panics where [`Oracle::try_new`] would fail.
    pub fn new(config: OracleConfig) -> Self {
        Self::try_new(config).expect("oracle configuration")
    }

    /// Checks that the horizon space fits in memory before building it.
    pub fn try_new(config: OracleConfig) -> Result<Self, OracleError> {
        let sigma = config.alphabet_size;
        if !(1..=26).contains(&sigma) {
            return Err(OracleError::AlphabetSize(sigma));
        }
        let horizon = config.max_len + config.margin;
        let words = space::count_words(sigma, horizon);
        if words > space::MAX_WORDS {
            return Err(OracleError::SpaceTooLarge {
                sigma,
                horizon,
                words,
                limit: space::MAX_WORDS,
            });
        }
        let window = Arc::new(WordSpace::new(config.alphabet_size, config.max_len));
        let horizon = Arc::new(WordSpace::new(
            config.alphabet_size,
            config.max_len + config.margin,
        ));
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let n = window.word_count();
        let mut langs = vec![
            BoundedLang::empty(&window),
            BoundedLang::from_indices(&window, [0]),
            BoundedLang::universe(&window),
            BoundedLang::from_indices(&window, 1..n),
        ];
        for _ in 0..4 {
            langs.push(BoundedLang::from_indices(&window, [rng.gen_range(0..n)]));
        }
        for t in 0..config.trials {
            let p = if t % 2 == 0 { 0.5 } else { 0.125 };
            langs.push(BoundedLang::from_indices(
                &window,
                (0..n).filter(|_| rng.gen_bool(p)).collect::<Vec<_>>(),
            ));
        }
        let samples = langs.iter().map(|l| Sample::new(l, &horizon)).collect();
        Ok(Oracle {
            config,
            window,
            horizon,
            samples,
        })
    }

    pub fn config(&self) -> &OracleConfig {
        &self.config
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn window(&self) -> &Arc<WordSpace> {
        &self.window
    }

    pub fn horizon(&self) -> &Arc<WordSpace> {
        &self.horizon
    }

    /// `word(L)` computed at the horizon, cut back to the window.
    pub fn evaluate(&self, word: &OpWord, sample: &Sample) -> BoundedLang {
        sample.lang.apply_word(word).restrict(&self.window)
    }

    pub fn check(&self, claim: &Claim) -> Report {
        let failing = self
            .samples
            .par_iter()
            .position_first(|l| !claim.holds(|w| self.evaluate(w, l)));
        Report {
            claim: claim.clone(),
            trials: self.samples.len(),
            counterexample: failing.map(|i| self.samples[i].clone()),
        }
    }
}

pub fn check_identity(lhs: &OpWord, rhs: &OpWord, config: OracleConfig) -> Report {
    Oracle::new(config).check(&Claim::Equal(lhs.clone(), rhs.clone()))
}

pub fn check_inclusion(lhs: &OpWord, rhs: &OpWord, config: OracleConfig) -> Report {
    Oracle::new(config).check(&Claim::Subset(lhs.clone(), rhs.clone()))
}

/// Largest word space [`bounded_image`] lets the staged evaluation build.
pub const STAGED_MAX_WORDS: usize = 1 << 21;

/// Extra length kept below an op so that words of the window still find
/// their witnesses: a prefix needs its continuation, a subword its
/// insertions. Other ops never look past the length they produce.
fn witness_depth(op: Op, d: usize) -> usize {
    match op {
        Op::P | Op::S | Op::Q => d,
        Op::F => 2 * d,
        Op::W => 3 * d,
        _ => 0,
    }
}

type SpaceCache = Mutex<HashMap<(usize, usize), Arc<WordSpace>>>;

fn shared_space(sigma: usize, max_len: usize) -> Arc<WordSpace> {
    static SPACES: OnceLock<SpaceCache> = OnceLock::new();
    let mut spaces = SPACES.get_or_init(Default::default).lock().expect("space cache poisoned");
    Arc::clone(
        spaces
            .entry((sigma, max_len))
            .or_insert_with(|| Arc::new(WordSpace::new(sigma, max_len))),
    )
}

/// `word(L(dfa))` at depth `d`: start from `L ∩ Σ^{≤H}` with `H` large enough
/// to pay every op's witness depth, and cut back by that depth after each op.
fn staged_image(dfa: &Dfa, word: &OpWord, max_len: usize, d: usize, max_words: usize) -> Option<BoundedLang> {
    let sigma = dfa.alphabet().len();
    let mut h = max_len + word.ops().iter().map(|&op| witness_depth(op, d)).sum::<usize>();
    if space::count_words(sigma, h) > max_words {
        return None;
    }
    let mut lang = BoundedLang::from_dfa(&shared_space(sigma, h), dfa);
    for op in word.in_application_order() {
        lang = lang.apply(op);
        if witness_depth(op, d) > 0 {
            h -= witness_depth(op, d);
            lang = lang.restrict(&shared_space(sigma, h));
        }
    }
    Some(lang)
}

/// The oracle's view of `word(L(dfa)) ∩ Σ^{≤max_len}`.
///
/// A single horizon is not enough on infinite languages: a wrong top layer
/// left by `p` is flipped by `c` and dragged into the window by the next
/// `p`. Instead each op gets its own witness depth `d`, and `d` grows from 2
/// until two consecutive depths give the same window or the next depth
/// needs more than `max_words` words. `None` when even `d = 2` does.
///
/// Agreement of two depths is evidence, not proof: a witness may lie
/// further out than both.
pub fn converged_image(dfa: &Dfa, word: &OpWord, max_len: usize, max_words: usize) -> Option<BoundedLang> {
    let mut d = 2;
    let mut best = staged_image(dfa, word, max_len, d, max_words)?;
    while let Some(next) = staged_image(dfa, word, max_len, d + 1, max_words) {
        let converged = next == best;
        best = next;
        if converged {
            break;
        }
        d += 1;
    }
    Some(best)
}

/// [`converged_image`], falling back to shallower depths for words with
/// too many closures.
pub fn bounded_image(dfa: &Dfa, word: &OpWord, max_len: usize) -> BoundedLang {
    converged_image(dfa, word, max_len, STAGED_MAX_WORDS)
        .or_else(|| staged_image(dfa, word, max_len, 1, STAGED_MAX_WORDS))
        .or_else(|| staged_image(dfa, word, max_len, 0, STAGED_MAX_WORDS))
        .expect("window alone fits the space limit")
}

/// Whether the automata engine and the oracle agree on `word(L(dfa))` for
/// every word of length ≤ `max_len`.
pub fn oracle_agrees_with_automata(dfa: &Dfa, word: &OpWord, max_len: usize) -> Result<bool, LangOpError> {
    let exact = langops::apply_word(word, dfa)?;
    let window = shared_space(dfa.alphabet().len(), max_len);
    Ok(bounded_image(dfa, word, max_len) == BoundedLang::from_dfa(&window, &exact))
}

/// A complete DFA over the first `sigma` letters with random transitions and
/// final states. Each non-initial state is made absorbing (a loop on every
/// letter) with probability 1/3, so that languages containing or avoiding
/// whole cones `uΣ*` are common; uniform transitions almost never produce
/// them, and many identities only bite on such languages.
pub fn random_dfa(rng: &mut impl Rng, states: usize, sigma: usize) -> Dfa {
    let delta = (0..states)
        .map(|q| {
            if q > 0 && rng.gen_bool(1.0 / 3.0) {
                vec![q; sigma]
            } else {
                (0..sigma).map(|_| rng.gen_range(0..states)).collect()
            }
        })
        .collect();
    let finals: Vec<usize> = (0..states).filter(|_| rng.gen_bool(0.5)).collect();
    Dfa::new(Alphabet::first(sigma), delta, 0, finals).expect("generated in range")
}
