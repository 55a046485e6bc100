use std::collections::HashMap;
use std::fmt;

use super::RewriteError;
use crate::langops::{Op, OpSet, OpWord};

/// Where a rule comes from. Everything except [`RuleKind::EpsilonAdjust`]
/// is an identity `u ≡ v` over all languages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleKind {
    /// `aa ≡ a` for a closure `a`.
    Idempotent,
    /// `cc ≡ rr ≡ ε`.
    Involution,
    /// Moves `r` one step to the right: `rp ≡ sr`, `rk ≡ kr`, ...
    ReversalShift,
    /// Composition laws of the closures: `ps ≡ f`, `wk ≡ kw`, `kw ≡ kf`, ...
    Composition,
    /// `aba ≡ bab ≡ ab` for `a ∈ {k,e}`, `b ∈ {p,s,f,w}`.
    Sandwich,
    /// The alternation identities `abcacaca ≡ abca` and relatives.
    Alternation,
    /// `xcycxcy ≡ xcy` for closure words `x`, `y`.
    Kuratowski,
    /// Consequences of the `e`/`k` relationship that hold exactly.
    Plus,
    /// Powers: `tt ≡ t`, `kt ≡ tk ≡ k` and the alternations involving `t`.
    Powers,
    /// `akcb → acb` and relatives. The two sides differ at most by `ε`,
    /// and only on languages whose image is trivial; they are merged
    /// modulo the trivial class.
    EpsilonAdjust,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: OpWord,
    pub rhs: OpWord,
    pub kind: RuleKind,
}

impl Rule {
    /// Whether `lhs ≡ rhs` holds on every language, as opposed to
    /// modulo `{∅, {ε}, Σ⁺, Σ*}`.
    pub fn is_exact(&self) -> bool {
        self.kind != RuleKind::EpsilonAdjust
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{}", self.lhs, self.rhs)
    }
}

/// Rewrite rules, absorbing factors and the closure words of the
/// Kuratowski schema, restricted to one set of operations.
#[derive(Clone, Debug)]
pub struct RuleSet {
    ops: OpSet,
    rules: Vec<Rule>,
    absorbing: Vec<OpWord>,
    closure_words: Vec<OpWord>,
    by_lhs: HashMap<Vec<Op>, usize>,
    absorbing_set: HashMap<Vec<Op>, usize>,
    longest_factor: usize,
}

/// Words whose image is one of `∅, {ε}, Σ⁺, Σ*` for every language.
const ABSORBING: [&str; 30] = [
    "pcs", "pcf", "fcs", "fcf", "scp", "scf", "fcp", "wcp", "wcs", "wcf", "pcw", "scw", "fcw",
    "wcw", "sckp", "fckp", "pcks", "fcks", "pckf", "sckf", "fckf", "wckp", "wcks", "wckf", "wckw",
    "pckw", "sckw", "fckw", "scskp", "pcpks",
];

const CLOSURE_WORDS: [&str; 15] = [
    "k", "e", "p", "s", "f", "w", "t", "kp", "ks", "kf", "kw", "ep", "es", "ef", "ew",
];

const PSFW: [&str; 4] = ["p", "s", "f", "w"];

fn word(s: &str) -> OpWord {
    s.parse().expect("catalog words use operation letters")
}

/// The words `Y` after which a preceding `k` only adds `ε`:
/// `cb`, `ckb` for `b ∈ {p,s,f,w}`, and `ckck`.
fn epsilon_tails() -> Vec<String> {
    PSFW.iter()
        .flat_map(|b| [format!("c{b}"), format!("ck{b}")])
        .chain(["ckck".to_string()])
        .collect()
}

/// Cancels `cc` and collapses repeated closure letters.
fn tidy(s: &str) -> String {
    let mut out: Vec<char> = Vec::new();
    for ch in s.chars() {
        match out.last() {
            Some('c') if ch == 'c' => {
                out.pop();
            }
            Some(&prev) if prev == ch && "kpsfw".contains(ch) => {}
            _ => out.push(ch),
        }
    }
    out.into_iter().collect()
}

/// The catalog over all of `k,e,c,p,f,s,w,r,t`, in matching priority.
fn catalog() -> Vec<(String, String, RuleKind)> {
    use RuleKind::*;
    let mut out: Vec<(String, String, RuleKind)> = Vec::new();
    let mut add = |l: &str, r: &str, kind| out.push((l.to_string(), r.to_string(), kind));

    for a in ["k", "e", "p", "s", "f", "w", "t"] {
        add(&format!("{a}{a}"), a, Idempotent);
    }
    add("cc", "", Involution);
    add("rr", "", Involution);
    for (l, r) in [
        ("rp", "sr"),
        ("rs", "pr"),
        ("rf", "fr"),
        ("rc", "cr"),
        ("rk", "kr"),
        ("re", "er"),
        ("rw", "wr"),
        ("rt", "tr"),
    ] {
        add(l, r, ReversalShift);
    }
    for (l, r) in [
        ("ps", "f"),
        ("sp", "f"),
        ("pf", "f"),
        ("fp", "f"),
        ("sf", "f"),
        ("fs", "f"),
        ("pw", "w"),
        ("wp", "w"),
        ("sw", "w"),
        ("ws", "w"),
        ("fw", "w"),
        ("wf", "w"),
        ("wk", "kw"),
        ("rkw", "kw"),
        ("ek", "k"),
        ("ke", "k"),
        ("fks", "pks"),
        ("fkp", "skp"),
        ("rkf", "kf"),
        ("skf", "kf"),
        ("pkf", "kf"),
        ("fkf", "kf"),
        // kw(L) and kf(L) are both the star of the letters used by L
        ("kw", "kf"),
        ("pkw", "kw"),
        ("skw", "kw"),
        ("fkw", "kw"),
        ("kwr", "kw"),
        ("kfr", "kf"),
    ] {
        add(l, r, Composition);
    }
    for a in ["k", "e"] {
        for b in PSFW {
            add(&format!("{a}{b}{a}"), &format!("{a}{b}"), Sandwich);
            add(&format!("{b}{a}{b}"), &format!("{a}{b}"), Sandwich);
        }
    }
    for a in ["k", "e"] {
        for b in PSFW {
            add(&format!("{a}{b}c{a}c{a}c{a}"), &format!("{a}{b}c{a}"), Alternation);
            add(&format!("{b}c{b}c{b}c{a}{b}"), &format!("{b}c{a}{b}"), Alternation);
            add(&format!("{a}{b}c{b}c{a}{b}c{a}{b}"), &format!("{a}{b}c{a}{b}"), Alternation);
        }
    }
    for x in CLOSURE_WORDS {
        for y in CLOSURE_WORDS {
            add(&format!("{x}c{y}c{x}c{y}"), &format!("{x}c{y}"), Kuratowski);
        }
    }
    add("ecece", "cece", Alternation);

    // e(L) and k(L) differ only in ε, which these contexts see exactly
    let tails = epsilon_tails();
    for y in &tails {
        add(&format!("e{y}"), y, Plus);
        add(&format!("kck{y}"), &tidy(&format!("kc{y}")), Plus);
    }
    for b in PSFW {
        add(&format!("e{b}c{b}ck{b}"), &format!("{b}c{b}ck{b}"), Plus);
    }

    for (l, r) in [
        ("kt", "k"),
        ("tk", "k"),
        ("kctckck", "kck"),
        ("kckctck", "kck"),
        ("kctctck", "kck"),
        ("tctctck", "tck"),
        ("kctctct", "kct"),
    ] {
        add(l, r, Powers);
    }

    for y in &tails {
        for a in PSFW {
            add(&format!("{a}k{y}"), &format!("{a}{y}"), EpsilonAdjust);
            add(&format!("{a}ck{y}"), &tidy(&format!("{a}c{y}")), EpsilonAdjust);
        }
    }
    for b in PSFW {
        add(&format!("k{b}c{b}ck{b}"), &format!("{b}c{b}ck{b}"), EpsilonAdjust);
    }
    out
}

impl RuleSet {
    /// The catalog restricted to rules whose both sides use only `ops`.
    pub fn default_for(ops: OpSet) -> Result<RuleSet, RewriteError> {
        if let Some(op) = ops.iter().find(|op| matches!(op, Op::Q | Op::N)) {
            return Err(RewriteError::UnsupportedOp(op));
        }
        let mut set = RuleSet {
            ops,
            rules: Vec::new(),
            absorbing: Vec::new(),
            closure_words: CLOSURE_WORDS
                .iter()
                .map(|s| word(s))
                .filter(|w| ops.covers(w.ops()))
                .collect(),
            by_lhs: HashMap::new(),
            absorbing_set: HashMap::new(),
            longest_factor: 0,
        };
        for a in ABSORBING.iter().map(|s| word(s)) {
            set.add_absorbing(a);
        }
        for (l, r, kind) in catalog() {
            set.push(Rule {
                lhs: word(&l),
                rhs: word(&r),
                kind,
            });
        }
        Ok(set)
    }

    /// Appends a rule after the catalog. Rules over letters outside the
    /// operation set, or with an already used left side, are ignored.
    pub fn push(&mut self, rule: Rule) -> bool {
        if !self.ops.covers(rule.lhs.ops()) || !self.ops.covers(rule.rhs.ops()) {
            return false;
        }
        if self.by_lhs.contains_key(rule.lhs.ops()) {
            return false;
        }
        self.longest_factor = self.longest_factor.max(rule.lhs.len());
        self.by_lhs.insert(rule.lhs.ops().to_vec(), self.rules.len());
        self.rules.push(rule);
        true
    }

    /// Adds `rule`, replacing any rule with the same left side in place.
    pub fn insert(&mut self, rule: Rule) {
        match self.by_lhs.get(rule.lhs.ops()) {
            Some(&i) => self.rules[i] = rule,
            None => {
                self.push(rule);
            }
        }
    }

    fn add_absorbing(&mut self, a: OpWord) {
        if self.ops.covers(a.ops()) && !self.absorbing_set.contains_key(a.ops()) {
            self.longest_factor = self.longest_factor.max(a.len());
            self.absorbing_set.insert(a.ops().to_vec(), self.absorbing.len());
            self.absorbing.push(a);
        }
    }

    pub fn ops(&self) -> OpSet {
        self.ops
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn absorbing(&self) -> &[OpWord] {
        &self.absorbing
    }

    pub fn closure_words(&self) -> &[OpWord] {
        &self.closure_words
    }

    pub(crate) fn longest_factor(&self) -> usize {
        self.longest_factor
    }

    pub(crate) fn rule_for(&self, factor: &[Op]) -> Option<(usize, &Rule)> {
        self.by_lhs.get(factor).map(|&i| (i, &self.rules[i]))
    }

    pub(crate) fn is_absorbing(&self, factor: &[Op]) -> bool {
        self.absorbing_set.contains_key(factor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rules_of(ops: &str) -> Vec<String> {
        let set = RuleSet::default_for(ops.parse().unwrap()).unwrap();
        set.rules().iter().map(|r| r.to_string()).collect()
    }

    #[test]
    fn kuratowski_pairs() {
        assert_eq!(rules_of("kc"), ["kk→k", "cc→ε", "kckckck→kck"]);
        assert_eq!(rules_of("pc"), ["pp→p", "cc→ε", "pcpcpcp→pcp"]);
    }

    #[test]
    fn powers_included_with_t() {
        let rules = rules_of("kct");
        for r in ["kt→k", "tk→k", "tt→t", "kctckck→kck", "tctctct→tct"] {
            assert!(rules.iter().any(|x| x == r), "{r} missing");
        }
    }

    #[test]
    fn rejects_q_and_n() {
        assert_eq!(
            RuleSet::default_for("kq".parse().unwrap()).unwrap_err(),
            RewriteError::UnsupportedOp(Op::Q)
        );
    }

    #[test]
    fn absorbing_restricted() {
        let set = RuleSet::default_for("cpsf".parse().unwrap()).unwrap();
        assert!(set.is_absorbing(word("pcs").ops()));
        assert!(!set.absorbing().iter().any(|a| a.ops().contains(&Op::K)));
    }

    #[test]
    fn tidy_cancels() {
        assert_eq!(tidy("kcckck"), "kck");
        assert_eq!(tidy("pcckp"), "pkp");
        assert_eq!(tidy("pcckck"), "pkck");
    }

    #[test]
    fn only_adjustments_are_inexact() {
        let set = RuleSet::default_for("kecpfswr".parse().unwrap()).unwrap();
        for r in set.rules() {
            assert_eq!(r.is_exact(), r.kind != RuleKind::EpsilonAdjust);
        }
        assert!(set.rules().iter().any(|r| !r.is_exact()));
    }
}
