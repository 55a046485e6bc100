//! Concrete orbits `O_S(L) = { x(L) : x ∈ S* }` of regular languages.

use std::collections::{HashMap, HashSet};
use std::fmt::{self, Write};

use crate::automata::{CanonicalDfa, Dfa};
use crate::corpus::{self, Expectation, Witness};
use crate::langops::{self, LangOpError, Op, OpSet, OpWord};

pub const DEFAULT_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbitError {
    #[error("orbit cap exceeded ({0} languages)")]
    CapExceeded(usize),
    #[error(transparent)]
    Op(#[from] LangOpError),
}

/// One orbit member.
#[derive(Clone, Debug)]
pub struct Member {
    pub dfa: CanonicalDfa,
    /// A shortest word producing this member, least in enumeration order.
    pub witness: OpWord,
    pub trivial: bool,
}

#[derive(Clone, Debug)]
pub struct OrbitResult {
    pub ops: OpSet,
    /// In discovery order; the seed comes first.
    pub members: Vec<Member>,
    /// `(source, op, target)`: `op` maps member `source` to member `target`.
    pub edges: Vec<(usize, Op, usize)>,
}

impl OrbitResult {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &OpWord> {
        self.members.iter().map(|m| &m.witness)
    }

    pub fn trivial_members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().enumerate().filter(|(_, m)| m.trivial).map(|(i, _)| i)
    }

    /// Graphviz source: one node per member labelled by its witness word,
    /// trivial members drawn as boxes.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph orbit {\n");
        for (i, m) in self.members.iter().enumerate() {
            let shape = if m.trivial { ", shape=box" } else { "" };
            writeln!(out, "  n{i} [label=\"{}\"{shape}];", m.witness).unwrap();
        }
        for (s, op, t) in &self.edges {
            writeln!(out, "  n{s} -> n{t} [label=\"{op}\"];").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Breadth-first closure of `{seed}` under `ops`, deduplicated by canonical
/// automaton. Members are expanded in discovery order, ops in the order
/// `k < e < c < p < f < s < w < r < q`, so witnesses are shortest and the
/// result is deterministic.
pub fn compute_orbit(seed: &Dfa, ops: OpSet, cap: usize) -> Result<OrbitResult, OrbitError> {
    let start = seed.canonicalize();
    let mut index: HashMap<CanonicalDfa, usize> = HashMap::from([(start.clone(), 0)]);
    let mut result = OrbitResult {
        ops,
        members: vec![Member {
            trivial: start.dfa().is_trivial(),
            dfa: start,
            witness: OpWord::empty(),
        }],
        edges: Vec::new(),
    };
    if cap == 0 {
        return Err(OrbitError::CapExceeded(cap));
    }
    let mut next = 0;
    while next < result.members.len() {
        for op in ops.iter() {
            let image = langops::apply(op, result.members[next].dfa.dfa())?.canonicalize();
            let target = match index.get(&image) {
                Some(&t) => t,
                None => {
                    if result.members.len() == cap {
                        return Err(OrbitError::CapExceeded(cap));
                    }
                    let t = result.members.len();
                    index.insert(image.clone(), t);
                    result.members.push(Member {
                        trivial: image.dfa().is_trivial(),
                        witness: result.members[next].witness.prepend(op),
                        dfa: image,
                    });
                    t
                }
            };
            result.edges.push((next, op, target));
        }
        next += 1;
    }
    Ok(result)
}

/// One checked row of the `{p,c}` witness table.
#[derive(Clone, Debug)]
pub struct RowCheck {
    pub word: OpWord,
    pub states: Vec<usize>,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct Table1Report {
    pub rows: Vec<RowCheck>,
}

impl Table1Report {
    pub fn passed(&self) -> usize {
        self.rows.iter().filter(|r| r.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.rows.len()
    }
}

impl fmt::Display for Table1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let states: Vec<String> = r.states.iter().map(usize::to_string).collect();
            writeln!(
                f,
                "{:<8} {{{}}} {}",
                r.word.to_string(),
                states.join(","),
                if r.passed { "PASS" } else { "FAIL" }
            )?;
        }
        write!(f, "table1: {}/{} rows {}", self.passed(), self.rows.len(), verdict(self.all_passed()))
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Checks each row of the table: `word(L)` must be accepted by the same
/// eight-state automaton with the row's final states (numbered from 1).
pub fn verify_table1(figure1: &Dfa) -> Table1Report {
    let rows = corpus::TABLE1
        .iter()
        .map(|(w, states)| {
            let word: OpWord = w.parse().expect("table words");
            let expected = figure1.with_finals(states.iter().map(|s| s - 1));
            let passed = langops::apply_word(&word, figure1)
                .map(|got| got.equivalent(&expected).unwrap_or(false))
                .unwrap_or(false);
            RowCheck {
                word,
                states: states.to_vec(),
                passed,
            }
        })
        .collect();
    Table1Report { rows }
}

/// `{k,c,f}` style label of an op set.
fn set_label(ops: OpSet) -> String {
    let letters: Vec<String> = ops.iter().map(|op| op.to_string()).collect();
    format!("{{{}}}", letters.join(","))
}

/// One line item of a witness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCheck {
    pub label: String,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub name: String,
    pub checks: Vec<WitnessCheck>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .checks
            .iter()
            .map(|c| format!("{} {}", c.label, verdict(c.passed)))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Runs every expectation of a witness. Final-state rows are summarized on
/// one `table1:` item; each op set's orbit is computed once.
pub fn check_witness(witness: &Witness, cap: usize) -> Result<WitnessReport, OrbitError> {
    let mut orbits: HashMap<OpSet, OrbitResult> = HashMap::new();
    let mut orbit_of = |ops: OpSet| -> Result<OrbitResult, OrbitError> {
        if let Some(o) = orbits.get(&ops) {
            return Ok(o.clone());
        }
        let o = compute_orbit(&witness.dfa, ops, cap)?;
        orbits.insert(ops, o.clone());
        Ok(o)
    };
    let mut checks = Vec::new();
    let (mut rows, mut rows_passed) = (0, 0);
    for e in &witness.expected {
        match e {
            Expectation::OrbitSize { ops, size } => {
                let got = orbit_of(*ops)?.len();
                let mut label = format!("orbit{}={got}", set_label(*ops));
                if got != *size {
                    write!(label, " (expected {size})").unwrap();
                }
                checks.push(WitnessCheck {
                    label,
                    passed: got == *size,
                });
            }
            Expectation::OrbitWords { ops, words } => {
                let orbit = orbit_of(*ops)?;
                let members: HashSet<&CanonicalDfa> = orbit.members.iter().map(|m| &m.dfa).collect();
                let produced = words
                    .iter()
                    .map(|w| langops::apply_word(w, &witness.dfa).map(|d| d.canonicalize()))
                    .collect::<Result<HashSet<_>, _>>()?;
                checks.push(WitnessCheck {
                    label: format!("words{}", set_label(*ops)),
                    // distinct languages, exactly the orbit's members
                    passed: produced.len() == words.len()
                        && produced.len() == members.len()
                        && produced.iter().all(|d| members.contains(d)),
                });
            }
            Expectation::FinalStates { word, states } => {
                let expected = witness.dfa.with_finals(states.iter().map(|s| s - 1));
                let got = langops::apply_word(word, &witness.dfa)?;
                rows += 1;
                if got.equivalent(&expected).unwrap_or(false) {
                    rows_passed += 1;
                }
            }
        }
    }
    if rows > 0 {
        checks.insert(
            0,
            WitnessCheck {
                label: format!("table1: {rows_passed}/{rows} rows"),
                passed: rows_passed == rows,
            },
        );
    }
    Ok(WitnessReport {
        name: witness.name.clone(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Alphabet;

    fn ops(s: &str) -> OpSet {
        s.parse().unwrap()
    }

    #[test]
    fn empty_language_under_kc() {
        let orbit = compute_orbit(&Dfa::empty(Alphabet::first(2)), ops("kc"), DEFAULT_CAP).unwrap();
        assert_eq!(orbit.len(), 4);
        assert_eq!(orbit.trivial_members().count(), 4);
    }

    #[test]
    fn dot_shapes() {
        let sigma = Alphabet::first(2);
        let univ = compute_orbit(&Dfa::universal(sigma.clone()), ops("p"), 10).unwrap();
        let dot = univ.to_dot();
        assert_eq!(univ.len(), 1);
        assert!(dot.contains("n0 -> n0 [label=\"p\"]"));
        let alone = compute_orbit(&Dfa::from_word(sigma, &[0]), OpSet::default(), 10).unwrap();
        assert_eq!((alone.len(), alone.edges.len()), (1, 0));
        assert_eq!(alone.to_dot(), "digraph orbit {\n  n0 [label=\"ε\"];\n}\n");
    }

    #[test]
    fn figure1_witness_report() {
        let report = check_witness(&corpus::figure1(), DEFAULT_CAP).unwrap();
        assert_eq!(report.to_string(), "table1: 14/14 rows PASS; orbit{c,p}=14 PASS");
    }

    #[test]
    fn wrong_expectation_fails() {
        let mut w = corpus::unary_ln(4).unwrap();
        w.expected = vec![Expectation::OrbitSize { ops: ops("q"), size: 5 }];
        let report = check_witness(&w, DEFAULT_CAP).unwrap();
        assert!(!report.passed());
        assert_eq!(report.to_string(), "orbit{q}=4 (expected 5) FAIL");
    }

    #[test]
    fn cap_is_enforced() {
        let seed = corpus::figure1().dfa;
        assert_eq!(compute_orbit(&seed, ops("pc"), 5).unwrap_err(), OrbitError::CapExceeded(5));
    }

    #[test]
    fn witnesses_regenerate_members() {
        let seed = corpus::abc().dfa;
        let orbit = compute_orbit(&seed, ops("kpsf"), DEFAULT_CAP).unwrap();
        for m in &orbit.members {
            let again = langops::apply_word(&m.witness, &seed).unwrap().canonicalize();
            assert_eq!(again, m.dfa, "{}", m.witness);
        }
    }
}
