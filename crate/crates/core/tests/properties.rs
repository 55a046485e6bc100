use std::sync::Arc;

use kuratowski_core::automata::{Alphabet, Dfa, Label, Letter, Nfa};
use kuratowski_core::langops::{self, Op, OpSet, OpWord};
use kuratowski_core::oracle::{catalog, holds_exactly, BoundedLang, Claim, WordSpace};
use kuratowski_core::orbit::{compute_orbit, DEFAULT_CAP};
use kuratowski_core::rewrite::{self, misplaced_reversals};
use proptest::prelude::*;

fn dfa_strategy(max_states: usize, sigmas: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Dfa> {
    (1..=max_states, sigmas).prop_flat_map(|(n, sigma)| {
        (
            prop::collection::vec(prop::collection::vec(0..n, sigma), n),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(delta, finals)| {
                let finals = finals.iter().enumerate().filter(|(_, &f)| f).map(|(q, _)| q);
                Dfa::new(Alphabet::first(sigma), delta, 0, finals).unwrap()
            })
    })
}

fn finite_strategy(sigma: usize, max_len: usize) -> impl Strategy<Value = Dfa> {
    prop::collection::vec(prop::collection::vec(0..sigma, 0..=max_len), 0..5).prop_map(move |words| {
        Dfa::from_words(Alphabet::first(sigma), words.iter().map(Vec::as_slice))
    })
}

/// The same automaton with states renumbered by `perm` (initial stays 0).
fn renumbered(dfa: &Dfa, seed: u64) -> Dfa {
    let n = dfa.state_count();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut x = seed;
    for i in (1..n).rev() {
        x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        perm.swap(i, (x >> 33) as usize % (i + 1));
    }
    let sigma = dfa.alphabet().len();
    let mut delta = vec![Vec::new(); n];
    for q in 0..n {
        delta[perm[q]] = (0..sigma).map(|a| perm[dfa.next(q, a)]).collect();
    }
    Dfa::new(
        dfa.alphabet().clone(),
        delta,
        perm[dfa.initial()],
        dfa.finals().map(|q| perm[q]),
    )
    .unwrap()
}

fn union(a: &Dfa, b: &Dfa) -> Dfa {
    let mut nfa = Nfa::new(a.alphabet().clone());
    for d in [a, b] {
        let offset = nfa.state_count();
        for _ in 0..d.state_count() {
            nfa.add_state();
        }
        nfa.set_initial(offset + d.initial(), true);
        for q in 0..d.state_count() {
            nfa.set_final(offset + q, d.is_final(q));
            for x in 0..d.alphabet().len() {
                nfa.add_move(offset + q, Label::Letter(x), offset + d.next(q, x));
            }
        }
    }
    nfa.determinize()
}

fn subset(a: &Dfa, b: &Dfa) -> bool {
    union(a, b).canonicalize() == b.canonicalize()
}

fn words_up_to(sigma: usize, len: usize) -> Vec<Vec<Letter>> {
    let mut all = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<Letter>| {
                (0..sigma).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

fn same_words(a: &Dfa, b: &Dfa, len: usize) -> bool {
    words_up_to(a.alphabet().len(), len)
        .iter()
        .all(|w| a.accepts(w) == b.accepts(w))
}

const CLOSURES: [Op; 7] = [Op::K, Op::E, Op::P, Op::S, Op::F, Op::W, Op::T];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn canonical_forms_decide_equivalence(
        a in dfa_strategy(5, 2..=2),
        b in dfa_strategy(5, 2..=2),
        seed in any::<u64>(),
        related in any::<bool>(),
    ) {
        let b = if related { renumbered(&union(&a, &a.with_finals([])), seed) } else { b };
        let same = a.equivalent(&b).unwrap();
        prop_assert_eq!(a.canonicalize() == b.canonicalize(), same);
        prop_assert_eq!(same, same_words(&a, &b, 9));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn minimize_is_idempotent_and_faithful(d in dfa_strategy(6, 1..=3)) {
        let m = d.minimize();
        prop_assert!(m.state_count() <= d.state_count());
        prop_assert_eq!(m.minimize().state_count(), m.state_count());
        prop_assert!(same_words(&d, &m, 7));
    }

    #[test]
    fn universal_iff_complement_empty(d in dfa_strategy(5, 1..=3)) {
        prop_assert_eq!(d.is_universal(), d.complement().is_empty());
        prop_assert_eq!(d.is_empty(), d.complement().is_universal());
    }

    #[test]
    fn determinize_preserves_language(d in dfa_strategy(5, 2..=3)) {
        let again = d.to_nfa().determinize();
        prop_assert!(d.equivalent(&again).unwrap());
        let back = langops::apply(Op::R, &langops::apply(Op::R, &d).unwrap()).unwrap();
        prop_assert!(d.equivalent(&back).unwrap());
    }

    #[test]
    fn truncation_is_coherent(bits in prop::collection::vec(any::<bool>(), 127), small in 2usize..6) {
        let big = Arc::new(WordSpace::new(2, 6));
        let cut = Arc::new(WordSpace::new(2, small));
        let lang = BoundedLang::from_indices(&big, bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i));
        for op in Op::ALL {
            let outer = lang.apply(op).restrict(&cut);
            let inner = lang.restrict(&cut).apply(op);
            match op {
                // need no witness past the words they produce
                Op::C | Op::R | Op::K | Op::E | Op::T | Op::N => prop_assert_eq!(&inner, &outer, "{}", op),
                // witnesses may be cut off: only the inclusion survives
                _ => prop_assert!(inner.is_subset(&outer), "{}", op),
            }
        }
    }

    #[test]
    fn bounded_ops_are_monotone(
        a in prop::collection::vec(any::<bool>(), 63),
        b in prop::collection::vec(any::<bool>(), 63),
    ) {
        let space = Arc::new(WordSpace::new(2, 5));
        let ones = |v: &[bool]| v.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i).collect::<Vec<_>>();
        let l = BoundedLang::from_indices(&space, ones(&a));
        let both: Vec<bool> = a.iter().zip(&b).map(|(x, y)| *x || *y).collect();
        let m = BoundedLang::from_indices(&space, ones(&both));
        for op in CLOSURES {
            prop_assert!(l.apply(op).is_subset(&m.apply(op)), "{}", op);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn closure_laws(d in dfa_strategy(4, 2..=2), extra in dfa_strategy(3, 2..=2), fin in finite_strategy(2, 3)) {
        let bigger = union(&d, &extra);
        for op in CLOSURES {
            // t is only defined on finite languages
            let (l, m) = if op == Op::T { (fin.clone(), union(&fin, &Dfa::from_word(Alphabet::first(2), &[0]))) } else { (d.clone(), bigger.clone()) };
            let image = langops::apply(op, &l).unwrap();
            prop_assert!(subset(&l, &image), "{} not extensive", op);
            prop_assert!(subset(&image, &langops::apply(op, &m).unwrap()), "{} not monotone", op);
            let twice = langops::apply(op, &image);
            if op != Op::T || image.is_finite() {
                prop_assert_eq!(twice.unwrap().canonicalize(), image.canonicalize(), "{} not idempotent", op);
            }
        }
    }

    #[test]
    fn catalog_holds_on_automata(d in dfa_strategy(5, 2..=3), fin in finite_strategy(2, 4)) {
        for claim in catalog() {
            let uses_t = matches!(&claim, Claim::Subset(x, _) if x.ops().contains(&Op::T));
            let target = if uses_t { &fin } else { &d };
            prop_assert!(holds_exactly(&claim, target).unwrap(), "{}", claim);
        }
    }
}

/// Op sets whose orbits are small enough to compute many times.
const SMALL_SETS: [&str; 8] = ["kc", "pc", "kcr", "kf", "kpsf", "cpsf", "psfwr", "kcf"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn orbits_are_closed_and_bounded(d in dfa_strategy(4, 2..=2), which in 0..SMALL_SETS.len()) {
        let ops: OpSet = SMALL_SETS[which].parse().unwrap();
        let orbit = compute_orbit(&d, ops, DEFAULT_CAP).unwrap();
        prop_assert_eq!(orbit.edges.len(), orbit.len() * ops.len());
        for &(s, op, t) in &orbit.edges {
            let image = langops::apply(op, orbit.members[s].dfa.dfa()).unwrap().canonicalize();
            prop_assert_eq!(&image, &orbit.members[t].dfa);
        }
        let bound = rewrite::enumerate_ops(ops, 100_000).unwrap().total_count();
        prop_assert!(orbit.len() <= bound, "{} > {}", orbit.len(), bound);
    }

    #[test]
    fn renaming_letters_keeps_orbit_size(d in dfa_strategy(4, 2..=2), which in 0..SMALL_SETS.len()) {
        let ops: OpSet = SMALL_SETS[which].parse().unwrap();
        let n = d.state_count();
        let swapped = Dfa::new(
            Alphabet::first(2),
            (0..n).map(|q| vec![d.next(q, 1), d.next(q, 0)]).collect(),
            d.initial(),
            d.finals(),
        ).unwrap();
        prop_assert_eq!(
            compute_orbit(&d, ops, DEFAULT_CAP).unwrap().len(),
            compute_orbit(&swapped, ops, DEFAULT_CAP).unwrap().len()
        );
    }

    #[test]
    fn enumeration_is_deterministic_with_one_trailing_r(mask in 1u16..128) {
        let letters = [Op::K, Op::C, Op::P, Op::S, Op::F, Op::W, Op::R];
        let ops = OpSet::new(letters.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &op)| op));
        let first = rewrite::enumerate_ops(ops, 100_000).unwrap();
        let second = rewrite::enumerate_ops(ops, 100_000).unwrap();
        prop_assert_eq!(&first.nodes, &second.nodes);
        prop_assert_eq!(&first.log, &second.log);
        prop_assert!(misplaced_reversals(&first).is_empty());
        prop_assert!(ops.is_subset(first.ops));
        prop_assert!(first.nodes.iter().all(|w: &OpWord| first.ops.covers(w.ops())));
    }
}
