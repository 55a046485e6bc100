//! The transcribed witness automata against hand-written JSON copies and an
//! independent description of the same language.

use kuratowski_core::automata::{Alphabet, Dfa, Label, Nfa};
use kuratowski_core::corpus;

fn golden(name: &str) -> Dfa {
    let path = format!("{}/corpus/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    Dfa::from_json(&text).unwrap()
}

#[test]
fn golden_files_match_constructors() {
    assert_eq!(golden("figure1").canonicalize(), corpus::figure1().dfa.canonicalize());
    assert_eq!(golden("figure2_base").canonicalize(), corpus::figure2_base().canonicalize());
    assert_eq!(golden("abc").canonicalize(), corpus::abc().dfa.canonicalize());
}

/// `a*((b+c)(a(ΣΣ)* + b + dΣ*) + dΣ⁺)`, built state by state.
fn figure1_from_expression() -> Dfa {
    let sigma = Alphabet::new("abcd".chars()).unwrap();
    let mut n = Nfa::new(sigma);
    let [start, mid, odd, even, after_b, after_d, d0, d1] = [(); 8].map(|_| n.add_state());
    let (a, b, c, d) = (Label::Letter(0), Label::Letter(1), Label::Letter(2), Label::Letter(3));
    let any = [a, b, c, d];
    n.set_initial(start, true);
    n.add_move(start, a, start);
    n.add_move(start, b, mid);
    n.add_move(start, c, mid);
    n.add_move(mid, a, odd);
    n.add_move(mid, b, after_b);
    n.add_move(mid, d, after_d);
    n.add_move(start, d, d0);
    for x in any {
        n.add_move(odd, x, even);
        n.add_move(even, x, odd);
        n.add_move(after_d, x, after_d);
        n.add_move(d0, x, d1);
        n.add_move(d1, x, d1);
    }
    for q in [odd, after_b, after_d, d1] {
        n.set_final(q, true);
    }
    n.determinize()
}

#[test]
fn figure1_is_the_stated_expression() {
    assert_eq!(figure1_from_expression().canonicalize(), corpus::figure1().dfa.canonicalize());
}

#[test]
fn figure1_agrees_with_regex_engine() {
    let re = regex::Regex::new("^a*((b|c)(a([abcd][abcd])*|b|d[abcd]*)|d[abcd]+)$").unwrap();
    let dfa = corpus::figure1().dfa;
    let mut words = vec![String::new()];
    for _ in 0..7 {
        let longer: Vec<String> = words
            .iter()
            .filter(|w| w.len() == words.last().unwrap().len())
            .flat_map(|w| "abcd".chars().map(move |x| format!("{w}{x}")))
            .collect();
        words.extend(longer);
    }
    assert_eq!(words.len(), (0..=7).map(|n| 4usize.pow(n)).sum::<usize>());
    for w in &words {
        assert_eq!(dfa.accepts_str(w), re.is_match(w), "{w:?}");
    }
}
