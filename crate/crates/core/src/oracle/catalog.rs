//! The identities, inclusions and absorption facts known for the operations,
//! as claims either engine can test.

use super::Claim;
use crate::automata::{Dfa, Label};
use crate::langops::{self, LangOpError, OpWord};

fn w(s: &str) -> OpWord {
    s.parse().expect("catalog words use known letters")
}

fn eq(x: &str, y: &str) -> Claim {
    Claim::Equal(w(x), w(y))
}

const CLOSURES: [&str; 4] = ["p", "s", "f", "w"];

/// Every claim, in a fixed order.
pub fn catalog() -> Vec<Claim> {
    let mut claims = Vec::new();
    // reversal shifts
    for (x, y) in [("rp", "sr"), ("rs", "pr"), ("rf", "fr"), ("rc", "cr"), ("rk", "kr"), ("rw", "wr")] {
        claims.push(eq(x, y));
    }
    for x in ["ps", "sp", "pf", "fp", "sf", "fs"] {
        claims.push(eq(x, "f"));
    }
    for x in ["pw", "wp", "sw", "ws", "fw", "wf"] {
        claims.push(eq(x, "w"));
    }
    for (x, y) in [
        ("kw", "wk"),
        ("rkw", "kw"),
        ("ek", "k"),
        ("ke", "k"),
        ("fks", "pks"),
        ("fkp", "skp"),
        ("rkf", "kf"),
        ("skf", "kf"),
        ("pkf", "kf"),
        ("fkf", "kf"),
    ] {
        claims.push(eq(x, y));
    }
    for a in ["k", "e"] {
        for b in CLOSURES {
            claims.push(eq(&format!("{a}{b}{a}"), &format!("{a}{b}")));
            claims.push(eq(&format!("{b}{a}{b}"), &format!("{a}{b}")));
        }
    }
    let xs = ["k", "e", "p", "s", "f", "w", "kp", "ks", "kf", "kw", "ep", "es", "ef", "ew"];
    for x in xs {
        for y in xs {
            claims.push(eq(&format!("{x}c{y}c{x}c{y}"), &format!("{x}c{y}")));
        }
    }
    for x in [
        "pcs", "pcf", "fcs", "fcf", "scp", "scf", "fcp", "wcp", "wcs", "wcf", "pcw", "scw", "fcw", "wcw", "sckp", "fckp",
        "pcks", "fcks", "pckf", "sckf", "fckf", "wckp", "wcks", "wckf", "wckw", "pckw", "sckw", "fckw", "scskp", "pcpks",
    ] {
        claims.push(Claim::EmptyOrUniversal(w(x)));
    }
    claims.push(Claim::WithEpsilon(w("kckck"), w("ckck")));
    for b in CLOSURES {
        claims.push(Claim::WithEpsilon(w(&format!("kc{b}")), w(&format!("c{b}"))));
        claims.push(Claim::WithEpsilon(w(&format!("kck{b}")), w(&format!("ck{b}"))));
        claims.push(Claim::WithEpsilon(w(&format!("k{b}c{b}ck{b}")), w(&format!("{b}c{b}ck{b}"))));
    }
    claims.push(Claim::Subset(w("pcpckp"), w("kp")));
    claims.push(Claim::Subset(w("t"), w("k")));
    claims.push(eq("ecece", "cece"));
    claims.push(Claim::EitherUniversal(w("f"), w("fc")));
    claims
}

fn with_epsilon(dfa: &Dfa) -> Dfa {
    let mut nfa = dfa.to_nfa();
    let start = nfa.add_state();
    for q in 0..start {
        if nfa.is_initial(q) {
            nfa.set_initial(q, false);
            nfa.add_move(start, Label::Epsilon, q);
        }
    }
    nfa.set_initial(start, true);
    nfa.set_final(start, true);
    nfa.determinize()
}

/// Tests the claim on `L(dfa)` with the automata engine, by canonical
/// equality. Errors for `t` or `n` on an infinite language.
pub fn holds_exactly(claim: &Claim, dfa: &Dfa) -> Result<bool, LangOpError> {
    let eval = |x: &OpWord| langops::apply_word(x, dfa);
    Ok(match claim {
        Claim::Equal(x, y) => eval(x)?.canonicalize() == eval(y)?.canonicalize(),
        Claim::Subset(x, y) => {
            let (u, v) = (eval(x)?, eval(y)?);
            product_empty(&u, &v.complement())
        }
        Claim::EqualModTrivial(x, y) => {
            let (u, v) = (eval(x)?, eval(y)?);
            u.canonicalize() == v.canonicalize() || (u.is_trivial() && v.is_trivial())
        }
        Claim::Trivial(x) => eval(x)?.is_trivial(),
        Claim::EmptyOrUniversal(x) => {
            let u = eval(x)?;
            u.is_empty() || u.is_universal()
        }
        Claim::WithEpsilon(x, y) => eval(x)?.canonicalize() == with_epsilon(&eval(y)?).canonicalize(),
        Claim::EitherUniversal(x, y) => eval(x)?.is_universal() || eval(y)?.is_universal(),
    })
}

/// Whether `L(a) ∩ L(b) = ∅`, by search of the product automaton.
fn product_empty(a: &Dfa, b: &Dfa) -> bool {
    let sigma = a.alphabet().len();
    let mut seen = std::collections::HashSet::from([(a.initial(), b.initial())]);
    let mut stack = vec![(a.initial(), b.initial())];
    while let Some((p, q)) = stack.pop() {
        if a.is_final(p) && b.is_final(q) {
            return false;
        }
        for x in 0..sigma {
            let next = (a.next(p, x), b.next(q, x));
            if seen.insert(next) {
                stack.push(next);
            }
        }
    }
    true
}
