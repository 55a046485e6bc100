use crate::langops::Op;

/// Whether `ε ∈ x(L)`, tracked for every `L` whose image `x(L)` is not one of
/// `∅, {ε}, Σ⁺, Σ*`. Ignoring the trivial class lets a closure always settle
/// the question: `p(L) ∋ ε` unless `p(L) = ∅`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EpsilonStatus {
    Always,
    Never,
    Unknown,
}

impl EpsilonStatus {
    /// Status of `op(X)` given the status of `X`.
    pub fn after(self, op: Op) -> EpsilonStatus {
        use EpsilonStatus::*;
        match op {
            Op::K | Op::P | Op::S | Op::F | Op::W => Always,
            Op::C => match self {
                Always => Never,
                Never => Always,
                Unknown => Unknown,
            },
            Op::E | Op::R | Op::T => self,
            // not tracked symbolically
            Op::Q | Op::N => Unknown,
        }
    }

    /// Status of `word(L)` over an arbitrary `L`.
    pub fn of(word: &[Op]) -> EpsilonStatus {
        word.iter()
            .rev()
            .fold(EpsilonStatus::Unknown, |s, &op| s.after(op))
    }

    pub fn is_known(self) -> bool {
        self != EpsilonStatus::Unknown
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use EpsilonStatus::*;

    fn of(s: &str) -> EpsilonStatus {
        let w: crate::langops::OpWord = s.parse().unwrap();
        EpsilonStatus::of(w.ops())
    }

    #[test]
    fn transfer() {
        assert_eq!(of(""), Unknown);
        assert_eq!(of("e"), Unknown);
        assert_eq!(of("k"), Always);
        assert_eq!(of("ck"), Never);
        assert_eq!(of("cpc"), Never);
        assert_eq!(of("pc"), Always);
        assert_eq!(of("ecp"), Never);
        assert_eq!(of("rcr"), Unknown);
    }
}
