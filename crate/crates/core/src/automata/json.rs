use serde::{Deserialize, Serialize};

use super::{Alphabet, AutomataError, Dfa};

/// Wire format shared by the CLI and the golden files:
/// `{"alphabet":["a","b"],"states":N,"initial":i,"finals":[..],"delta":[[..],..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaJson {
    pub alphabet: Vec<String>,
    pub states: usize,
    pub initial: usize,
    pub finals: Vec<usize>,
    pub delta: Vec<Vec<usize>>,
}

impl TryFrom<DfaJson> for Dfa {
    type Error = AutomataError;

    fn try_from(raw: DfaJson) -> Result<Self, Self::Error> {
        let letters = raw
            .alphabet
            .iter()
            .map(|s| {
                let mut chars = s.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => Ok(c),
                    _ => Err(AutomataError::BadLetter(s.clone())),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        if raw.states != raw.delta.len() {
            return Err(AutomataError::StateCount {
                declared: raw.states,
                rows: raw.delta.len(),
            });
        }
        Dfa::new(Alphabet::new(letters)?, raw.delta, raw.initial, raw.finals)
    }
}

impl From<&Dfa> for DfaJson {
    fn from(dfa: &Dfa) -> Self {
        let sigma = dfa.alphabet().len();
        DfaJson {
            alphabet: dfa.alphabet().letters().iter().map(|c| c.to_string()).collect(),
            states: dfa.state_count(),
            initial: dfa.initial(),
            finals: dfa.finals().collect(),
            delta: (0..dfa.state_count())
                .map(|q| (0..sigma).map(|a| dfa.next(q, a)).collect())
                .collect(),
        }
    }
}

impl Dfa {
    pub fn from_json(text: &str) -> Result<Dfa, AutomataError> {
        let raw: DfaJson =
            serde_json::from_str(text).map_err(|e| AutomataError::Json(e.to_string()))?;
        Dfa::try_from(raw)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DfaJson::from(self)).expect("plain data serializes")
    }
}
