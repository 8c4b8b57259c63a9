//! Persistent entropy automata: named steady states guarded by equilibrium
//! conditions, with labelled transitions among them.
//!
//! The JSON file format is
//!
//! ```json
//! {
//!   "eps_eq": 1e-6,
//!   "states": [{ "name": "virgin", "condition": "H = 0 and dH = 0" }],
//!   "initial": "virgin",
//!   "transitions": [{ "from": "virgin", "label": "t0", "to": "memory" }]
//! }
//! ```
//!
//! `eps_eq` is optional and sets the equality tolerance applied to every
//! condition in the file. Transition order in the file is meaningful: it is
//! the declaration order used to resolve non-determinism.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::condition::{default_eps_eq, EquilibriumCondition};
use crate::scalar::Real;

#[derive(Debug, Error)]
pub enum PeaError {
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("duplicate state {0:?}")]
    DuplicateState(String),
    #[error("automaton has no states")]
    NoStates,
    #[error("condition for state {state:?}: {source}")]
    Condition {
        state: String,
        source: crate::condition::CondParseError,
    },
    #[error("malformed automaton file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeaState<F = f64> {
    pub name: String,
    pub condition: EquilibriumCondition<F>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeaTransition {
    pub from: String,
    pub label: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Pea<F = f64> {
    states: Vec<PeaState<F>>,
    index: BTreeMap<String, usize>,
    initial: usize,
    transitions: Vec<PeaTransition>,
}

impl<F: Real> Pea<F> {
    pub fn new(
        states: Vec<PeaState<F>>,
        initial: &str,
        transitions: Vec<PeaTransition>,
    ) -> Result<Self, PeaError> {
        if states.is_empty() {
            return Err(PeaError::NoStates);
        }
        let mut index = BTreeMap::new();
        for (i, s) in states.iter().enumerate() {
            if index.insert(s.name.clone(), i).is_some() {
                return Err(PeaError::DuplicateState(s.name.clone()));
            }
        }
        let initial = *index
            .get(initial)
            .ok_or_else(|| PeaError::UnknownState(initial.to_string()))?;
        for t in &transitions {
            if !index.contains_key(&t.from) {
                return Err(PeaError::UnknownState(t.from.clone()));
            }
            if !index.contains_key(&t.to) {
                return Err(PeaError::UnknownState(t.to.clone()));
            }
        }
        Ok(Self {
            states,
            index,
            initial,
            transitions,
        })
    }

    pub fn states(&self) -> &[PeaState<F>] {
        &self.states
    }

    pub fn initial(&self) -> &PeaState<F> {
        &self.states[self.initial]
    }

    pub fn state(&self, name: &str) -> Option<&PeaState<F>> {
        self.index.get(name).map(|&i| &self.states[i])
    }

    pub fn condition(&self, name: &str) -> Option<&EquilibriumCondition<F>> {
        self.state(name).map(|s| &s.condition)
    }

    pub fn transitions(&self) -> &[PeaTransition] {
        &self.transitions
    }

    /// Outgoing transitions of `from`, in declaration order.
    pub fn outgoing<'a>(&'a self, from: &'a str) -> impl Iterator<Item = &'a PeaTransition> + 'a {
        self.transitions.iter().filter(move |t| t.from == from)
    }

    pub fn has_outgoing(&self, from: &str) -> bool {
        self.outgoing(from).next().is_some()
    }

    /// Applies an augmentation: optional state renames followed by extra
    /// transitions (duplicates are dropped).
    pub fn augmented(&self, aug: &PeaAugmentation) -> Result<Self, PeaError> {
        let rename = |name: &str| -> String {
            aug.rename
                .get(name)
                .cloned()
                .unwrap_or_else(|| name.to_string())
        };
        let states: Vec<PeaState<F>> = self
            .states
            .iter()
            .map(|s| PeaState {
                name: rename(&s.name),
                condition: s.condition.clone(),
            })
            .collect();
        let initial = rename(&self.states[self.initial].name);
        let mut transitions: Vec<PeaTransition> = self
            .transitions
            .iter()
            .map(|t| PeaTransition {
                from: rename(&t.from),
                label: t.label.clone(),
                to: rename(&t.to),
            })
            .collect();
        for t in &aug.transitions {
            let already = transitions.iter().any(|e| e.from == t.from && e.to == t.to);
            if !already {
                transitions.push(t.clone());
            }
        }
        Pea::new(states, &initial, transitions)
    }
}

/// Hand-declared additions applied after mining: renames and transitions
/// (self-loops that come from domain knowledge rather than from data).
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct PeaAugmentation {
    #[serde(default)]
    pub rename: BTreeMap<String, String>,
    #[serde(default)]
    pub transitions: Vec<PeaTransition>,
}

impl PeaAugmentation {
    pub fn from_json(text: &str) -> Result<Self, PeaError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(mut r: impl Read) -> Result<Self, PeaError> {
        let mut text = String::new();
        r.read_to_string(&mut text)?;
        Self::from_json(&text)
    }
}

#[derive(Serialize, Deserialize)]
struct PeaFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    eps_eq: Option<f64>,
    states: Vec<PeaStateFile>,
    initial: String,
    transitions: Vec<PeaTransition>,
}

#[derive(Serialize, Deserialize)]
struct PeaStateFile {
    name: String,
    condition: String,
}

pub fn pea_to_json<F: Real>(pea: &Pea<F>) -> String {
    let eps = pea.states().first().map(|s| s.condition.eps());
    let file = PeaFile {
        eps_eq: eps.and_then(|e| e.to_f64()),
        states: pea
            .states()
            .iter()
            .map(|s| PeaStateFile {
                name: s.name.clone(),
                condition: s.condition.to_string(),
            })
            .collect(),
        initial: pea.initial().name.clone(),
        transitions: pea.transitions().to_vec(),
    };
    serde_json::to_string_pretty(&file).expect("automaton serializes")
}

pub fn pea_from_json<F: Real>(text: &str) -> Result<Pea<F>, PeaError> {
    let file: PeaFile = serde_json::from_str(text)?;
    let eps = file
        .eps_eq
        .and_then(F::from)
        .unwrap_or_else(default_eps_eq);
    let states = file
        .states
        .into_iter()
        .map(|s| {
            EquilibriumCondition::parse_with_eps(&s.condition, eps)
                .map(|condition| PeaState {
                    name: s.name.clone(),
                    condition,
                })
                .map_err(|source| PeaError::Condition {
                    state: s.name,
                    source,
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Pea::new(states, &file.initial, file.transitions)
}

pub fn write_pea<F: Real>(mut w: impl Write, pea: &Pea<F>) -> Result<(), PeaError> {
    w.write_all(pea_to_json(pea).as_bytes())?;
    w.write_all(b"\n")?;
    Ok(())
}

pub fn read_pea<F: Real>(mut r: impl Read) -> Result<Pea<F>, PeaError> {
    let mut text = String::new();
    r.read_to_string(&mut text)?;
    pea_from_json(&text)
}

/// The two-state automaton of the worked immune-memory example: a `virgin`
/// initial state (`H = 0 and dH = 0`) and a `memory` state
/// (`H > 0 and dH = 0`), with the `virgin -> memory` transition and a
/// `memory` self-loop. `with_virgin_self_loop` adds the domain-knowledge
/// reset loop on `virgin`.
pub fn idiotypic_pea<F: Real>(eps_eq: F, with_virgin_self_loop: bool) -> Pea<F> {
    let states = vec![
        PeaState {
            name: "virgin".to_string(),
            condition: EquilibriumCondition::parse_with_eps("H = 0 and dH = 0", eps_eq)
                .expect("static condition"),
        },
        PeaState {
            name: "memory".to_string(),
            condition: EquilibriumCondition::parse_with_eps("H > 0 and dH = 0", eps_eq)
                .expect("static condition"),
        },
    ];
    let mut transitions = vec![
        PeaTransition {
            from: "virgin".to_string(),
            label: "immunization".to_string(),
            to: "memory".to_string(),
        },
        PeaTransition {
            from: "memory".to_string(),
            label: "restimulation".to_string(),
            to: "memory".to_string(),
        },
    ];
    if with_virgin_self_loop {
        transitions.push(PeaTransition {
            from: "virgin".to_string(),
            label: "reset".to_string(),
            to: "virgin".to_string(),
        });
    }
    Pea::new(states, "virgin", transitions).expect("static automaton")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let pea: Pea = idiotypic_pea(0.9, true);
        let json = pea_to_json(&pea);
        let back: Pea = pea_from_json(&json).unwrap();
        assert_eq!(back, pea);
        assert_eq!(back.initial().name, "virgin");
        assert_eq!(back.transitions().len(), 3);
        assert!(back.condition("memory").unwrap().eval(2.87, 0.87));
    }

    #[test]
    fn validation_errors() {
        let states = vec![PeaState::<f64> {
            name: "a".into(),
            condition: EquilibriumCondition::parse("H = 0").unwrap(),
        }];
        assert!(matches!(
            Pea::new(states.clone(), "b", vec![]),
            Err(PeaError::UnknownState(_))
        ));
        let t = PeaTransition {
            from: "a".into(),
            label: "x".into(),
            to: "zzz".into(),
        };
        assert!(matches!(
            Pea::new(states, "a", vec![t]),
            Err(PeaError::UnknownState(_))
        ));
        assert!(matches!(
            Pea::<f64>::new(vec![], "a", vec![]),
            Err(PeaError::NoStates)
        ));
    }

    #[test]
    fn augmentation_renames_and_adds_loops() {
        let pea: Pea = idiotypic_pea(1e-6, false);
        let aug: PeaAugmentation = serde_json::from_str(
            r#"{
                "rename": {"virgin": "V", "memory": "M"},
                "transitions": [
                    {"from": "V", "label": "reset", "to": "V"},
                    {"from": "V", "label": "dup", "to": "M"}
                ]
            }"#,
        )
        .unwrap();
        let out = pea.augmented(&aug).unwrap();
        assert_eq!(out.initial().name, "V");
        // duplicate V -> M collapsed, V self-loop added
        assert_eq!(out.transitions().len(), 3);
        assert!(out.outgoing("V").any(|t| t.to == "V"));
    }
}
