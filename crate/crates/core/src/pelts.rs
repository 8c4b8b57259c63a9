//! Operational semantics of a persistent entropy automaton as a labelled
//! transition system.
//!
//! A machine state is `(t, rho, b, h)`: current tick, current (or last
//! visited) automaton state, whether the automaton is resting in it, and the
//! last observed entropy. Each new observation `(t', h')` fires exactly one
//! rule, with `hdot = (h' - h) / (t' - t)`:
//!
//! * `Steady`  - resting and the equilibrium condition still holds;
//! * `StartT`  - resting, the condition fails, and there is somewhere to go;
//! * `ContT`   - mid-transition and no successor condition holds yet;
//! * `StopT`   - mid-transition and some successor condition holds; the step
//!   carries that transition's label. This is the only source of
//!   non-determinism: several successors may be satisfied at once.
//!
//! A resting state whose condition fails with no outgoing transition has no
//! applicable rule; that configuration is reported as an error rather than
//! silently absorbed.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::entropy::Pet;
use crate::graph::FormatError;
use crate::pea::Pea;
use crate::scalar::Real;

#[derive(Debug, Error, PartialEq)]
pub enum PeltsError {
    #[error("stuck: no admissible rule at t={t}, h={h}")]
    Stuck { t: u64, h: f64 },
    #[error("observation at t={0} does not advance time")]
    NonMonotoneTime(u64),
    #[error("state {0:?} not in the automaton")]
    UnknownState(String),
    #[error("non-determinism explosion: more than {cap} executions")]
    CapExceeded { cap: usize },
    #[error("empty entropy trace")]
    EmptyPet,
}

/// Machine state `(t, rho, b, h)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeltsState<F = f64> {
    pub t: u64,
    pub rho: String,
    pub steady: bool,
    pub h: F,
}

impl<F: Real> PeltsState<F> {
    /// The initial state `(0, rho0, true, 0)`.
    pub fn initial(pea: &Pea<F>) -> Self {
        Self {
            t: 0,
            rho: pea.initial().name.clone(),
            steady: true,
            h: F::zero(),
        }
    }
}

/// Which rule justified a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    Steady,
    StartT,
    ContT,
    StopT,
}

/// Step label `(t, h, name)`; `name = None` is the empty label.
#[derive(Debug, Clone, PartialEq)]
pub struct StepLabel<F = f64> {
    pub t: u64,
    pub h: F,
    pub name: Option<String>,
}

/// One resolved run: states (starting at the initial state) and the labels
/// of the steps between them.
#[derive(Debug, Clone, PartialEq)]
pub struct MpeaExecution<F = f64> {
    pub states: Vec<PeltsState<F>>,
    pub labels: Vec<StepLabel<F>>,
}

impl<F: Real> MpeaExecution<F> {
    /// The entropy trace this execution consumed.
    pub fn pet(&self) -> Pet<F> {
        Pet::from_observations(self.states[1..].iter().map(|s| (s.t, s.h)).collect())
            .expect("execution timestamps increase")
    }
}

/// Terminal shape of a finite execution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathForm {
    /// Whether the last machine state is steady.
    pub ends_steady: bool,
    /// Number of completed transitions (labelled steps).
    pub alternations: usize,
}

/// All successors of `q` under observation `(t, h)`, with the rule that
/// produced each. `StopT` results come in transition declaration order.
pub fn step<F: Real>(
    q: &PeltsState<F>,
    obs: (u64, F),
    pea: &Pea<F>,
) -> Result<Vec<(RuleKind, StepLabel<F>, PeltsState<F>)>, PeltsError> {
    let (t, h) = obs;
    if t <= q.t {
        return Err(PeltsError::NonMonotoneTime(t));
    }
    let dt = F::from(t - q.t).expect("tick delta fits in scalar");
    let hdot = (h - q.h) / dt;
    let epsilon = |name: &str, steady: bool| {
        (
            StepLabel { t, h, name: None },
            PeltsState {
                t,
                rho: name.to_string(),
                steady,
                h,
            },
        )
    };

    let condition = pea
        .condition(&q.rho)
        .ok_or_else(|| PeltsError::UnknownState(q.rho.clone()))?;

    if q.steady {
        if condition.eval(h, hdot) {
            let (label, state) = epsilon(&q.rho, true);
            return Ok(vec![(RuleKind::Steady, label, state)]);
        }
        if pea.has_outgoing(&q.rho) {
            let (label, state) = epsilon(&q.rho, false);
            return Ok(vec![(RuleKind::StartT, label, state)]);
        }
        return Err(PeltsError::Stuck {
            t,
            h: h.to_f64().unwrap_or(f64::NAN),
        });
    }

    let satisfied: Vec<_> = pea
        .outgoing(&q.rho)
        .filter(|tr| {
            pea.condition(&tr.to)
                .is_some_and(|c| c.eval(h, hdot))
        })
        .collect();
    if satisfied.is_empty() {
        let (label, state) = epsilon(&q.rho, false);
        return Ok(vec![(RuleKind::ContT, label, state)]);
    }
    Ok(satisfied
        .into_iter()
        .map(|tr| {
            (
                RuleKind::StopT,
                StepLabel {
                    t,
                    h,
                    name: Some(tr.label.clone()),
                },
                PeltsState {
                    t,
                    rho: tr.to.clone(),
                    steady: true,
                    h,
                },
            )
        })
        .collect())
}

/// Runs `pet` from the initial state, resolving `StopT` non-determinism by
/// transition declaration order.
pub fn execute<F: Real>(pea: &Pea<F>, pet: &Pet<F>) -> Result<MpeaExecution<F>, PeltsError> {
    if pet.is_empty() {
        return Err(PeltsError::EmptyPet);
    }
    let mut states = vec![PeltsState::initial(pea)];
    let mut labels = Vec::with_capacity(pet.len());
    for &obs in pet.observations() {
        let mut successors = step(states.last().expect("nonempty"), obs, pea)?;
        let (_, label, next) = successors.swap_remove(0);
        labels.push(label);
        states.push(next);
    }
    Ok(MpeaExecution { states, labels })
}

pub const DEFAULT_EXECUTION_CAP: usize = 4096;

/// Enumerates every execution induced by `pet`, up to `cap` of them.
/// Branches that get stuck are dropped; if every branch is stuck the first
/// stuck error is returned.
pub fn enumerate_executions<F: Real>(
    pea: &Pea<F>,
    pet: &Pet<F>,
    cap: usize,
) -> Result<Vec<MpeaExecution<F>>, PeltsError> {
    if pet.is_empty() {
        return Err(PeltsError::EmptyPet);
    }
    let mut frontier = vec![MpeaExecution {
        states: vec![PeltsState::initial(pea)],
        labels: Vec::new(),
    }];
    let mut first_stuck: Option<PeltsError> = None;
    for &obs in pet.observations() {
        let mut next_frontier = Vec::with_capacity(frontier.len());
        for exec in frontier {
            match step(exec.states.last().expect("nonempty"), obs, pea) {
                Ok(successors) => {
                    for (_, label, state) in successors {
                        let mut branched = exec.clone();
                        branched.labels.push(label);
                        branched.states.push(state);
                        next_frontier.push(branched);
                        if next_frontier.len() > cap {
                            return Err(PeltsError::CapExceeded { cap });
                        }
                    }
                }
                Err(e @ PeltsError::Stuck { .. }) => {
                    first_stuck.get_or_insert(e);
                }
                Err(e) => return Err(e),
            }
        }
        frontier = next_frontier;
        if frontier.is_empty() {
            return Err(first_stuck.unwrap_or(PeltsError::EmptyPet));
        }
    }
    Ok(frontier)
}

/// How the execution ended and how many transitions completed.
pub fn path_form<F: Real>(e: &MpeaExecution<F>) -> PathForm {
    PathForm {
        ends_steady: e.states.last().map_or(true, |s| s.steady),
        alternations: e.labels.iter().filter(|l| l.name.is_some()).count(),
    }
}

/// Writes an execution as CSV `t,rho,b,h,label`; the initial state has an
/// empty label, later rows carry the label of the step that reached them.
pub fn write_execution<F: Real>(mut w: impl Write, e: &MpeaExecution<F>) -> io::Result<()> {
    writeln!(w, "t,rho,b,h,label")?;
    for (i, s) in e.states.iter().enumerate() {
        let label = if i == 0 {
            ""
        } else {
            e.labels[i - 1].name.as_deref().unwrap_or("")
        };
        writeln!(
            w,
            "{},{},{},{},{}",
            s.t,
            s.rho,
            s.steady,
            s.h.to_f64().unwrap_or(f64::NAN),
            label
        )?;
    }
    Ok(())
}

/// Reads an execution log written by [`write_execution`].
pub fn read_execution<F: Real>(reader: impl BufRead) -> Result<MpeaExecution<F>, FormatError> {
    let mut states: Vec<PeltsState<F>> = Vec::new();
    let mut labels: Vec<StepLabel<F>> = Vec::new();
    let mut saw_header = false;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !saw_header {
            if line != "t,rho,b,h,label" {
                return Err(FormatError::at(
                    lineno,
                    format!("expected header `t,rho,b,h,label`, found {line:?}"),
                ));
            }
            saw_header = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(FormatError::at(lineno, "expected 5 fields"));
        }
        let t: u64 = fields[0]
            .trim()
            .parse()
            .map_err(|_| FormatError::at(lineno, format!("bad time {:?}", fields[0])))?;
        let rho = fields[1].trim().to_string();
        let steady: bool = fields[2]
            .trim()
            .parse()
            .map_err(|_| FormatError::at(lineno, format!("bad flag {:?}", fields[2])))?;
        let h: f64 = fields[3]
            .trim()
            .parse()
            .map_err(|_| FormatError::at(lineno, format!("bad entropy {:?}", fields[3])))?;
        let h = F::from(h)
            .ok_or_else(|| FormatError::at(lineno, format!("entropy {h} out of range")))?;
        let label = fields[4].trim();
        if !states.is_empty() {
            labels.push(StepLabel {
                t,
                h,
                name: (!label.is_empty()).then(|| label.to_string()),
            });
        }
        states.push(PeltsState { t, rho, steady, h });
    }
    if states.is_empty() {
        return Err(FormatError::at(0, "empty execution log"));
    }
    Ok(MpeaExecution { states, labels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pea::{idiotypic_pea, Pea, PeaState, PeaTransition};
    use crate::condition::EquilibriumCondition;

    fn fixture_pea() -> Pea {
        // coarse equality tolerance so that hand-sized entropy jumps count
        // as "derivative back to zero"
        idiotypic_pea(0.9, true)
    }

    fn pet(values: &[f64]) -> Pet {
        Pet::from_observations(
            values
                .iter()
                .enumerate()
                .map(|(i, &h)| ((i + 1) as u64, h))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn steady_step_in_virgin() {
        let pea = fixture_pea();
        let q = PeltsState::initial(&pea);
        let out = step(&q, (1, 0.0), &pea).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].0, RuleKind::Steady);
        assert_eq!(
            out[0].2,
            PeltsState {
                t: 1,
                rho: "virgin".into(),
                steady: true,
                h: 0.0
            }
        );
        assert_eq!(out[0].1.name, None);
    }

    #[test]
    fn start_transition_when_condition_breaks() {
        let pea = fixture_pea();
        let q = PeltsState {
            t: 1,
            rho: "virgin".into(),
            steady: true,
            h: 0.0,
        };
        let out = step(&q, (2, 1.8), &pea).unwrap();
        assert_eq!(out[0].0, RuleKind::StartT);
        assert!(!out[0].2.steady);
        assert_eq!(out[0].2.rho, "virgin");
    }

    #[test]
    fn stop_transition_into_memory() {
        let pea = fixture_pea();
        let q = PeltsState {
            t: 4,
            rho: "virgin".into(),
            steady: false,
            h: 2.87,
        };
        let out = step(&q, (5, 2.87), &pea).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].0, RuleKind::StopT);
        assert_eq!(out[0].1.name.as_deref(), Some("immunization"));
        assert_eq!(out[0].2.rho, "memory");
        assert!(out[0].2.steady);
    }

    #[test]
    fn stuck_without_outgoing_transitions() {
        let states = vec![PeaState {
            name: "only".to_string(),
            condition: EquilibriumCondition::parse("H = 0").unwrap(),
        }];
        let pea = Pea::new(states, "only", vec![]).unwrap();
        let q = PeltsState::initial(&pea);
        assert_eq!(
            step(&q, (1, 1.0), &pea),
            Err(PeltsError::Stuck { t: 1, h: 1.0 })
        );
    }

    #[test]
    fn fixture_execution_rule_sequence() {
        let pea = fixture_pea();
        let p = pet(&[0.0, 0.0, 1.0, 2.0, 2.87, 2.87, 2.87]);
        let e = execute(&pea, &p).unwrap();
        let shape: Vec<(&str, bool)> = e
            .states
            .iter()
            .map(|s| (s.rho.as_str(), s.steady))
            .collect();
        assert_eq!(
            shape,
            vec![
                ("virgin", true),
                ("virgin", true),
                ("virgin", true),
                ("virgin", false),
                ("virgin", false),
                ("memory", true),
                ("memory", true),
                ("memory", true),
            ]
        );
        let named: Vec<&str> = e
            .labels
            .iter()
            .filter_map(|l| l.name.as_deref())
            .collect();
        assert_eq!(named, vec!["immunization"]);
        assert_eq!(
            path_form(&e),
            PathForm {
                ends_steady: true,
                alternations: 1
            }
        );
    }

    #[test]
    fn constant_zero_pet_stays_virgin() {
        let pea = fixture_pea();
        let p = pet(&[0.0; 6]);
        let e = execute(&pea, &p).unwrap();
        assert!(e.states.iter().all(|s| s.rho == "virgin" && s.steady));
        assert_eq!(path_form(&e).alternations, 0);
    }

    #[test]
    fn execution_ending_mid_transition() {
        let pea = fixture_pea();
        let p = pet(&[0.0, 0.0, 1.0, 2.0]);
        let e = execute(&pea, &p).unwrap();
        assert!(!path_form(&e).ends_steady);
        assert_eq!(path_form(&e).alternations, 0);
    }

    #[test]
    fn pet_roundtrip_from_execution() {
        let pea = fixture_pea();
        let p = pet(&[0.0, 0.0, 1.0, 2.0, 2.87, 2.87, 2.87]);
        let e = execute(&pea, &p).unwrap();
        assert_eq!(e.pet(), p);
    }

    fn branching_pea() -> Pea {
        // two successors of `start` whose conditions both hold at H = 1
        let states = vec![
            PeaState {
                name: "start".to_string(),
                condition: EquilibriumCondition::parse("H = 0").unwrap(),
            },
            PeaState {
                name: "a".to_string(),
                condition: EquilibriumCondition::parse("H > 0").unwrap(),
            },
            PeaState {
                name: "b".to_string(),
                condition: EquilibriumCondition::parse("H > 0.5").unwrap(),
            },
        ];
        let transitions = vec![
            PeaTransition {
                from: "start".into(),
                label: "ta".into(),
                to: "a".into(),
            },
            PeaTransition {
                from: "start".into(),
                label: "tb".into(),
                to: "b".into(),
            },
        ];
        Pea::new(states, "start", transitions).unwrap()
    }

    #[test]
    fn nondeterminism_enumeration_and_policy() {
        let pea = branching_pea();
        let p = pet(&[0.0, 2.0, 1.0]);
        // step 2 leaves `start`, step 3 satisfies both successors
        let all = enumerate_executions(&pea, &p, 16).unwrap();
        assert_eq!(all.len(), 2);
        let ends: Vec<&str> = all
            .iter()
            .map(|e| e.states.last().unwrap().rho.as_str())
            .collect();
        assert!(ends.contains(&"a") && ends.contains(&"b"));

        // first-declared resolves to `a`
        let e = execute(&pea, &p).unwrap();
        assert_eq!(e.states.last().unwrap().rho, "a");

        assert_eq!(
            enumerate_executions(&pea, &p, 1).unwrap_err(),
            PeltsError::CapExceeded { cap: 1 }
        );
    }

    #[test]
    fn labels_mark_exactly_stop_steps() {
        let pea = fixture_pea();
        let p = pet(&[0.0, 1.0, 2.87, 2.87, 1.0, 0.0, 0.0]);
        let e = execute(&pea, &p).unwrap();
        for (i, label) in e.labels.iter().enumerate() {
            let flipped = !e.states[i].steady && e.states[i + 1].steady;
            assert_eq!(label.name.is_some(), flipped);
        }
    }

    #[test]
    fn execution_log_roundtrip() {
        let pea = fixture_pea();
        let p = pet(&[0.0, 0.0, 1.0, 2.0, 2.87, 2.87, 2.87]);
        let e = execute(&pea, &p).unwrap();
        let mut buf = Vec::new();
        write_execution(&mut buf, &e).unwrap();
        let back: MpeaExecution = read_execution(&buf[..]).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn time_must_advance() {
        let pea = fixture_pea();
        let q = PeltsState::initial(&pea);
        assert_eq!(
            step(&q, (0, 0.0), &pea),
            Err(PeltsError::NonMonotoneTime(0))
        );
    }
}
