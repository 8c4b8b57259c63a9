//! Monitor automata: atomic-proposition labeling of executions and
//! classification of the resulting traces.
//!
//! Each steady machine state contributes the proposition set of its
//! automaton state; every mid-transition state contributes the reserved
//! singleton `{w}` (spelled `W` in trace files). Traces over the alphabet
//! `V = {virgin}`, `M = {memory}`, `W = {w}` fall into six pattern groups
//! plus a catch-all:
//!
//! ```text
//! I.a   V+            I.b   V+ W+ V+
//! II.a  V+ (W+ M+){2,}   II.b  V+ W+ M+
//! III.a V+ (W+ M+)+ W+   III.b V+ W+
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::graph::FormatError;
use crate::pea::Pea;
use crate::pelts::MpeaExecution;
use crate::scalar::Real;

/// Reserved proposition marking mid-transition positions.
pub const OMEGA_ATOM: &str = "w";

#[derive(Debug, Error, PartialEq)]
pub enum MonitorError {
    #[error("state {0:?} has no proposition labeling")]
    UnlabeledState(String),
    #[error("state {0:?} not in the automaton")]
    UnknownState(String),
    #[error("proposition {0:?} not declared in the proposition set")]
    UndeclaredProposition(String),
    #[error("the proposition `w` is reserved for mid-transition positions")]
    ReservedOmega,
}

/// A monitor automaton: an automaton plus atomic propositions and a total
/// labeling of its states.
#[derive(Debug, Clone, PartialEq)]
pub struct Mpea<F = f64> {
    pea: Pea<F>,
    propositions: BTreeSet<String>,
    labeling: BTreeMap<String, BTreeSet<String>>,
}

impl<F: Real> Mpea<F> {
    pub fn new(
        pea: Pea<F>,
        propositions: BTreeSet<String>,
        labeling: BTreeMap<String, BTreeSet<String>>,
    ) -> Result<Self, MonitorError> {
        if propositions.contains(OMEGA_ATOM) {
            return Err(MonitorError::ReservedOmega);
        }
        for state in pea.states() {
            let props = labeling
                .get(&state.name)
                .ok_or_else(|| MonitorError::UnlabeledState(state.name.clone()))?;
            for p in props {
                if !propositions.contains(p) {
                    return Err(MonitorError::UndeclaredProposition(p.clone()));
                }
            }
        }
        for name in labeling.keys() {
            if pea.state(name).is_none() {
                return Err(MonitorError::UnknownState(name.clone()));
            }
        }
        Ok(Self {
            pea,
            propositions,
            labeling,
        })
    }

    /// Labels every state with the singleton of its own lowercased name.
    pub fn with_natural_labeling(pea: Pea<F>) -> Result<Self, MonitorError> {
        let mut propositions = BTreeSet::new();
        let mut labeling = BTreeMap::new();
        for state in pea.states() {
            let prop = state.name.to_lowercase();
            propositions.insert(prop.clone());
            labeling.insert(state.name.clone(), BTreeSet::from([prop]));
        }
        Self::new(pea, propositions, labeling)
    }

    pub fn pea(&self) -> &Pea<F> {
        &self.pea
    }

    pub fn propositions(&self) -> &BTreeSet<String> {
        &self.propositions
    }

    pub fn label_of(&self, state: &str) -> Option<&BTreeSet<String>> {
        self.labeling.get(state)
    }
}

/// One position of a trace: the reserved mid-transition marker or a set of
/// atomic propositions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepSet {
    Omega,
    Props(BTreeSet<String>),
}

impl StepSet {
    pub fn props(names: &[&str]) -> Self {
        StepSet::Props(names.iter().map(|s| s.to_string()).collect())
    }

    /// Whether `atom` holds at this position (`w` holds exactly on omega
    /// positions).
    pub fn satisfies(&self, atom: &str) -> bool {
        match self {
            StepSet::Omega => atom == OMEGA_ATOM,
            StepSet::Props(set) => set.contains(atom),
        }
    }
}

impl fmt::Display for StepSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepSet::Omega => write!(f, "W"),
            StepSet::Props(set) => {
                if set.len() == 1 {
                    match set.first().map(String::as_str) {
                        Some("virgin") => return write!(f, "V"),
                        Some("memory") => return write!(f, "M"),
                        _ => {}
                    }
                }
                let items: Vec<&str> = set.iter().map(String::as_str).collect();
                write!(f, "{{{}}}", items.join(","))
            }
        }
    }
}

/// Sequence of proposition sets derived from an execution.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MpeaTrace {
    pub steps: Vec<StepSet>,
}

impl MpeaTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Labels an execution: the automaton state's propositions on steady
/// positions, the omega marker elsewhere.
pub fn label_execution<F: Real>(
    e: &MpeaExecution<F>,
    mpea: &Mpea<F>,
) -> Result<MpeaTrace, MonitorError> {
    let steps = e
        .states
        .iter()
        .map(|s| {
            if s.steady {
                mpea.label_of(&s.rho)
                    .cloned()
                    .map(StepSet::Props)
                    .ok_or_else(|| MonitorError::UnknownState(s.rho.clone()))
            } else {
                Ok(StepSet::Omega)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MpeaTrace { steps })
}

/// The seven trace groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TraceGroup {
    IA,
    IB,
    IIA,
    IIB,
    IIIA,
    IIIB,
    Other,
}

impl TraceGroup {
    pub const ALL: [TraceGroup; 7] = [
        TraceGroup::IA,
        TraceGroup::IB,
        TraceGroup::IIA,
        TraceGroup::IIB,
        TraceGroup::IIIA,
        TraceGroup::IIIB,
        TraceGroup::Other,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TraceGroup::IA => "I.a",
            TraceGroup::IB => "I.b",
            TraceGroup::IIA => "II.a",
            TraceGroup::IIB => "II.b",
            TraceGroup::IIIA => "III.a",
            TraceGroup::IIIB => "III.b",
            TraceGroup::Other => "OTHER",
        }
    }
}

impl fmt::Display for TraceGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sym {
    V,
    M,
    W,
}

/// Assigns a trace to its pattern group.
pub fn classify_trace(trace: &MpeaTrace) -> TraceGroup {
    let mut symbols = Vec::with_capacity(trace.len());
    for step in &trace.steps {
        let sym = match step {
            StepSet::Omega => Sym::W,
            StepSet::Props(set) => {
                if set.len() == 1 && set.first().map(String::as_str) == Some("virgin") {
                    Sym::V
                } else if set.len() == 1 && set.first().map(String::as_str) == Some("memory") {
                    Sym::M
                } else {
                    return TraceGroup::Other;
                }
            }
        };
        symbols.push(sym);
    }
    classify_symbols(&symbols)
}

fn classify_symbols(symbols: &[Sym]) -> TraceGroup {
    let mut blocks: Vec<Sym> = Vec::new();
    for &s in symbols {
        if blocks.last() != Some(&s) {
            blocks.push(s);
        }
    }
    if blocks.first() != Some(&Sym::V) {
        return TraceGroup::Other;
    }
    match blocks.as_slice() {
        [Sym::V] => TraceGroup::IA,
        [Sym::V, Sym::W] => TraceGroup::IIIB,
        [Sym::V, Sym::W, Sym::V] => TraceGroup::IB,
        [Sym::V, Sym::W, Sym::M] => TraceGroup::IIB,
        [Sym::V, rest @ ..] => {
            // rest must be (W M)+ optionally ending with one more W
            let cycles = rest.len() / 2;
            let trailing_w = rest.len() % 2 == 1;
            let well_formed = rest
                .chunks(2)
                .all(|c| c[0] == Sym::W && c.get(1).is_none_or(|&s| s == Sym::M));
            if !well_formed || cycles == 0 {
                return TraceGroup::Other;
            }
            if trailing_w {
                TraceGroup::IIIA
            } else if cycles >= 2 {
                TraceGroup::IIA
            } else {
                TraceGroup::Other
            }
        }
        _ => TraceGroup::Other,
    }
}

/// Histogram of trace groups.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupCounts {
    counts: BTreeMap<TraceGroup, usize>,
}

impl GroupCounts {
    pub fn count(&self, g: TraceGroup) -> usize {
        self.counts.get(&g).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn add(&mut self, g: TraceGroup) {
        *self.counts.entry(g).or_insert(0) += 1;
    }

    /// Count of group I (both subgroups), II, III.
    pub fn group_totals(&self) -> (usize, usize, usize) {
        (
            self.count(TraceGroup::IA) + self.count(TraceGroup::IB),
            self.count(TraceGroup::IIA) + self.count(TraceGroup::IIB),
            self.count(TraceGroup::IIIA) + self.count(TraceGroup::IIIB),
        )
    }
}

/// Classifies every trace and tallies the groups.
pub fn batch_statistics<'a>(traces: impl IntoIterator<Item = &'a MpeaTrace>) -> GroupCounts {
    let mut counts = GroupCounts::default();
    for t in traces {
        counts.add(classify_trace(t));
    }
    counts
}

/// Writes a trace, one position per line (`V`, `M`, `W` or `{p,q}`).
pub fn write_trace(mut w: impl Write, trace: &MpeaTrace) -> io::Result<()> {
    for step in &trace.steps {
        writeln!(w, "{step}")?;
    }
    Ok(())
}

/// Reads a trace written by [`write_trace`].
pub fn read_trace(reader: impl BufRead) -> Result<MpeaTrace, FormatError> {
    let mut steps = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let step = match line {
            "V" => StepSet::props(&["virgin"]),
            "M" => StepSet::props(&["memory"]),
            "W" => StepSet::Omega,
            _ => {
                let inner = line
                    .strip_prefix('{')
                    .and_then(|s| s.strip_suffix('}'))
                    .ok_or_else(|| {
                        FormatError::at(lineno, format!("expected V, M, W or {{p,q}}, found {line:?}"))
                    })?;
                let set: BTreeSet<String> = inner
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(str::to_string)
                    .collect();
                if set.contains(OMEGA_ATOM) {
                    return Err(FormatError::at(
                        lineno,
                        "`w` is reserved; use the symbol W for mid-transition positions",
                    ));
                }
                StepSet::Props(set)
            }
        };
        steps.push(step);
    }
    Ok(MpeaTrace { steps })
}

/// Writes group counts as CSV `group,count`.
pub fn write_group_counts(mut w: impl Write, counts: &GroupCounts) -> io::Result<()> {
    writeln!(w, "group,count")?;
    for g in TraceGroup::ALL {
        writeln!(w, "{},{}", g.name(), counts.count(g))?;
    }
    writeln!(w, "total,{}", counts.total())?;
    Ok(())
}
