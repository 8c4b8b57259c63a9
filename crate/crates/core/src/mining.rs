//! Mining a persistent entropy automaton from an entropy trace.
//!
//! Steady segments are maximal runs of observations whose internal
//! difference quotients stay within `eps_deriv`; runs shorter than `min_len`
//! observations are discarded. Segments are then clustered by level:
//! consecutive processing assigns each segment to the nearest existing
//! cluster centroid within `level_tol`, or opens a new cluster. Each cluster
//! becomes one automaton state, consecutive segment pairs become transitions
//! (a self-loop when both fall in the same cluster), and the first segment's
//! cluster is the initial state.

use thiserror::Error;

use crate::condition::{CmpOp, CondExpr, EquilibriumCondition, Var};
use crate::entropy::Pet;
use crate::pea::{Pea, PeaState, PeaTransition};
use crate::scalar::{real, Real};

#[derive(Debug, Error, PartialEq)]
pub enum MiningError {
    #[error("no steady behaviour found")]
    NoSteadyBehaviour,
}

/// A plateau in the entropy trace: inclusive index range plus mean level.
#[derive(Debug, Clone, PartialEq)]
pub struct SteadySegment<F = f64> {
    pub start: usize,
    pub end: usize,
    pub level: F,
}

impl<F: Real> SteadySegment<F> {
    /// Number of observations in the segment (always at least one).
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }
}

/// Default derivative tolerance: `1e-6` times the largest entropy value.
pub fn default_eps_deriv<F: Real>(pet: &Pet<F>) -> F {
    real::<F>(1e-6) * pet.max_entropy()
}

/// Default level tolerance for clustering: 5% of the largest entropy value.
pub fn default_level_tol<F: Real>(pet: &Pet<F>) -> F {
    real::<F>(0.05) * pet.max_entropy()
}

/// Finds maximal steady segments of `pet`, in temporal order.
pub fn detect_steady_segments<F: Real>(
    pet: &Pet<F>,
    eps_deriv: F,
    min_len: usize,
) -> Vec<SteadySegment<F>> {
    let obs = pet.observations();
    let min_len = min_len.max(1);
    let mut segments = Vec::new();
    if obs.is_empty() {
        return segments;
    }

    let steady_step = |k: usize| -> bool {
        let (t0, h0) = obs[k - 1];
        let (t1, h1) = obs[k];
        let dt = F::from(t1 - t0).expect("tick delta fits in scalar");
        ((h1 - h0) / dt).abs() <= eps_deriv
    };

    let mut start = 0;
    for k in 1..=obs.len() {
        let run_breaks = k == obs.len() || !steady_step(k);
        if run_breaks {
            let end = k - 1;
            if end - start + 1 >= min_len {
                let sum: F = obs[start..=end].iter().map(|&(_, h)| h).sum();
                let level = sum / F::from(end - start + 1).expect("segment length fits");
                segments.push(SteadySegment { start, end, level });
            }
            start = k;
        }
    }
    segments
}

/// Builds an automaton from the detected segments.
///
/// Cluster levels within `level_tol` of zero produce the equality condition
/// `H = 0 and dH = 0`; other clusters get a band condition around their
/// centroid with the derivative bounded by `eps_deriv`. States are named
/// `S0`, `S1`, ... in order of first appearance and transition labels are
/// `t0`, `t1`, ...
pub fn mine_pea<F: Real>(
    segments: &[SteadySegment<F>],
    level_tol: F,
    eps_deriv: F,
    eps_eq: F,
) -> Result<Pea<F>, MiningError> {
    if segments.is_empty() {
        return Err(MiningError::NoSteadyBehaviour);
    }

    // single-pass nearest-centroid clustering in temporal order
    let mut centroids: Vec<F> = Vec::new();
    let mut members: Vec<Vec<F>> = Vec::new();
    let mut assignment: Vec<usize> = Vec::with_capacity(segments.len());
    for seg in segments {
        let nearest = centroids
            .iter()
            .enumerate()
            .map(|(i, &c)| (i, (seg.level - c).abs()))
            .filter(|&(_, d)| d <= level_tol)
            .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite levels"));
        let cluster = match nearest {
            Some((i, _)) => {
                members[i].push(seg.level);
                let sum: F = members[i].iter().copied().sum();
                centroids[i] = sum / F::from(members[i].len()).expect("count fits");
                i
            }
            None => {
                centroids.push(seg.level);
                members.push(vec![seg.level]);
                centroids.len() - 1
            }
        };
        assignment.push(cluster);
    }

    let states: Vec<PeaState<F>> = centroids
        .iter()
        .enumerate()
        .map(|(i, &level)| PeaState {
            name: format!("S{i}"),
            condition: cluster_condition(level, level_tol, eps_deriv, eps_eq),
        })
        .collect();

    let mut transitions: Vec<PeaTransition> = Vec::new();
    for pair in assignment.windows(2) {
        let (from, to) = (pair[0], pair[1]);
        let exists = transitions
            .iter()
            .any(|t| t.from == states[from].name && t.to == states[to].name);
        if !exists {
            transitions.push(PeaTransition {
                from: states[from].name.clone(),
                label: format!("t{}", transitions.len()),
                to: states[to].name.clone(),
            });
        }
    }

    let initial = states[assignment[0]].name.clone();
    Ok(Pea::new(states, &initial, transitions).expect("mined automaton is well-formed"))
}

fn cluster_condition<F: Real>(
    level: F,
    level_tol: F,
    eps_deriv: F,
    eps_eq: F,
) -> EquilibriumCondition<F> {
    let expr = if level.abs() <= level_tol {
        CondExpr::And(
            Box::new(CondExpr::pred(Var::H, CmpOp::Eq, F::zero())),
            Box::new(CondExpr::pred(Var::DH, CmpOp::Eq, F::zero())),
        )
    } else {
        let band = |op, value| Box::new(CondExpr::pred(Var::H, op, value));
        let slope = |op, value| Box::new(CondExpr::pred(Var::DH, op, value));
        CondExpr::And(
            Box::new(CondExpr::And(
                Box::new(CondExpr::And(
                    band(CmpOp::Ge, level - level_tol),
                    band(CmpOp::Le, level + level_tol),
                )),
                slope(CmpOp::Ge, -eps_deriv),
            )),
            slope(CmpOp::Le, eps_deriv),
        )
    };
    EquilibriumCondition::new(expr, eps_eq)
}
