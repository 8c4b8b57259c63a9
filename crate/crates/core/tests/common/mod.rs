//! Independent oracles shared by the integration and acceptance suites.
//!
//! Everything here recomputes results from first principles, without going
//! through the code paths it is used to check: Betti numbers by Gaussian
//! elimination on full boundary matrices, connected components by
//! union-find, trace groups by regular expressions, and LTL verdicts by a
//! table-driven dynamic program.

#![allow(dead_code)]

use std::collections::HashMap;

use rand::Rng;
use topomon::filtration::{Filtration, Simplex};
use topomon::graph::WeightedGraph;
use topomon::ltl::{Formula, Verdict};
use topomon::monitor::{MpeaTrace, StepSet, TraceGroup};

/// Rank of a 0/1 matrix over the two-element field; rows are bit masks.
fn gf2_rank(mut rows: Vec<u128>) -> usize {
    let mut rank = 0;
    for col in 0..128 {
        let bit = 1u128 << col;
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in 0..rows.len() {
            if r != rank && rows[r] & bit != 0 {
                rows[r] ^= rows[rank];
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Betti number of dimension `dim` of the subcomplex of `f` at filter value
/// `t`, by ranks of the full boundary matrices.
pub fn betti_by_rank(f: &Filtration, dim: usize, t: f64) -> usize {
    let present: Vec<&Simplex> = f
        .simplices()
        .iter()
        .filter(|s| s.filter_value() <= t)
        .collect();
    let of_dim = |d: usize| -> Vec<&&Simplex> {
        present.iter().filter(|s| s.dim() == d).collect()
    };

    // rank of the boundary operator from dimension d to d-1
    let boundary_rank = |d: usize| -> usize {
        if d == 0 || d > f.max_dim() {
            return 0;
        }
        let lower: HashMap<&[u32], usize> = of_dim(d - 1)
            .iter()
            .enumerate()
            .map(|(i, s)| (s.vertices(), i))
            .collect();
        assert!(
            lower.len() <= 128,
            "oracle limited to complexes with at most 128 simplices per dimension"
        );
        let rows: Vec<u128> = of_dim(d)
            .iter()
            .map(|s| {
                let mut row = 0u128;
                for facet in s.facets() {
                    row |= 1u128 << lower[facet.as_slice()];
                }
                row
            })
            .collect();
        gf2_rank(rows)
    };

    let n = of_dim(dim).len();
    n - boundary_rank(dim) - boundary_rank(dim + 1)
}

/// Number of connected components of `g`, by union-find.
pub fn component_count(g: &WeightedGraph) -> usize {
    let vertices: Vec<u32> = g.vertices().collect();
    let index: HashMap<u32, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (u, v, _) in g.edges() {
        let (a, b) = (find(&mut parent, index[&u]), find(&mut parent, index[&v]));
        if a != b {
            parent[a] = b;
        }
    }
    (0..vertices.len())
        .filter(|&i| find(&mut parent, i) == i)
        .count()
}

/// Reference classifier built on the `regex` crate.
pub struct RegexClassifier {
    patterns: Vec<(TraceGroup, regex::Regex)>,
}

impl RegexClassifier {
    pub fn new() -> Self {
        let spec = [
            (TraceGroup::IA, r"^V+$"),
            (TraceGroup::IB, r"^V+W+V+$"),
            (TraceGroup::IIA, r"^V+(W+M+){2,}$"),
            (TraceGroup::IIB, r"^V+W+M+$"),
            (TraceGroup::IIIA, r"^V+(W+M+)+W+$"),
            (TraceGroup::IIIB, r"^V+W+$"),
        ];
        let patterns = spec
            .into_iter()
            .map(|(g, p)| (g, regex::Regex::new(p).unwrap()))
            .collect();
        Self { patterns }
    }

    /// Groups whose pattern matches `word` (over the alphabet VMW).
    pub fn matches(&self, word: &str) -> Vec<TraceGroup> {
        self.patterns
            .iter()
            .filter(|(_, re)| re.is_match(word))
            .map(|(g, _)| *g)
            .collect()
    }

    pub fn classify(&self, word: &str) -> TraceGroup {
        let matched = self.matches(word);
        assert!(
            matched.len() <= 1,
            "patterns are not disjoint on {word:?}: {matched:?}"
        );
        matched.first().copied().unwrap_or(TraceGroup::Other)
    }
}

/// Builds a trace from a VMW word.
pub fn trace_of_word(word: &str) -> MpeaTrace {
    let steps = word
        .chars()
        .map(|c| match c {
            'V' => StepSet::props(&["virgin"]),
            'M' => StepSet::props(&["memory"]),
            'W' => StepSet::Omega,
            other => StepSet::props(&[&other.to_string()]),
        })
        .collect();
    MpeaTrace { steps }
}

/// Table-driven three-valued evaluator: verdict of every subformula at every
/// position, computed bottom-up with explicit loops.
pub fn verdicts_by_table(f: &Formula, trace: &MpeaTrace) -> Vec<Verdict> {
    use Verdict::*;
    let n = trace.len();
    match f {
        Formula::Atom(a) => (0..n)
            .map(|i| {
                if trace.steps[i].satisfies(a) {
                    True
                } else {
                    False
                }
            })
            .collect(),
        Formula::True => vec![True; n],
        Formula::False => vec![False; n],
        Formula::Not(x) => verdicts_by_table(x, trace)
            .into_iter()
            .map(Verdict::not)
            .collect(),
        Formula::And(a, b) => verdicts_by_table(a, trace)
            .into_iter()
            .zip(verdicts_by_table(b, trace))
            .map(|(x, y)| x.and(y))
            .collect(),
        Formula::Or(a, b) => verdicts_by_table(a, trace)
            .into_iter()
            .zip(verdicts_by_table(b, trace))
            .map(|(x, y)| x.or(y))
            .collect(),
        Formula::Implies(a, b) => verdicts_by_table(a, trace)
            .into_iter()
            .zip(verdicts_by_table(b, trace))
            .map(|(x, y)| x.not().or(y))
            .collect(),
        Formula::Next(x) => {
            let inner = verdicts_by_table(x, trace);
            (0..n)
                .map(|i| if i + 1 < n { inner[i + 1] } else { Unknown })
                .collect()
        }
        Formula::Always { bound, inner } => {
            let vs = verdicts_by_table(inner, trace);
            (0..n)
                .map(|i| {
                    let full_window = i + bound < n;
                    let end = (i + bound).min(n - 1);
                    if vs[i..=end].contains(&False) {
                        False
                    } else if full_window && vs[i..=end].iter().all(|&v| v == True) {
                        True
                    } else {
                        Unknown
                    }
                })
                .collect()
        }
        Formula::Eventually { bound, inner } => {
            let vs = verdicts_by_table(inner, trace);
            (0..n)
                .map(|i| {
                    let full_window = i + bound < n;
                    let end = (i + bound).min(n - 1);
                    if vs[i..=end].contains(&True) {
                        True
                    } else if full_window && vs[i..=end].iter().all(|&v| v == False) {
                        False
                    } else {
                        Unknown
                    }
                })
                .collect()
        }
    }
}

/// Random graph on up to `max_vertices` vertices with the given edge
/// probability; weights are either generic floats or small integers (to
/// exercise rank ties).
pub fn random_graph(
    rng: &mut impl Rng,
    max_vertices: u32,
    edge_prob: f64,
    integer_weights: bool,
) -> WeightedGraph {
    let n = rng.random_range(1..=max_vertices);
    let mut g = WeightedGraph::new(0);
    for v in 0..n {
        g.add_vertex(v);
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(edge_prob) {
                let w = if integer_weights {
                    rng.random_range(1..=4) as f64
                } else {
                    rng.random_range(0.1..10.0)
                };
                g.add_edge(u, v, w).unwrap();
            }
        }
    }
    g
}

/// Random VMW word of length up to `max_len` (possibly empty).
pub fn random_word(rng: &mut impl Rng, max_len: usize) -> String {
    let len = rng.random_range(0..=max_len);
    (0..len)
        .map(|_| match rng.random_range(0..3) {
            0 => 'V',
            1 => 'M',
            _ => 'W',
        })
        .collect()
}

/// Random formula over the given atoms with bounded depth and bounds.
pub fn random_formula(
    rng: &mut impl Rng,
    atoms: &[&str],
    depth: usize,
    max_bound: usize,
) -> Formula {
    if depth == 0 || rng.random_bool(0.3) {
        return match rng.random_range(0..atoms.len() + 2) {
            k if k < atoms.len() => Formula::atom(atoms[k]),
            k if k == atoms.len() => Formula::True,
            _ => Formula::False,
        };
    }
    let sub = |rng: &mut _| Box::new(random_formula(rng, atoms, depth - 1, max_bound));
    match rng.random_range(0..7) {
        0 => Formula::Not(sub(rng)),
        1 => Formula::And(sub(rng), sub(rng)),
        2 => Formula::Or(sub(rng), sub(rng)),
        3 => Formula::Implies(sub(rng), sub(rng)),
        4 => Formula::Next(sub(rng)),
        5 => Formula::Always {
            bound: rng.random_range(0..=max_bound),
            inner: sub(rng),
        },
        _ => Formula::Eventually {
            bound: rng.random_range(0..=max_bound),
            inner: sub(rng),
        },
    }
}
