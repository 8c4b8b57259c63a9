//! Topological runtime monitoring for time-evolving weighted graphs.
//!
//! The pipeline turns a stream of graph snapshots into verdicts about the
//! system that produced them:
//!
//! 1. [`filtration`] builds a filtered clique complex per snapshot;
//! 2. [`persistence`] computes its persistence barcode over Z2;
//! 3. [`entropy`] truncates the barcode and takes its persistent entropy,
//!    yielding one entropy trace (PET) per run;
//! 4. [`mining`] detects the trace's plateaus and mines an automaton whose
//!    states are the steady regimes ([`pea`]);
//! 5. [`pelts`] replays a trace against an automaton under small-step
//!    semantics;
//! 6. [`monitor`] labels the replay with atomic propositions, classifies
//!    the resulting traces and [`ltl`] checks bounded temporal properties
//!    with three-valued verdicts.
//!
//! [`sim`] is a small idiotypic-network simulator used to generate
//! qualitatively realistic input data.
//!
//! All numeric types are generic over the scalar (`f32` or `f64`) via the
//! [`scalar::Real`] trait and default to `f64`; the `*32`/`*64` aliases
//! below pin a concrete scalar.

pub mod condition;
pub mod entropy;
pub mod filtration;
pub mod graph;
pub mod ltl;
pub mod mining;
pub mod monitor;
pub mod pea;
pub mod pelts;
pub mod persistence;
pub mod scalar;
pub mod sim;

pub use condition::{CmpOp, CondExpr, EquilibriumCondition, Var};
pub use entropy::{
    derivative, entropy_series, persistent_entropy, persistent_entropy_in_base,
    persistent_entropy_of_dim, DerivativeSeries, Pet,
};
pub use filtration::{build_clique_filtration, enumerate_cliques, Filtration, Simplex, WeightOrder};
pub use graph::{FormatError, WeightedGraph};
pub use ltl::{evaluate, parse_ltl, Formula, Verdict};
pub use mining::{detect_steady_segments, mine_pea, SteadySegment};
pub use monitor::{batch_statistics, classify_trace, label_execution, GroupCounts, Mpea, MpeaTrace, StepSet, TraceGroup};
pub use pea::{idiotypic_pea, Pea, PeaAugmentation, PeaState, PeaTransition};
pub use pelts::{
    enumerate_executions, execute, path_form, step, MpeaExecution, PathForm, PeltsState, RuleKind,
    StepLabel,
};
pub use persistence::{compute_persistence, Barcode, Interval};
pub use scalar::Real;
pub use sim::{
    build_coexistence_graph, coexistence_index, hamming, simulate, Antibody, BitString, SimConfig,
};

pub type WeightedGraph32 = graph::WeightedGraph<f32>;
pub type WeightedGraph64 = graph::WeightedGraph<f64>;
pub type Filtration32 = filtration::Filtration<f32>;
pub type Filtration64 = filtration::Filtration<f64>;
pub type Barcode32 = persistence::Barcode<f32>;
pub type Barcode64 = persistence::Barcode<f64>;
pub type Pet32 = entropy::Pet<f32>;
pub type Pet64 = entropy::Pet<f64>;
pub type Pea32 = pea::Pea<f32>;
pub type Pea64 = pea::Pea<f64>;
pub type Mpea32 = monitor::Mpea<f32>;
pub type Mpea64 = monitor::Mpea<f64>;
