//! Toy idiotypic-network simulator.
//!
//! A deliberately small phenomenological model that produces time-stamped
//! coexistence graphs with the qualitative immune-memory signature: a flat
//! virgin phase, one entropy peak per antigen injection, and a terminal
//! plateau once the stimulated clones settle at their memory volumes.
//!
//! Antibodies are bit-string idiotypes with a volume. Two idiotypes interact
//! when their Hamming distance is at least `min_match`; the interaction
//! weight is the coexistence index `d * v_i * v_j / total_volume`. The
//! repertoire is built so that a responding clone family always exists: a
//! cluster of near-complements of the antigen together with their own
//! complements, plus random fill. The update rule per tick is
//!
//! 1. scheduled injections add antigen volume (with a per-injection
//!    multiplier drawn once at the start);
//! 2. if the antigen exceeds the activation threshold, antigen-affine
//!    antibodies grow proportionally to the antigen volume (memory clones
//!    with an extra gain), and every antibody is stimulated by its affine
//!    partners, saturating at `saturation`;
//! 3. volumes decay multiplicatively, jittered by a small relative noise
//!    while they are in motion, and settle exactly at their floor: the
//!    memory volume for clones that ever exceeded `memory_threshold`, zero
//!    otherwise (below `volume_cutoff` a clone dies out);
//! 4. the antigen decays naturally plus proportionally to the total affine
//!    volume.
//!
//! The resident clone keeps a constant volume so the virgin-phase graph is a
//! single vertex, whose one-bar barcode has entropy exactly zero.

use std::collections::BTreeSet;
use std::io::Read;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::WeightedGraph;
use crate::scalar::{real, Real};

#[derive(Debug, Error, PartialEq)]
pub enum SimError {
    #[error("bit-string length mismatch: {0} vs {1}")]
    LengthMismatch(u32, u32),
    #[error("total volume must be positive")]
    NonPositiveTotal,
    #[error("bad configuration: {0}")]
    BadConfig(String),
}

/// Fixed-width bit string identifying an idiotype.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct BitString {
    bits: u32,
    len: u32,
}

impl BitString {
    pub fn new(bits: u32, len: u32) -> Self {
        assert!(len >= 1 && len <= 32, "supported widths are 1..=32");
        Self {
            bits: bits & mask(len),
            len,
        }
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Bitwise complement (the perfect-match partner).
    pub fn complement(&self) -> BitString {
        BitString::new(!self.bits, self.len)
    }

    /// Copy with bit `pos` flipped.
    pub fn flipped(&self, pos: u32) -> BitString {
        assert!(pos < self.len);
        BitString::new(self.bits ^ (1 << pos), self.len)
    }
}

fn mask(len: u32) -> u32 {
    if len == 32 {
        u32::MAX
    } else {
        (1 << len) - 1
    }
}

/// Number of differing bit positions.
pub fn hamming(a: BitString, b: BitString) -> Result<u32, SimError> {
    if a.len != b.len {
        return Err(SimError::LengthMismatch(a.len, b.len));
    }
    Ok((a.bits ^ b.bits).count_ones())
}

/// Coexistence index `d * v_i * v_j / total`.
pub fn coexistence_index<F: Real>(
    d: u32,
    vol_i: F,
    vol_j: F,
    total_vol: F,
) -> Result<F, SimError> {
    if !(total_vol > F::zero()) {
        return Err(SimError::NonPositiveTotal);
    }
    Ok(F::from(d).expect("distance fits in scalar") * vol_i * vol_j / total_vol)
}

/// An idiotype with its current volume.
#[derive(Debug, Clone, PartialEq)]
pub struct Antibody<F = f64> {
    pub idiotype: BitString,
    pub volume: F,
}

/// Coexistence graph of the population: one vertex per positive-volume
/// antibody (vertex id = index into `pop`), one edge per affine pair with a
/// positive coexistence index.
pub fn build_coexistence_graph<F: Real>(
    pop: &[Antibody<F>],
    min_match: u32,
    timestamp: u64,
) -> Result<WeightedGraph<F>, SimError> {
    assert!(!pop.is_empty(), "population must be nonempty");
    let mut g = WeightedGraph::new(timestamp);
    let total: F = pop.iter().map(|a| a.volume).sum();
    if !(total > F::zero()) {
        return Ok(g);
    }
    for (i, a) in pop.iter().enumerate() {
        if a.volume > F::zero() {
            g.add_vertex(i as u32);
        }
    }
    for (i, a) in pop.iter().enumerate() {
        if !(a.volume > F::zero()) {
            continue;
        }
        for (j, b) in pop.iter().enumerate().skip(i + 1) {
            if !(b.volume > F::zero()) {
                continue;
            }
            let d = hamming(a.idiotype, b.idiotype)?;
            if d < min_match {
                continue;
            }
            let w = coexistence_index(d, a.volume, b.volume, total)?;
            if w > F::zero() {
                g.add_edge(i as u32, j as u32, w)
                    .expect("pairs are visited once");
            }
        }
    }
    Ok(g)
}

fn default_nbits() -> u32 {
    12
}
fn default_n_antibodies() -> usize {
    64
}
fn default_ticks() -> u64 {
    2190
}
fn default_antigen_volume() -> f64 {
    10.0
}
fn default_min_match() -> u32 {
    11
}
fn default_stimulation() -> f64 {
    0.05
}
fn default_decay() -> f64 {
    0.1
}
fn default_memory_boost() -> f64 {
    0.3
}
fn default_seed() -> u64 {
    42
}
fn default_first_injection_tick() -> u64 {
    10
}
fn default_activation_threshold() -> f64 {
    3.0
}
fn default_clearance() -> f64 {
    0.006
}
fn default_antigen_decay() -> f64 {
    0.05
}
fn default_network_stimulation() -> f64 {
    0.03
}
fn default_memory_threshold() -> f64 {
    0.5
}
fn default_memory_gain() -> f64 {
    6.0
}
fn default_volume_cutoff() -> f64 {
    5e-3
}
fn default_leak_max() -> f64 {
    0.3
}
fn default_leak_decades() -> f64 {
    2.0
}
fn default_resident_volume() -> f64 {
    1.0
}
fn default_saturation() -> f64 {
    50.0
}
fn default_settle_band() -> f64 {
    0.5
}
fn default_noise() -> f64 {
    0.02
}
fn default_decay_spread() -> f64 {
    0.15
}
fn default_floor_spread() -> f64 {
    1.0
}
fn default_complement_pairs() -> usize {
    6
}
fn default_injection_jitter() -> f64 {
    0.8
}

/// Simulation parameters. All rates are per tick; the file form is a flat
/// `key = value` list (TOML syntax) with every field optional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    /// Idiotype width; the potential repertoire size is `2^nbits`.
    #[serde(default = "default_nbits")]
    pub nbits: u32,
    /// Sampled repertoire size.
    #[serde(default = "default_n_antibodies")]
    pub n_antibodies: usize,
    /// Lifespan in ticks.
    #[serde(default = "default_ticks")]
    pub ticks: u64,
    /// Injection schedule; when absent, two injections are used: one at
    /// `first_injection_tick` and one at a seeded random tick in the middle
    /// third of the run.
    #[serde(default)]
    pub injection_ticks: Option<Vec<u64>>,
    #[serde(default = "default_first_injection_tick")]
    pub first_injection_tick: u64,
    /// Nominal antigen volume per injection.
    #[serde(default = "default_antigen_volume")]
    pub antigen_volume: f64,
    /// Per-injection multiplier range `[1 - jitter, 1 + jitter]`.
    #[serde(default = "default_injection_jitter")]
    pub injection_jitter: f64,
    /// Minimum Hamming distance for two idiotypes to interact.
    #[serde(default = "default_min_match")]
    pub min_match: u32,
    /// Antigen-driven growth rate of affine antibodies.
    #[serde(default = "default_stimulation")]
    pub stimulation: f64,
    /// Multiplicative volume decay per tick.
    #[serde(default = "default_decay")]
    pub decay: f64,
    /// Memory floor volume for clones that were sufficiently stimulated.
    #[serde(default = "default_memory_boost")]
    pub memory_boost: f64,
    /// Volume a clone must reach to acquire memory.
    #[serde(default = "default_memory_threshold")]
    pub memory_threshold: f64,
    /// Extra stimulation gain of memory clones at re-exposure.
    #[serde(default = "default_memory_gain")]
    pub memory_gain: f64,
    /// Antigen volume below which no immune activation starts.
    #[serde(default = "default_activation_threshold")]
    pub activation_threshold: f64,
    /// Antigen decay per unit of affine antibody volume.
    #[serde(default = "default_clearance")]
    pub clearance: f64,
    /// Natural antigen decay rate.
    #[serde(default = "default_antigen_decay")]
    pub antigen_decay: f64,
    /// Antibody-antibody stimulation rate across affine pairs.
    #[serde(default = "default_network_stimulation")]
    pub network_stimulation: f64,
    /// Volume below which a non-memory clone dies out.
    #[serde(default = "default_volume_cutoff")]
    pub volume_cutoff: f64,
    /// Constant volume of the resident clone.
    #[serde(default = "default_resident_volume")]
    pub resident_volume: f64,
    /// Volume ceiling for stimulation.
    #[serde(default = "default_saturation")]
    pub saturation: f64,
    /// Relative per-tick volume noise while a clone is away from its floor.
    #[serde(default = "default_noise")]
    pub noise: f64,
    /// Relative spread of per-clone decay rates around `decay`.
    #[serde(default = "default_decay_spread")]
    pub decay_spread: f64,
    /// Relative spread of per-clone memory floors above `memory_boost`.
    #[serde(default = "default_floor_spread")]
    pub floor_spread: f64,
    /// Relative band above the memory floor inside which a decaying clone
    /// settles exactly at its floor.
    #[serde(default = "default_settle_band")]
    pub settle_band: f64,
    /// Strongest cross-reactive (low-affinity) stimulation factor applied
    /// to filler clones during an active response.
    #[serde(default = "default_leak_max")]
    pub leak_max: f64,
    /// Log range of the cross-reactive factors across the filler clones.
    #[serde(default = "default_leak_decades")]
    pub leak_decades: f64,
    /// Number of one-bit variants in the responding clone family.
    #[serde(default = "default_complement_pairs")]
    pub complement_pairs: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        toml::from_str("").expect("empty config is the default")
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        if self.nbits < 1 || self.nbits > 24 {
            return Err(SimError::BadConfig("nbits must be in 1..=24".into()));
        }
        if self.min_match == 0 || self.min_match > self.nbits {
            return Err(SimError::BadConfig(
                "min_match must satisfy 0 < min_match <= nbits".into(),
            ));
        }
        if self.ticks == 0 {
            return Err(SimError::BadConfig("ticks must be positive".into()));
        }
        if let Some(ticks) = &self.injection_ticks {
            if ticks.iter().any(|&t| t == 0 || t > self.ticks) {
                return Err(SimError::BadConfig(
                    "injection ticks must lie in 1..=ticks".into(),
                ));
            }
        }
        if self.n_antibodies < 2 * self.complement_pairs + 3 {
            return Err(SimError::BadConfig(
                "n_antibodies too small for the responding clone family".into(),
            ));
        }
        if !(0.0..1.0).contains(&self.decay) {
            return Err(SimError::BadConfig("decay must be in [0, 1)".into()));
        }
        Ok(())
    }

    pub fn from_toml(text: &str) -> Result<Self, SimError> {
        let cfg: SimConfig =
            toml::from_str(text).map_err(|e| SimError::BadConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn read(mut r: impl Read) -> Result<Self, SimError> {
        let mut text = String::new();
        r.read_to_string(&mut text)
            .map_err(|e| SimError::BadConfig(e.to_string()))?;
        Self::from_toml(&text)
    }
}

/// One run of the simulator: the population after every tick, starting at
/// tick 1. Identical configs (seed included) give identical output.
pub fn simulate<F: Real>(cfg: &SimConfig) -> Result<Vec<(u64, Vec<Antibody<F>>)>, SimError> {
    cfg.validate()?;
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    let nbits = cfg.nbits;
    let sample = |rng: &mut ChaCha12Rng| BitString::new(rng.random_range(0..=mask(nbits)), nbits);

    // antigen and the responding clone family: near-complements of the
    // antigen plus their own complements, complement pairs flipped at the
    // same positions so matched pairs stay perfect matches
    let antigen = sample(&mut rng);
    let ab1_hub = antigen.complement();
    let mut flip_positions = BTreeSet::new();
    while flip_positions.len() < cfg.complement_pairs {
        flip_positions.insert(rng.random_range(0..nbits));
    }
    let mut idiotypes: Vec<BitString> = vec![ab1_hub, antigen];
    for &p in &flip_positions {
        idiotypes.push(ab1_hub.flipped(p));
        idiotypes.push(antigen.flipped(p));
    }
    // resident clone: kept non-affine to the antigen so it never responds
    let resident = loop {
        let candidate = sample(&mut rng);
        if hamming(candidate, antigen)? < cfg.min_match && !idiotypes.contains(&candidate) {
            break candidate;
        }
    };
    let resident_index = idiotypes.len();
    idiotypes.push(resident);
    while idiotypes.len() < cfg.n_antibodies {
        let candidate = sample(&mut rng);
        if !idiotypes.contains(&candidate) {
            idiotypes.push(candidate);
        }
    }

    let injections: Vec<u64> = match &cfg.injection_ticks {
        Some(ticks) => {
            let mut ticks = ticks.clone();
            ticks.sort_unstable();
            ticks
        }
        None => {
            let lo = cfg.ticks / 3;
            let hi = 2 * cfg.ticks / 3;
            let second = if hi > lo {
                rng.random_range(lo..hi)
            } else {
                lo.max(cfg.first_injection_tick + 1)
            };
            vec![cfg.first_injection_tick.min(cfg.ticks), second.max(1)]
        }
    };
    let doses: Vec<f64> = injections
        .iter()
        .map(|_| {
            let m = rng.random_range(
                (1.0 - cfg.injection_jitter).max(0.0)..=(1.0 + cfg.injection_jitter),
            );
            cfg.antigen_volume * m
        })
        .collect();

    let n = idiotypes.len();
    let family_len = resident_index; // clone family occupies the prefix
    let affine_to_antigen: Vec<bool> = idiotypes
        .iter()
        .map(|&x| hamming(x, antigen).map(|d| d >= cfg.min_match))
        .collect::<Result<_, _>>()?;

    // Cross-reactive leak: filler clones receive a weak, log-spaced share of
    // the antigen stimulus. Their staggered die-off keeps the barcode moving
    // through the decay phase instead of freezing between plateaus.
    let filler_count = n.saturating_sub(family_len + 1).max(1);
    let mut leak = vec![0.0f64; n];
    let mut rank = 0usize;
    for (i, l) in leak.iter_mut().enumerate() {
        if i < family_len || i == resident_index {
            continue;
        }
        let frac = rank as f64 / filler_count.max(2).saturating_sub(1) as f64;
        *l = cfg.leak_max * 10f64.powf(-cfg.leak_decades * frac);
        rank += 1;
    }
    let mut affine_pairs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            if hamming(idiotypes[i], idiotypes[j])? >= cfg.min_match {
                affine_pairs[i].push(j);
                affine_pairs[j].push(i);
            }
        }
    }

    // per-clone decay rates and memory floors; equal rates would freeze the
    // weight ranks during antigen-free decay and fake extra plateaus
    let decay_rates: Vec<f64> = (0..n)
        .map(|_| {
            let u: f64 = rng.random_range(-0.5..0.5);
            (cfg.decay * (1.0 + cfg.decay_spread * u)).clamp(0.0, 0.95)
        })
        .collect();
    let memory_floors: Vec<f64> = (0..n)
        .map(|_| {
            let u: f64 = rng.random_range(0.0..1.0);
            cfg.memory_boost * (1.0 + cfg.floor_spread * u)
        })
        .collect();

    let mut volumes = vec![0.0f64; n];
    volumes[resident_index] = cfg.resident_volume;
    let mut memory = vec![false; n];
    let mut antigen_volume = 0.0f64;
    let mut out = Vec::with_capacity(cfg.ticks as usize);

    for tick in 1..=cfg.ticks {
        for (k, &when) in injections.iter().enumerate() {
            if when == tick {
                antigen_volume += doses[k];
            }
        }

        if antigen_volume >= cfg.activation_threshold {
            let mut growth = vec![0.0f64; n];
            for i in 0..n {
                if i == resident_index {
                    continue;
                }
                if affine_to_antigen[i] {
                    let gain = if memory[i] { cfg.memory_gain } else { 1.0 };
                    growth[i] += cfg.stimulation * antigen_volume * gain;
                } else if leak[i] > 0.0 {
                    growth[i] += cfg.stimulation * antigen_volume * leak[i];
                }
                let partner_volume: f64 = affine_pairs[i].iter().map(|&j| volumes[j]).sum();
                growth[i] += cfg.network_stimulation * partner_volume;
            }
            for i in 0..n {
                let headroom = (1.0 - volumes[i] / cfg.saturation).max(0.0);
                volumes[i] += growth[i] * headroom;
            }
        }

        let affine_total: f64 = (0..n)
            .filter(|&i| affine_to_antigen[i])
            .map(|i| volumes[i])
            .sum();

        for i in 0..n {
            if i == resident_index {
                continue;
            }
            if volumes[i] >= cfg.memory_threshold {
                memory[i] = true;
            }
            let floor = if memory[i] { memory_floors[i] } else { 0.0 };
            let mut v = volumes[i] * (1.0 - decay_rates[i]);
            if v > floor && v > cfg.volume_cutoff && cfg.noise > 0.0 {
                v *= 1.0 + rng.random_range(-cfg.noise..=cfg.noise);
            }
            if v <= floor * (1.0 + cfg.settle_band) {
                v = floor;
            }
            if !memory[i] && v < cfg.volume_cutoff {
                v = 0.0;
            }
            volumes[i] = v;
        }

        antigen_volume *= (1.0 - cfg.antigen_decay - cfg.clearance * affine_total).max(0.0);
        if antigen_volume < cfg.volume_cutoff {
            antigen_volume = 0.0;
        }

        let pop: Vec<Antibody<F>> = idiotypes
            .iter()
            .zip(&volumes)
            .map(|(&idiotype, &v)| Antibody {
                idiotype,
                volume: real::<F>(v),
            })
            .collect();
        out.push((tick, pop));
    }
    Ok(out)
}

/// Coexistence graphs of a simulation run, one per tick.
pub fn snapshot_graphs<F: Real>(
    run: &[(u64, Vec<Antibody<F>>)],
    min_match: u32,
) -> Result<Vec<WeightedGraph<F>>, SimError> {
    run.iter()
        .map(|(tick, pop)| build_coexistence_graph(pop, min_match, *tick))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(bits: u32) -> BitString {
        BitString::new(bits, 12)
    }

    #[test]
    fn hamming_cases() {
        let a = bs(0b1010_1010_1010);
        assert_eq!(hamming(a, a), Ok(0));
        assert_eq!(hamming(a, a.complement()), Ok(12));
        assert_eq!(hamming(bs(0b1010_1010_1010), bs(0b0101_0101_0111)), Ok(11));
        assert_eq!(
            hamming(a, BitString::new(0, 11)),
            Err(SimError::LengthMismatch(12, 11))
        );
    }

    #[test]
    fn coexistence_index_cases() {
        assert_eq!(coexistence_index(12, 2.0, 3.0, 10.0), Ok(7.2));
        assert_eq!(coexistence_index(12, 0.0, 3.0, 10.0), Ok(0.0));
        assert_eq!(coexistence_index(0, 2.0, 3.0, 10.0), Ok(0.0));
        assert_eq!(
            coexistence_index(12, 2.0, 3.0, 0.0),
            Err(SimError::NonPositiveTotal)
        );
    }

    #[test]
    fn coexistence_graph_edges() {
        let a = bs(0b1111_1111_1111);
        let pop = vec![
            Antibody {
                idiotype: a,
                volume: 2.0,
            },
            Antibody {
                idiotype: a.complement(),
                volume: 3.0,
            },
        ];
        let g = build_coexistence_graph(&pop, 11, 0).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.weight(0, 1), Some(12.0 * 2.0 * 3.0 / 5.0));

        // too-far pair: distance 5 < 11
        let pop = vec![
            Antibody {
                idiotype: bs(0),
                volume: 2.0,
            },
            Antibody {
                idiotype: bs(0b11111),
                volume: 3.0,
            },
        ];
        let g = build_coexistence_graph(&pop, 11, 0).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);

        let single = vec![Antibody {
            idiotype: bs(7),
            volume: 1.0,
        }];
        let g = build_coexistence_graph(&single, 11, 0).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);

        let dead = vec![
            Antibody {
                idiotype: bs(0),
                volume: 0.0,
            },
            Antibody {
                idiotype: bs(1),
                volume: 0.0,
            },
        ];
        let g = build_coexistence_graph(&dead, 11, 0).unwrap();
        assert!(g.is_empty());
    }

    #[test]
    fn graph_weights_are_symmetric_in_construction() {
        let mut cfg = SimConfig::default();
        cfg.ticks = 60;
        cfg.injection_ticks = Some(vec![5]);
        let run: Vec<(u64, Vec<Antibody>)> = simulate(&cfg).unwrap();
        let (_, pop) = &run[40];
        let g = build_coexistence_graph(pop, cfg.min_match, 41).unwrap();
        for (u, v, w) in g.edges() {
            assert_eq!(g.weight(v, u), Some(w));
        }
    }

    #[test]
    fn determinism() {
        let mut cfg = SimConfig::default();
        cfg.ticks = 80;
        let a: Vec<(u64, Vec<Antibody>)> = simulate(&cfg).unwrap();
        let b: Vec<(u64, Vec<Antibody>)> = simulate(&cfg).unwrap();
        assert_eq!(a, b);
        cfg.seed += 1;
        let c: Vec<(u64, Vec<Antibody>)> = simulate(&cfg).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn zero_injections_stay_near_empty() {
        let mut cfg = SimConfig::default();
        cfg.ticks = 50;
        cfg.injection_ticks = Some(vec![]);
        let run: Vec<(u64, Vec<Antibody>)> = simulate(&cfg).unwrap();
        assert_eq!(run.len(), 50);
        for (_, pop) in &run {
            let alive = pop.iter().filter(|a| a.volume > 0.0).count();
            assert_eq!(alive, 1, "only the resident clone persists");
        }
    }

    #[test]
    fn volumes_stay_nonnegative() {
        let mut cfg = SimConfig::default();
        cfg.ticks = 200;
        cfg.injection_ticks = Some(vec![5, 100]);
        let run: Vec<(u64, Vec<Antibody>)> = simulate(&cfg).unwrap();
        for (_, pop) in &run {
            assert!(pop.iter().all(|a| a.volume >= 0.0));
        }
    }

    #[test]
    fn config_validation_and_toml() {
        let cfg = SimConfig::from_toml("ticks = 100\nseed = 7\n").unwrap();
        assert_eq!(cfg.ticks, 100);
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.nbits, 12);

        assert!(SimConfig::from_toml("ticks = 0").is_err());
        assert!(SimConfig::from_toml("min_match = 13").is_err());
        assert!(SimConfig::from_toml("no_such_key = 1").is_err());
        assert!(SimConfig::from_toml("injection_ticks = [0]").is_err());
    }
}
