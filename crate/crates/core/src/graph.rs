//! Time-stamped undirected weighted graphs and the snapshot file format.
//!
//! A snapshot file is a CSV with header `time,u,v,weight`, one row per edge,
//! rows grouped by `time`. Isolated vertices are carried by a sidecar line
//! `#vertices: t: 0,1,...`; the bare form `#vertices: 0,1,...` (no time
//! prefix) is also accepted and applies to the next edge row's time. The
//! writer always emits the time-prefixed form so that ticks without any edge
//! remain representable.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::scalar::Real;

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u32, u32),
    #[error("edge ({0}, {1}) has non-positive or non-finite weight")]
    BadWeight(u32, u32),
}

/// Undirected weighted graph observed at one time tick.
///
/// No self-loops, at most one edge per unordered vertex pair, all weights
/// strictly positive and finite. Immutable once built (construction is the
/// only mutation surface).
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph<F = f64> {
    timestamp: u64,
    vertices: BTreeSet<u32>,
    edges: BTreeMap<(u32, u32), F>,
}

impl<F: Real> WeightedGraph<F> {
    pub fn new(timestamp: u64) -> Self {
        Self {
            timestamp,
            vertices: BTreeSet::new(),
            edges: BTreeMap::new(),
        }
    }

    pub fn timestamp(&self) -> u64 {
        self.timestamp
    }

    pub fn add_vertex(&mut self, v: u32) {
        self.vertices.insert(v);
    }

    /// Adds an undirected edge; both endpoints are added as vertices.
    pub fn add_edge(&mut self, u: u32, v: u32, weight: F) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !(weight > F::zero()) || !weight.is_finite() {
            return Err(GraphError::BadWeight(u, v));
        }
        let key = (u.min(v), u.max(v));
        if self.edges.contains_key(&key) {
            return Err(GraphError::DuplicateEdge(key.0, key.1));
        }
        self.vertices.insert(u);
        self.vertices.insert(v);
        self.edges.insert(key, weight);
        Ok(())
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edges as `(u, v, weight)` with `u < v`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, F)> + '_ {
        self.edges.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    pub fn weight(&self, u: u32, v: u32) -> Option<F> {
        self.edges.get(&(u.min(v), u.max(v))).copied()
    }

    /// Adjacency sets, for clique enumeration.
    pub fn adjacency(&self) -> BTreeMap<u32, BTreeSet<u32>> {
        let mut adj: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
        for v in &self.vertices {
            adj.entry(*v).or_default();
        }
        for &(u, v) in self.edges.keys() {
            adj.entry(u).or_default().insert(v);
            adj.entry(v).or_default().insert(u);
        }
        adj
    }
}

/// Error while reading a snapshot or other line-oriented data file.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl FormatError {
    pub(crate) fn at(line: usize, msg: impl Into<String>) -> Self {
        FormatError::Parse {
            line,
            msg: msg.into(),
        }
    }
}

const SNAPSHOT_HEADER: &str = "time,u,v,weight";
const VERTICES_PREFIX: &str = "#vertices:";

/// Reads a multi-timestamp snapshot file. Timestamps must be grouped and
/// strictly increasing from block to block.
pub fn read_snapshots<F: Real>(reader: impl BufRead) -> Result<Vec<WeightedGraph<F>>, FormatError> {
    let mut graphs: Vec<WeightedGraph<F>> = Vec::new();
    let mut pending_vertices: Option<(usize, Vec<u32>)> = None;
    let mut saw_header = false;

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix(VERTICES_PREFIX) {
            let rest = rest.trim();
            // `#vertices: t: ids` carries its own time, `#vertices: ids` binds
            // to the next edge row.
            if let Some((time_part, ids_part)) = rest.split_once(':') {
                let t: u64 = time_part.trim().parse().map_err(|_| {
                    FormatError::at(lineno, format!("bad time in vertices line: {time_part:?}"))
                })?;
                let ids = parse_vertex_ids(ids_part, lineno)?;
                let g = graph_for_time(&mut graphs, t, lineno)?;
                for v in ids {
                    g.add_vertex(v);
                }
            } else {
                let ids = parse_vertex_ids(rest, lineno)?;
                if pending_vertices.is_some() {
                    return Err(FormatError::at(
                        lineno,
                        "vertices line without a following edge row",
                    ));
                }
                pending_vertices = Some((lineno, ids));
            }
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        if !saw_header {
            if line != SNAPSHOT_HEADER {
                return Err(FormatError::at(
                    lineno,
                    format!("expected header `{SNAPSHOT_HEADER}`, found {line:?}"),
                ));
            }
            saw_header = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(FormatError::at(
                lineno,
                format!("expected 4 fields `time,u,v,weight`, found {}", fields.len()),
            ));
        }
        let t: u64 = fields[0]
            .parse()
            .map_err(|_| FormatError::at(lineno, format!("bad time {:?}", fields[0])))?;
        let u: u32 = fields[1]
            .parse()
            .map_err(|_| FormatError::at(lineno, format!("bad vertex {:?}", fields[1])))?;
        let v: u32 = fields[2]
            .parse()
            .map_err(|_| FormatError::at(lineno, format!("bad vertex {:?}", fields[2])))?;
        let w: f64 = fields[3]
            .parse()
            .map_err(|_| FormatError::at(lineno, format!("bad weight {:?}", fields[3])))?;
        let w = F::from(w)
            .ok_or_else(|| FormatError::at(lineno, format!("weight {w} out of range")))?;
        let g = graph_for_time(&mut graphs, t, lineno)?;
        if let Some((_, ids)) = pending_vertices.take() {
            for id in ids {
                g.add_vertex(id);
            }
        }
        g.add_edge(u, v, w)
            .map_err(|e| FormatError::at(lineno, e.to_string()))?;
    }

    if let Some((lineno, _)) = pending_vertices {
        return Err(FormatError::at(
            lineno,
            "vertices line without a following edge row",
        ));
    }
    Ok(graphs)
}

fn graph_for_time<'a, F: Real>(
    graphs: &'a mut Vec<WeightedGraph<F>>,
    t: u64,
    lineno: usize,
) -> Result<&'a mut WeightedGraph<F>, FormatError> {
    match graphs.last().map(|g| g.timestamp) {
        Some(last) if t == last => {}
        Some(last) if t < last => {
            return Err(FormatError::at(
                lineno,
                format!("time {t} after time {last}: rows must be grouped by increasing time"),
            ));
        }
        _ => graphs.push(WeightedGraph::new(t)),
    }
    Ok(graphs.last_mut().expect("just pushed"))
}

fn parse_vertex_ids(s: &str, lineno: usize) -> Result<Vec<u32>, FormatError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| FormatError::at(lineno, format!("bad vertex id {:?}", p.trim())))
        })
        .collect()
}

/// Writes snapshots in the format accepted by [`read_snapshots`], one
/// vertices line and one edge row per edge for every tick.
pub fn write_snapshots<F: Real>(
    mut w: impl Write,
    graphs: &[WeightedGraph<F>],
) -> io::Result<()> {
    writeln!(w, "{SNAPSHOT_HEADER}")?;
    for g in graphs {
        let ids: Vec<String> = g.vertices().map(|v| v.to_string()).collect();
        writeln!(w, "{VERTICES_PREFIX} {}: {}", g.timestamp, ids.join(","))?;
        for (u, v, weight) in g.edges() {
            writeln!(
                w,
                "{},{},{},{}",
                g.timestamp,
                u,
                v,
                weight.to_f64().unwrap_or(f64::NAN)
            )?;
        }
    }
    Ok(())
}
