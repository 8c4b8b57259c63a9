//! Filtered clique (flag) complexes built from weighted graphs.
//!
//! Vertices enter at filter value 0, each edge at a value derived from its
//! weight, and each k-clique at the maximum filter value of its edges. Under
//! the rank orders the edge value is the 1-based rank of its weight among the
//! distinct weights; descending rank puts the heaviest edge first, so
//! stronger interactions appear earlier in the filtration.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::WeightedGraph;
use crate::scalar::{real, Real};

#[derive(Debug, Error, PartialEq)]
pub enum FiltrationError {
    #[error("empty graph")]
    EmptyGraph,
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("invalid filtration: {0}")]
    Invalid(String),
}

/// How edge weights map to filter values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightOrder {
    /// Heaviest weight gets rank 1.
    #[default]
    DescendingRank,
    /// Lightest weight gets rank 1.
    AscendingRank,
    /// The weight itself is the filter value.
    RawWeight,
}

impl WeightOrder {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "descending-rank" => Some(WeightOrder::DescendingRank),
            "ascending-rank" => Some(WeightOrder::AscendingRank),
            "raw-weight" => Some(WeightOrder::RawWeight),
            _ => None,
        }
    }
}

/// A simplex with its filter value; vertices are strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex<F = f64> {
    vertices: Vec<u32>,
    filter_value: F,
}

impl<F: Real> Simplex<F> {
    pub fn new(vertices: Vec<u32>, filter_value: F) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Self {
            vertices,
            filter_value,
        }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn filter_value(&self) -> F {
        self.filter_value
    }

    /// Facets (codimension-1 faces), empty for vertices.
    pub fn facets(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        let n = self.vertices.len();
        (0..n).filter(move |_| n > 1).map(move |skip| {
            self.vertices
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, v)| *v)
                .collect()
        })
    }
}

/// Simplices in filtration order: by filter value, then dimension, then
/// lexicographic vertex list. Faces always precede cofaces.
#[derive(Debug, Clone, PartialEq)]
pub struct Filtration<F = f64> {
    simplices: Vec<Simplex<F>>,
    t_max: F,
}

impl<F: Real> Filtration<F> {
    /// Wraps an explicit simplex list after checking the filtration order
    /// and face closure.
    pub fn from_simplices(mut simplices: Vec<Simplex<F>>) -> Result<Self, FiltrationError> {
        sort_simplices(&mut simplices);
        let f = Self::from_sorted(simplices);
        f.validate()?;
        Ok(f)
    }

    fn from_sorted(simplices: Vec<Simplex<F>>) -> Self {
        let t_max = simplices
            .iter()
            .map(|s| s.filter_value)
            .fold(F::zero(), F::max);
        Self { simplices, t_max }
    }

    pub fn simplices(&self) -> &[Simplex<F>] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Maximal filter value (0 for a vertex-only complex).
    pub fn t_max(&self) -> F {
        self.t_max
    }

    /// Largest simplex dimension present.
    pub fn max_dim(&self) -> usize {
        self.simplices.iter().map(Simplex::dim).max().unwrap_or(0)
    }

    /// Checks that every facet of every simplex is present with a filter
    /// value no larger than its cofacet's, and that the order is valid.
    pub fn validate(&self) -> Result<(), FiltrationError> {
        use std::collections::HashMap;
        let mut seen: HashMap<&[u32], F> = HashMap::with_capacity(self.simplices.len());
        for (i, s) in self.simplices.iter().enumerate() {
            if s.vertices.is_empty() || s.vertices.windows(2).any(|w| w[0] >= w[1]) {
                return Err(FiltrationError::Invalid(format!(
                    "simplex {i} vertex list not strictly increasing"
                )));
            }
            if i > 0 {
                let prev = &self.simplices[i - 1];
                let key = |s: &Simplex<F>| (s.filter_value, s.dim());
                if key(prev).partial_cmp(&key(s)) == Some(std::cmp::Ordering::Greater) {
                    return Err(FiltrationError::Invalid(format!(
                        "simplices {} and {} out of filtration order",
                        i - 1,
                        i
                    )));
                }
            }
            for facet in s.facets() {
                match seen.get(facet.as_slice()) {
                    Some(&fv) if fv <= s.filter_value => {}
                    Some(_) => {
                        return Err(FiltrationError::Invalid(format!(
                            "facet {facet:?} enters after simplex {:?}",
                            s.vertices
                        )))
                    }
                    None => {
                        return Err(FiltrationError::Invalid(format!(
                            "facet {facet:?} of {:?} missing or not before it",
                            s.vertices
                        )))
                    }
                }
            }
            seen.insert(&s.vertices, s.filter_value);
        }
        Ok(())
    }
}

fn sort_simplices<F: Real>(simplices: &mut [Simplex<F>]) {
    simplices.sort_by(|a, b| {
        a.filter_value
            .partial_cmp(&b.filter_value)
            .expect("finite filter values")
            .then(a.dim().cmp(&b.dim()))
            .then(a.vertices.cmp(&b.vertices))
    });
}

/// Builds the filtered clique complex of `g` with simplices up to dimension
/// `max_dim + 1`, so that homology is computable up to dimension `max_dim`.
pub fn build_clique_filtration<F: Real>(
    g: &WeightedGraph<F>,
    max_dim: usize,
    order: WeightOrder,
) -> Result<Filtration<F>, FiltrationError> {
    if g.is_empty() {
        return Err(FiltrationError::EmptyGraph);
    }
    if !(1..=2).contains(&max_dim) {
        return Err(FiltrationError::UnsupportedDimension(max_dim));
    }

    let edge_value = edge_value_fn(g, order);
    let mut simplices: Vec<Simplex<F>> = Vec::new();
    for v in g.vertices() {
        simplices.push(Simplex::new(vec![v], F::zero()));
    }
    for (u, v, w) in g.edges() {
        simplices.push(Simplex::new(vec![u, v], edge_value(w)));
    }
    // A clique enters once its last edge has entered.
    for k in 3..=(max_dim + 2) {
        for clique in enumerate_cliques(g, k) {
            let mut value = F::zero();
            for i in 0..clique.len() {
                for j in (i + 1)..clique.len() {
                    let w = g
                        .weight(clique[i], clique[j])
                        .expect("clique edges exist");
                    value = value.max(edge_value(w));
                }
            }
            simplices.push(Simplex::new(clique, value));
        }
    }
    sort_simplices(&mut simplices);
    Ok(Filtration::from_sorted(simplices))
}

fn edge_value_fn<F: Real>(g: &WeightedGraph<F>, order: WeightOrder) -> impl Fn(F) -> F {
    let mut distinct: Vec<F> = g.edges().map(|(_, _, w)| w).collect();
    distinct.sort_by(|a, b| a.partial_cmp(b).expect("finite weights"));
    distinct.dedup();
    move |w: F| match order {
        WeightOrder::RawWeight => w,
        WeightOrder::AscendingRank => {
            let idx = distinct.partition_point(|&x| x < w);
            real::<F>((idx + 1) as f64)
        }
        WeightOrder::DescendingRank => {
            let idx = distinct.partition_point(|&x| x < w);
            real::<F>((distinct.len() - idx) as f64)
        }
    }
}

/// All k-cliques of `g` (`k >= 3`), each as a sorted vertex list.
pub fn enumerate_cliques<F: Real>(g: &WeightedGraph<F>, k: usize) -> Vec<Vec<u32>> {
    assert!(k >= 3, "clique enumeration is for k >= 3");
    let adj = g.adjacency();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    for (&v, neighbors) in &adj {
        current.push(v);
        let candidates: BTreeSet<u32> = neighbors.range((v + 1)..).copied().collect();
        extend_clique(&adj, &mut current, &candidates, k, &mut out);
        current.pop();
    }
    out
}

fn extend_clique(
    adj: &std::collections::BTreeMap<u32, BTreeSet<u32>>,
    current: &mut Vec<u32>,
    candidates: &BTreeSet<u32>,
    k: usize,
    out: &mut Vec<Vec<u32>>,
) {
    for &v in candidates {
        current.push(v);
        if current.len() == k {
            out.push(current.clone());
        } else {
            let next: BTreeSet<u32> = candidates
                .intersection(&adj[&v])
                .copied()
                .filter(|&w| w > v)
                .collect();
            extend_clique(adj, current, &next, k, out);
        }
        current.pop();
    }
}
