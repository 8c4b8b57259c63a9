//! Persistent homology over the two-element field by column reduction of the
//! boundary matrix.
//!
//! Plain left-to-right reduction with a pivot map; no clearing or twist
//! tricks, the complexes here have at most a few hundred simplices. Columns
//! are sorted index vectors and column addition is symmetric difference.
//! Generators (the accumulated reducing chain) are kept only for classes
//! that never die, matching the usual barcode report shape; they are
//! informative, not contractual.

use std::collections::HashMap;
use std::io::{self, Write};

use thiserror::Error;

use crate::filtration::Filtration;
use crate::scalar::Real;

#[derive(Debug, Error, PartialEq)]
pub enum PersistenceError {
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
}

/// One barcode interval `[birth, death)`; `death = None` means the class
/// survives the whole filtration.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval<F = f64> {
    pub dim: usize,
    pub birth: F,
    pub death: Option<F>,
    /// Witness simplices (vertex lists) for infinite classes.
    pub generator: Option<Vec<Vec<u32>>>,
}

impl<F: Real> Interval<F> {
    pub fn finite(dim: usize, birth: F, death: F) -> Self {
        Self {
            dim,
            birth,
            death: Some(death),
            generator: None,
        }
    }

    pub fn infinite(dim: usize, birth: F) -> Self {
        Self {
            dim,
            birth,
            death: None,
            generator: None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.death.is_none()
    }

    /// Bar length; `None` while the death is unresolved.
    pub fn length(&self) -> Option<F> {
        self.death.map(|d| d - self.birth)
    }

    /// Whether the class is alive at filter value `t` (birth <= t < death).
    pub fn contains(&self, t: F) -> bool {
        self.birth <= t && self.death.map_or(true, |d| t < d)
    }
}

/// Multiset of intervals together with the source filtration's `t_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct Barcode<F = f64> {
    pub intervals: Vec<Interval<F>>,
    pub t_max: F,
}

impl<F: Real> Barcode<F> {
    /// Number of classes of dimension `dim` alive at `t`.
    pub fn betti_at(&self, dim: usize, t: F) -> usize {
        self.intervals
            .iter()
            .filter(|i| i.dim == dim && i.contains(t))
            .count()
    }

    pub fn has_infinite(&self) -> bool {
        self.intervals.iter().any(Interval::is_infinite)
    }

    /// Replaces every interval `[x, inf)` by `[x, t_max + 1)`.
    pub fn truncated(&self) -> Barcode<F> {
        let m = self.t_max + F::one();
        let intervals = self
            .intervals
            .iter()
            .map(|i| Interval {
                death: Some(i.death.unwrap_or(m)),
                ..i.clone()
            })
            .collect();
        Barcode {
            intervals,
            t_max: self.t_max,
        }
    }
}

/// Computes the persistence barcode of `f` for homology dimensions
/// `0..=max_hom_dim`. Unpaired classes become infinite intervals;
/// zero-length pairs are dropped.
pub fn compute_persistence<F: Real>(
    f: &Filtration<F>,
    max_hom_dim: usize,
) -> Result<Barcode<F>, PersistenceError> {
    f.validate()
        .map_err(|e| PersistenceError::InvalidFiltration(e.to_string()))?;

    let simplices = f.simplices();
    let n = simplices.len();
    let mut position: HashMap<&[u32], usize> = HashMap::with_capacity(n);
    for (i, s) in simplices.iter().enumerate() {
        position.insert(s.vertices(), i);
    }

    // reduced[j]: boundary column of simplex j as sorted positions
    // chain[j]:   the chain accumulated on top of simplex j (V column)
    let mut reduced: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut chain: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut pivot_owner: Vec<Option<usize>> = vec![None; n];
    let mut paired = vec![false; n];
    let mut intervals = Vec::new();

    for j in 0..n {
        let mut column: Vec<usize> = simplices[j]
            .facets()
            .map(|facet| position[facet.as_slice()])
            .collect();
        column.sort_unstable();
        let mut v_col = vec![j];

        while let Some(&low) = column.last() {
            match pivot_owner[low] {
                Some(owner) => {
                    column = xor_sorted(&column, &reduced[owner]);
                    v_col = xor_sorted(&v_col, &chain[owner]);
                }
                None => break,
            }
        }

        if let Some(&low) = column.last() {
            pivot_owner[low] = Some(j);
            paired[low] = true;
            paired[j] = true;
            let dim = simplices[low].dim();
            if dim <= max_hom_dim {
                let birth = simplices[low].filter_value();
                let death = simplices[j].filter_value();
                if birth < death {
                    intervals.push(Interval::finite(dim, birth, death));
                }
            }
        }
        reduced.push(column);
        chain.push(v_col);
    }

    for j in 0..n {
        if paired[j] || !reduced[j].is_empty() {
            continue;
        }
        let dim = simplices[j].dim();
        if dim > max_hom_dim {
            continue;
        }
        let generator = chain[j]
            .iter()
            .map(|&i| simplices[i].vertices().to_vec())
            .collect();
        intervals.push(Interval {
            dim,
            birth: simplices[j].filter_value(),
            death: None,
            generator: Some(generator),
        });
    }

    intervals.sort_by(|a, b| {
        a.dim
            .cmp(&b.dim)
            .then(a.birth.partial_cmp(&b.birth).expect("finite births"))
            .then_with(|| match (a.death, b.death) {
                (Some(x), Some(y)) => x.partial_cmp(&y).expect("finite deaths"),
                (Some(_), None) => std::cmp::Ordering::Less,
                (None, Some(_)) => std::cmp::Ordering::Greater,
                (None, None) => std::cmp::Ordering::Equal,
            })
    });

    Ok(Barcode {
        intervals,
        t_max: f.t_max(),
    })
}

/// Symmetric difference of two sorted index vectors.
fn xor_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn fmt_value<F: Real>(v: F) -> String {
    format!("{}", v.to_f64().unwrap_or(f64::NAN))
}

/// Text report, one `dim birth death {generator}` line per interval with
/// `inf` for open deaths.
pub fn write_barcode_text<F: Real>(mut w: impl Write, b: &Barcode<F>) -> io::Result<()> {
    for i in &b.intervals {
        let death = i.death.map_or_else(|| "inf".to_string(), fmt_value);
        write!(w, "{} {} {}", i.dim, fmt_value(i.birth), death)?;
        if let Some(gen) = &i.generator {
            let parts: Vec<String> = gen
                .iter()
                .map(|s| {
                    let vs: Vec<String> = s.iter().map(u32::to_string).collect();
                    format!("[{}]", vs.join(","))
                })
                .collect();
            write!(w, " {{{}}}", parts.join(","))?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// CSV report `dim,birth,death` with `inf` for open deaths.
pub fn write_barcode_csv<F: Real>(mut w: impl Write, b: &Barcode<F>) -> io::Result<()> {
    writeln!(w, "dim,birth,death")?;
    for i in &b.intervals {
        let death = i.death.map_or_else(|| "inf".to_string(), fmt_value);
        writeln!(w, "{},{},{}", i.dim, fmt_value(i.birth), death)?;
    }
    Ok(())
}
