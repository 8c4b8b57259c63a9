//! Persistent entropy of barcodes and time-indexed entropy traces.
//!
//! The entropy of a truncated barcode is the Shannon entropy of its
//! normalized bar lengths, in natural log. It is maximal (`ln n`) when all
//! bars have equal length and zero for a single bar. By default all
//! dimensions are pooled; a per-dimension variant is provided.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::graph::FormatError;
use crate::persistence::Barcode;
use crate::scalar::Real;

#[derive(Debug, Error, PartialEq)]
pub enum EntropyError {
    #[error("undefined entropy: barcode empty or all bars zero-length")]
    Undefined,
    #[error("undefined entropy at time {0}: barcode empty or all bars zero-length")]
    UndefinedAt(u64),
    #[error("barcode still has infinite intervals; truncate it first")]
    InfiniteIntervals,
    #[error("timestamps not strictly increasing at {0}")]
    NonIncreasingTime(u64),
}

/// Persistent entropy of a truncated barcode, pooling all dimensions.
pub fn persistent_entropy<F: Real>(b: &Barcode<F>) -> Result<F, EntropyError> {
    entropy_of_lengths(bar_lengths(b, None)?)
}

/// Persistent entropy restricted to intervals of one homology dimension.
pub fn persistent_entropy_of_dim<F: Real>(b: &Barcode<F>, dim: usize) -> Result<F, EntropyError> {
    entropy_of_lengths(bar_lengths(b, Some(dim))?)
}

/// Entropy in an arbitrary log base (the natural-log value divided by
/// `ln base`).
pub fn persistent_entropy_in_base<F: Real>(b: &Barcode<F>, base: F) -> Result<F, EntropyError> {
    Ok(persistent_entropy(b)? / base.ln())
}

fn bar_lengths<F: Real>(b: &Barcode<F>, dim: Option<usize>) -> Result<Vec<F>, EntropyError> {
    let mut lengths = Vec::with_capacity(b.intervals.len());
    for i in &b.intervals {
        if dim.is_some_and(|d| d != i.dim) {
            continue;
        }
        match i.length() {
            Some(l) => lengths.push(l),
            None => return Err(EntropyError::InfiniteIntervals),
        }
    }
    Ok(lengths)
}

fn entropy_of_lengths<F: Real>(lengths: Vec<F>) -> Result<F, EntropyError> {
    let total: F = lengths.iter().copied().sum();
    if !(total > F::zero()) {
        return Err(EntropyError::Undefined);
    }
    let mut h = F::zero();
    for l in lengths {
        if l > F::zero() {
            let p = l / total;
            h = h - p * p.ln();
        }
    }
    Ok(h)
}

/// Persistent entropy trace: per-tick entropy observations with strictly
/// increasing timestamps.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Pet<F = f64> {
    observations: Vec<(u64, F)>,
}

impl<F: Real> Pet<F> {
    pub fn new() -> Self {
        Self {
            observations: Vec::new(),
        }
    }

    pub fn from_observations(obs: Vec<(u64, F)>) -> Result<Self, EntropyError> {
        for w in obs.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(EntropyError::NonIncreasingTime(w[1].0));
            }
        }
        Ok(Self { observations: obs })
    }

    pub fn push(&mut self, t: u64, h: F) -> Result<(), EntropyError> {
        if self.observations.last().is_some_and(|&(last, _)| t <= last) {
            return Err(EntropyError::NonIncreasingTime(t));
        }
        self.observations.push((t, h));
        Ok(())
    }

    pub fn observations(&self) -> &[(u64, F)] {
        &self.observations
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    pub fn max_entropy(&self) -> F {
        self.observations
            .iter()
            .map(|&(_, h)| h)
            .fold(F::zero(), F::max)
    }
}

/// Discrete derivative series; one value per consecutive observation pair.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeSeries<F = f64> {
    pub values: Vec<(u64, F)>,
}

/// Entropy of each (timestamp, truncated barcode) pair, as a PET.
pub fn entropy_series<F: Real>(
    barcodes: impl IntoIterator<Item = (u64, Barcode<F>)>,
) -> Result<Pet<F>, EntropyError> {
    let mut pet = Pet::new();
    for (t, b) in barcodes {
        let h = persistent_entropy(&b).map_err(|e| match e {
            EntropyError::Undefined => EntropyError::UndefinedAt(t),
            other => other,
        })?;
        pet.push(t, h)?;
    }
    Ok(pet)
}

/// Difference quotients between consecutive observations; defined from the
/// second observation onward, so the series is one shorter than the PET.
pub fn derivative<F: Real>(pet: &Pet<F>) -> DerivativeSeries<F> {
    let values = pet
        .observations()
        .windows(2)
        .map(|w| {
            let (t0, h0) = w[0];
            let (t1, h1) = w[1];
            let dt = F::from(t1 - t0).expect("tick delta fits in scalar");
            (t1, (h1 - h0) / dt)
        })
        .collect();
    DerivativeSeries { values }
}

/// Writes a PET as CSV `time,entropy`.
pub fn write_pet<F: Real>(mut w: impl Write, pet: &Pet<F>) -> io::Result<()> {
    writeln!(w, "time,entropy")?;
    for &(t, h) in pet.observations() {
        writeln!(w, "{},{}", t, h.to_f64().unwrap_or(f64::NAN))?;
    }
    Ok(())
}

/// Reads a PET from CSV `time,entropy`.
pub fn read_pet<F: Real>(reader: impl BufRead) -> Result<Pet<F>, FormatError> {
    let mut pet = Pet::new();
    let mut saw_header = false;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !saw_header {
            if line != "time,entropy" {
                return Err(FormatError::at(
                    lineno,
                    format!("expected header `time,entropy`, found {line:?}"),
                ));
            }
            saw_header = true;
            continue;
        }
        let (t, h) = line
            .split_once(',')
            .ok_or_else(|| FormatError::at(lineno, "expected `time,entropy`"))?;
        let t: u64 = t
            .trim()
            .parse()
            .map_err(|_| FormatError::at(lineno, format!("bad time {t:?}")))?;
        let h: f64 = h
            .trim()
            .parse()
            .map_err(|_| FormatError::at(lineno, format!("bad entropy {h:?}")))?;
        let h = F::from(h)
            .ok_or_else(|| FormatError::at(lineno, format!("entropy {h} out of range")))?;
        pet.push(t, h)
            .map_err(|e| FormatError::at(lineno, e.to_string()))?;
    }
    Ok(pet)
}

/// Writes a derivative series as CSV `time,dentropy`.
pub fn write_derivative<F: Real>(mut w: impl Write, d: &DerivativeSeries<F>) -> io::Result<()> {
    writeln!(w, "time,dentropy")?;
    for &(t, v) in &d.values {
        writeln!(w, "{},{}", t, v.to_f64().unwrap_or(f64::NAN))?;
    }
    Ok(())
}
