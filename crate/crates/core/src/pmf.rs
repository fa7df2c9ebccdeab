//! Discrete probability distributions over the `2^n` integer labels of an
//! `n`-qubit register.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Allowed deviation of the total mass from one.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// Probability mass function over labels `0..2^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Pmf(Vec<f64>);

impl Pmf {
    /// Validates and wraps a probability vector. The length must be a power
    /// of two no smaller than 2.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        let len = probs.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidPmf(format!(
                "length {len} is not a power of two >= 2"
            )));
        }
        if let Some((i, p)) = probs
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_finite() || **p < 0.0)
        {
            return Err(Error::InvalidPmf(format!("entry {i} is {p}")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidPmf(format!("entries sum to {total}")));
        }
        Ok(Pmf(probs))
    }

    /// Caller guarantees the invariants (used for values produced by exact
    /// simulation, where the norm is preserved to rounding error).
    pub(crate) fn from_vec_unchecked(probs: Vec<f64>) -> Self {
        debug_assert!(Pmf::new(probs.clone()).is_ok(), "broken pmf {probs:?}");
        Pmf(probs)
    }

    pub fn uniform(n_qubits: usize) -> Self {
        let len = 1usize << n_qubits;
        Pmf(vec![1.0 / len as f64; len])
    }

    pub fn point_mass(n_qubits: usize, label: usize) -> Result<Self> {
        let len = 1usize << n_qubits;
        if label >= len {
            return Err(Error::InvalidPmf(format!(
                "label {label} outside 0..{len}"
            )));
        }
        let mut probs = vec![0.0; len];
        probs[label] = 1.0;
        Ok(Pmf(probs))
    }

    /// Empirical distribution of a histogram.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::InvalidPmf("histogram is empty".into()));
        }
        Pmf::new(counts.iter().map(|&c| c as f64 / total as f64).collect())
    }

    /// Empirical distribution of a label sample over `len` labels.
    pub fn from_labels(labels: &[usize], len: usize) -> Result<Self> {
        let mut counts = vec![0u64; len];
        for &label in labels {
            let slot = counts.get_mut(label).ok_or_else(|| {
                Error::InvalidPmf(format!("label {label} outside 0..{len}"))
            })?;
            *slot += 1;
        }
        Pmf::from_counts(&counts)
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn n_qubits(&self) -> usize {
        self.0.len().trailing_zeros() as usize
    }

    /// Largest-probability label, lowest index on ties.
    pub fn argmax(&self) -> usize {
        descending_order(&self.0)[0]
    }

    /// Labels ordered by descending probability, ties by ascending label.
    pub fn rank_order(&self) -> Vec<usize> {
        descending_order(&self.0)
    }

    pub fn mean(&self) -> f64 {
        self.0.iter().enumerate().map(|(i, p)| i as f64 * p).sum()
    }

    pub fn total_variation(&self, other: &Pmf) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(0.5
            * self
                .0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| (a - b).abs())
                .sum::<f64>())
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

impl TryFrom<Vec<f64>> for Pmf {
    type Error = Error;

    fn try_from(probs: Vec<f64>) -> Result<Self> {
        Pmf::new(probs)
    }
}

impl From<Pmf> for Vec<f64> {
    fn from(pmf: Pmf) -> Self {
        pmf.0
    }
}

/// Indices of `values` sorted by descending value; equal values keep
/// ascending index order.
pub fn descending_order(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    // sort_by is stable, so equal entries stay in index order
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    order
}
