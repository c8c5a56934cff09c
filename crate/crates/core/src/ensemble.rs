use serde::{Deserialize, Serialize};

use crate::bloch::{BlochVector, QubitState};
use crate::error::{Error, Result};
use crate::tolerance::PRIOR_SUM_TOL;

/// One `(prior, state)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub prior: f64,
    pub state: QubitState,
}

/// A prior-weighted list of qubit states, kept in input order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, BlochVector)>", into = "Vec<(f64, BlochVector)>")]
pub struct WeightedEnsemble {
    entries: Vec<Entry>,
}

impl WeightedEnsemble {
    /// Strict validation: priors in (0, 1) summing to one, states in the ball.
    pub fn new(raw: &[(f64, BlochVector)]) -> Result<Self> {
        validate_ensemble(raw, false)
    }

    /// Equal priors `1/N` on the given Bloch vectors.
    pub fn uniform(blochs: &[BlochVector]) -> Result<Self> {
        let n = blochs.len();
        let raw: Vec<_> = blochs.iter().map(|b| (1.0 / n as f64, *b)).collect();
        validate_ensemble(&raw, true)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn prior(&self, i: usize) -> f64 {
        self.entries[i].prior
    }

    pub fn bloch(&self, i: usize) -> BlochVector {
        self.entries[i].state.bloch()
    }

    pub fn priors(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.prior).collect()
    }

    pub fn blochs(&self) -> Vec<BlochVector> {
        self.entries.iter().map(|e| e.state.bloch()).collect()
    }

    /// The prior-weighted points `p_i b_i`.
    pub fn weighted_points(&self) -> Vec<BlochVector> {
        self.entries
            .iter()
            .map(|e| e.state.bloch() * e.prior)
            .collect()
    }

    pub fn max_prior(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.prior)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Reorders entries; `order[k]` is the old index placed at position `k`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.len() {
            return Err(Error::LengthMismatch {
                what: "permutation",
                expected: self.len(),
                got: order.len(),
            });
        }
        let entries = order.iter().map(|&k| self.entries[k]).collect();
        Ok(WeightedEnsemble { entries })
    }

    pub fn to_raw(&self) -> Vec<(f64, BlochVector)> {
        self.entries
            .iter()
            .map(|e| (e.prior, e.state.bloch()))
            .collect()
    }
}

impl TryFrom<Vec<(f64, BlochVector)>> for WeightedEnsemble {
    type Error = Error;
    fn try_from(raw: Vec<(f64, BlochVector)>) -> Result<Self> {
        WeightedEnsemble::new(&raw)
    }
}

impl From<WeightedEnsemble> for Vec<(f64, BlochVector)> {
    fn from(e: WeightedEnsemble) -> Self {
        e.to_raw()
    }
}

/// Validates raw `(prior, bloch)` pairs.
///
/// With `renormalize`, priors are divided by their sum before the range
/// check; without it, a sum off by more than `1e-12` is rejected.
pub fn validate_ensemble(
    raw: &[(f64, BlochVector)],
    renormalize: bool,
) -> Result<WeightedEnsemble> {
    if raw.len() < 2 {
        return Err(Error::TooFewStates(raw.len()));
    }
    for (i, (p, b)) in raw.iter().enumerate() {
        if !p.is_finite() {
            return Err(Error::NonFinite(format!("prior of state {i}")));
        }
        if !b.is_finite() {
            return Err(Error::NonFinite(format!("Bloch vector of state {i}")));
        }
    }
    let sum: f64 = raw.iter().map(|(p, _)| p).sum();
    let scale = if renormalize {
        if sum <= 0.0 {
            return Err(Error::PriorSum { sum });
        }
        1.0 / sum
    } else {
        if (sum - 1.0).abs() > PRIOR_SUM_TOL {
            return Err(Error::PriorSum { sum });
        }
        1.0
    };
    let mut entries = Vec::with_capacity(raw.len());
    for (index, (p, b)) in raw.iter().enumerate() {
        let prior = p * scale;
        if !(prior > 0.0 && prior < 1.0) {
            return Err(Error::PriorOutOfRange { index, prior });
        }
        entries.push(Entry {
            prior,
            state: QubitState::new(*b)?,
        });
    }
    Ok(WeightedEnsemble { entries })
}
