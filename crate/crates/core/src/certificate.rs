use serde::{Deserialize, Serialize};

use crate::bloch::BlochVector;
use crate::ensemble::WeightedEnsemble;
use crate::error::{Error, Result};
use crate::family::CommonPoint;
use crate::povm::Povm;
use crate::tolerance::{PURITY_TOL, SATURATION_TOL};

/// Dual certificate for a minimum-error solution: the Helstrom ratio, the
/// family's common point and conjugates, and the inequality multipliers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HelstromCertificate {
    pub p: f64,
    pub r: CommonPoint,
    pub conjugates: Vec<BlochVector>,
    pub scaled_priors: Vec<f64>,
    pub lambdas: Vec<f64>,
    pub pure_mask: Vec<bool>,
    /// `p = p_i`: the conjugate has zero weight and is left at the origin.
    pub saturated: Vec<bool>,
}

impl HelstromCertificate {
    pub fn new(
        ensemble: &WeightedEnsemble,
        p: f64,
        r: CommonPoint,
        conjugates: Vec<BlochVector>,
        lambdas: Vec<f64>,
    ) -> Result<Self> {
        let n = ensemble.len();
        for (what, got) in [("conjugates", conjugates.len()), ("lambdas", lambdas.len())] {
            if got != n {
                return Err(Error::LengthMismatch {
                    what,
                    expected: n,
                    got,
                });
            }
        }
        let saturated: Vec<bool> = ensemble
            .entries()
            .iter()
            .map(|e| p - e.prior <= SATURATION_TOL)
            .collect();
        let pure_mask = conjugates
            .iter()
            .zip(&saturated)
            .map(|(c, &s)| !s && c.norm() >= 1.0 - PURITY_TOL)
            .collect();
        Ok(HelstromCertificate {
            p,
            r,
            scaled_priors: ensemble.entries().iter().map(|e| e.prior / p).collect(),
            conjugates,
            lambdas,
            pure_mask,
            saturated,
        })
    }

    /// Builds the certificate implied by a measurement: conjugates from the
    /// common point and `λ_j = tr(Π_j)(p − p_j)/(4p)`.
    pub fn from_measurement(
        ensemble: &WeightedEnsemble,
        p: f64,
        r: CommonPoint,
        povm: &Povm,
    ) -> Result<Self> {
        let conjugates = conjugates_allowing_saturation(ensemble, p, r);
        let lambdas = crate::kkt::lambdas_from_povm(ensemble, p, povm)?;
        HelstromCertificate::new(ensemble, p, r, conjugates, lambdas)
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated.iter().any(|&s| s)
    }

    pub fn pure_count(&self) -> usize {
        self.pure_mask.iter().filter(|&&m| m).count()
    }

    pub fn max_lambda(&self) -> f64 {
        self.lambdas
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Conjugates from a common point; saturated entries get the zero vector and
/// conjugates a hair outside the unit ball are pulled back onto it.
pub fn conjugates_allowing_saturation(
    ensemble: &WeightedEnsemble,
    p: f64,
    r: CommonPoint,
) -> Vec<BlochVector> {
    ensemble
        .entries()
        .iter()
        .map(|e| {
            let gap = p - e.prior;
            if gap <= SATURATION_TOL {
                BlochVector::ZERO
            } else {
                clamp_to_ball((r.0 - e.state.bloch() * e.prior) / gap)
            }
        })
        .collect()
}

/// Rescales vectors within `PURITY_TOL` outside the unit ball onto it.
pub fn clamp_to_ball(c: BlochVector) -> BlochVector {
    let n = c.norm();
    if n > 1.0 && n <= 1.0 + PURITY_TOL {
        c / n
    } else {
        c
    }
}
