//! Weak Helstrom families: construction from a common point, and the
//! verification checks that tie a measurement to a Helstrom ratio.
//!
//! A family with ratio `p` pairs every state `b_i` with a conjugate `c_i` so
//! that `p_i b_i + (p − p_i) c_i` is the same point `r` for all `i`. Any such
//! family bounds the success probability of every measurement by `p`, and a
//! measurement with `Tr(τ_i Π_i) = 0` for every `i` attains it.

use serde::{Deserialize, Serialize};

use crate::bloch::BlochVector;
use crate::ensemble::WeightedEnsemble;
use crate::error::{Error, Result};
use crate::povm::Povm;
use crate::tolerance::{BOUND_SLACK, FAMILY_TOL, OPTIMALITY_TOL, PURITY_TOL, SATURATION_TOL};

/// The point `r = p_i b_i + (p − p_i) c_i` shared by every entry of a family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CommonPoint(pub BlochVector);

impl CommonPoint {
    pub fn vector(&self) -> BlochVector {
        self.0
    }
}

/// `c_i = (r − p_i b_i)/(p − p_i)`.
pub fn conjugates_from_common_point(
    ensemble: &WeightedEnsemble,
    p: f64,
    r: CommonPoint,
) -> Result<Vec<BlochVector>> {
    let max_prior = ensemble.max_prior();
    if p <= max_prior {
        return Err(Error::RatioNotAbovePriors { p, max_prior });
    }
    Ok(ensemble
        .entries()
        .iter()
        .map(|e| (r.0 - e.state.bloch() * e.prior) / (p - e.prior))
        .collect())
}

/// The common-point estimate contributed by entry `i`.
pub fn family_point(ensemble: &WeightedEnsemble, p: f64, i: usize, c: &BlochVector) -> BlochVector {
    let pi = ensemble.prior(i);
    ensemble.bloch(i) * pi + *c * (p - pi)
}

/// Largest disagreement between the per-entry common-point estimates.
pub fn family_residual(ensemble: &WeightedEnsemble, p: f64, conjugates: &[BlochVector]) -> f64 {
    let points: Vec<_> = conjugates
        .iter()
        .enumerate()
        .map(|(i, c)| family_point(ensemble, p, i, c))
        .collect();
    let mut worst = 0.0_f64;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            worst = worst.max(points[i].distance(&points[j]));
        }
    }
    worst
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyCheck {
    pub valid: bool,
    /// Max pairwise distance between common-point estimates.
    pub residual: f64,
    /// Largest conjugate norm.
    pub max_conjugate_norm: f64,
}

/// Checks the defining conditions of a weak Helstrom family.
///
/// Valid iff the common point agrees to `1e-9`, every conjugate lies in the
/// Bloch ball, and every `p̃_i = p_i/p` lies in `(0, 1]`.
pub fn verify_weak_family(
    ensemble: &WeightedEnsemble,
    p: f64,
    conjugates: &[BlochVector],
) -> FamilyCheck {
    if conjugates.len() != ensemble.len() || !p.is_finite() || p <= 0.0 {
        return FamilyCheck {
            valid: false,
            residual: f64::INFINITY,
            max_conjugate_norm: f64::INFINITY,
        };
    }
    let residual = family_residual(ensemble, p, conjugates);
    let max_conjugate_norm = conjugates.iter().map(BlochVector::norm).fold(0.0, f64::max);
    let ratios_ok = ensemble
        .entries()
        .iter()
        .all(|e| e.prior / p > 0.0 && e.prior / p <= 1.0 + SATURATION_TOL);
    let valid = residual <= FAMILY_TOL
        && max_conjugate_norm <= 1.0 + PURITY_TOL
        && ratios_ok
        && p <= 1.0 + 1e-12;
    FamilyCheck {
        valid,
        residual,
        max_conjugate_norm,
    }
}

/// `Σ p_i Tr(ρ_i Π_i)`.
pub fn success_probability(ensemble: &WeightedEnsemble, povm: &Povm) -> Result<f64> {
    if povm.len() != ensemble.len() {
        return Err(Error::LengthMismatch {
            what: "POVM",
            expected: ensemble.len(),
            got: povm.len(),
        });
    }
    Ok(ensemble
        .entries()
        .iter()
        .zip(povm.elements())
        .map(|(e, el)| e.prior * el.overlap(&e.state.bloch()))
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimalityCheck {
    pub optimal: bool,
    /// Max of `Tr(τ_i Π_i) = a_i + c_i·v_i` over nonzero elements.
    pub max_overlap: f64,
}

/// Checks `Tr(τ_i Π_i) = 0` for every nonzero element.
pub fn verify_optimality(povm: &Povm, conjugates: &[BlochVector]) -> OptimalityCheck {
    if povm.len() != conjugates.len() {
        return OptimalityCheck {
            optimal: false,
            max_overlap: f64::INFINITY,
        };
    }
    let max_overlap = povm
        .elements()
        .iter()
        .zip(conjugates)
        .filter(|(el, _)| !el.is_zero())
        .map(|(el, c)| el.overlap(c).abs())
        .fold(0.0, f64::max);
    OptimalityCheck {
        optimal: max_overlap <= OPTIMALITY_TOL,
        max_overlap,
    }
}

/// `P(povm) ≤ p + 1e-8` for a ratio `p` taken from a valid family.
pub fn helstrom_upper_bound_check(ensemble: &WeightedEnsemble, povm: &Povm, p: f64) -> bool {
    match success_probability(ensemble, povm) {
        Ok(s) => s <= p + BOUND_SLACK,
        Err(_) => false,
    }
}
