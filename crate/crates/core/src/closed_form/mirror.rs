//! Two states mirrored about `z` plus `|0⟩`: priors `(p₁, p₁, 1 − 2p₁)` and
//! Bloch vectors `(±sin2θ, 0, cos2θ)`, `(0, 0, 1)`.

use serde::{Deserialize, Serialize};

use crate::bloch::BlochVector;
use crate::closed_form::three_state::{enumerate_three_state, CandidateKind};
use crate::ensemble::WeightedEnsemble;
use crate::error::{Error, Result};
use crate::result::{DiscriminationResult, Method};

/// Agreement needed to attribute the optimum to one of the two formulas.
const REGIME_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MirrorRegime {
    /// Mirrored pair pure and antipodal, `Π₃ = 0`: `p = p₁(1 + sin2θ)`.
    Pair,
    /// All three conjugates pure.
    Triple,
    /// Both formulas agree.
    Crossover,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MirrorSolution {
    pub result: DiscriminationResult,
    pub regime: MirrorRegime,
    /// `1/(2 + cosθ(sinθ + cosθ))`.
    pub threshold: f64,
    pub pair_value: f64,
    pub triple_value: f64,
    /// Which candidate the general three-state solver selected.
    pub candidate: CandidateKind,
}

pub fn mirror_ensemble(theta: f64, p1: f64) -> Result<WeightedEnsemble> {
    if !(theta > 0.0 && theta < std::f64::consts::FRAC_PI_2) {
        return Err(Error::Parameter(format!("θ = {theta} outside (0, π/2)")));
    }
    if !(p1 > 0.0 && p1 < 0.5) {
        return Err(Error::Parameter(format!("p1 = {p1} outside (0, ½)")));
    }
    let (s, c) = (2.0 * theta).sin_cos();
    WeightedEnsemble::new(&[
        (p1, BlochVector::new(s, 0.0, c)),
        (p1, BlochVector::new(-s, 0.0, c)),
        (1.0 - 2.0 * p1, BlochVector::Z),
    ])
}

pub fn mirror_threshold(theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    1.0 / (2.0 + c * (s + c))
}

/// `p₁(1 + sin2θ)`.
pub fn mirror_pair_value(theta: f64, p1: f64) -> f64 {
    p1 * (1.0 + (2.0 * theta).sin())
}

/// `(1−2p₁)(p₁sin²θ + 1 − 2p₁ − p₁cos²θ)/(1 − 2p₁ − p₁cos²θ)`.
pub fn mirror_triple_value(theta: f64, p1: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let p3 = 1.0 - 2.0 * p1;
    p3 * (p1 * s * s + p3 - p1 * c * c) / (p3 - p1 * c * c)
}

/// Solves through the general three-state enumeration and labels the regime
/// by which closed-form value the validated optimum reproduces.
pub fn solve_mirror_symmetric(theta: f64, p1: f64) -> Result<MirrorSolution> {
    let ensemble = mirror_ensemble(theta, p1)?;
    let solution = enumerate_three_state(&ensemble)?;
    let p = solution.result.p_opt;
    let pair_value = mirror_pair_value(theta, p1);
    let triple_value = mirror_triple_value(theta, p1);
    let regime = match (
        (p - pair_value).abs() <= REGIME_TOL,
        (p - triple_value).abs() <= REGIME_TOL,
    ) {
        (true, true) => MirrorRegime::Crossover,
        (true, false) => MirrorRegime::Pair,
        (false, true) => MirrorRegime::Triple,
        (false, false) => {
            return Err(Error::Infeasible(format!(
                "optimum {p} matches neither {pair_value} nor {triple_value}"
            )))
        }
    };
    let mut result = solution.result;
    result.method = Method::MirrorSymmetric;
    Ok(MirrorSolution {
        result,
        regime,
        threshold: mirror_threshold(theta),
        pair_value,
        triple_value,
        candidate: solution.chosen,
    })
}
