use crate::closed_form::{finish, guess_dominant};
use crate::ensemble::WeightedEnsemble;
use crate::error::{Error, Result};
use crate::family::CommonPoint;
use crate::povm::{Povm, PovmElement};
use crate::result::{DiscriminationResult, Method};

/// Helstrom optimum for two states: `p = ½(1 + |p₂b₂ − p₁b₁|)` with the
/// projective measurement along `c₁ = (p₂b₂ − p₁b₁)/|p₂b₂ − p₁b₁|`.
///
/// When `|p₂b₂ − p₁b₁| < |p₁ − p₂|` the larger prior dominates and the
/// optimum is to guess it. Equal priors on identical states give `{½I, ½I}`.
pub fn solve_two_state(ensemble: &WeightedEnsemble) -> Result<DiscriminationResult> {
    if ensemble.len() != 2 {
        return Err(Error::WrongShape(format!(
            "two-state solver got {} states",
            ensemble.len()
        )));
    }
    let (p1, p2) = (ensemble.prior(0), ensemble.prior(1));
    let q = ensemble.weighted_points();
    let diff = q[1] - q[0];
    let d = diff.norm();
    if d == 0.0 || d < (p1 - p2).abs() {
        return guess_dominant(ensemble, Method::TwoState);
    }
    let p = 0.5 * (1.0 + d);
    let c1 = diff / d;
    let povm = Povm::new(vec![
        PovmElement::scaled_projector(1.0, -c1),
        PovmElement::scaled_projector(1.0, c1),
    ])?;
    let r = CommonPoint(q[0] + c1 * (p - p1));
    finish(ensemble, p, r, povm, Method::TwoState)
}
