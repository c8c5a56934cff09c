//! Closed-form optima: two states, three states, and symmetric ensembles.

pub mod diagonal;
pub mod mirror;
pub mod platonic;
pub mod symmetric;
pub mod three_state;
pub mod two_state;

pub use diagonal::solve_diagonal;
pub use mirror::{solve_mirror_symmetric, MirrorRegime, MirrorSolution};
pub use platonic::{platonic_ensemble, PlatonicKind, PlatonicReference, PlatonicSolid};
pub use symmetric::{solve_cone, solve_cone_ensemble, solve_symmetric_shell};
pub use three_state::{
    enumerate_three_state, gram_identity_residual, interior_dots, lambda_triples,
    lambdas_three_state, solve_three_state, CandidateKind, CandidateReport, LambdaTriples,
    ThreeStateCoefficients, ThreeStateSolution,
};
pub use two_state::solve_two_state;

use crate::bloch::BlochVector;
use crate::certificate::HelstromCertificate;
use crate::ensemble::WeightedEnsemble;
use crate::error::Result;
use crate::family::CommonPoint;
use crate::povm::{Povm, PovmElement};
use crate::result::{DiscriminationResult, Method};
use crate::tolerance::SATURATION_TOL;

/// Always announce the most likely state, sharing `I` equally among tied
/// priors. Optimal exactly when `min_r f(r)` equals the largest prior.
pub fn guess_dominant(ensemble: &WeightedEnsemble, method: Method) -> Result<DiscriminationResult> {
    let n = ensemble.len();
    let p = ensemble.max_prior();
    let tied: Vec<usize> = (0..n)
        .filter(|&i| p - ensemble.prior(i) <= SATURATION_TOL)
        .collect();
    let share = 1.0 / tied.len() as f64;
    let mut elements = vec![PovmElement::ZERO; n];
    for &i in &tied {
        elements[i] = PovmElement {
            a: share,
            v: BlochVector::ZERO,
        };
    }
    let povm = Povm::new(elements)?;
    let r = CommonPoint(ensemble.bloch(tied[0]) * p);
    finish(ensemble, p, r, povm, method)
}

/// Attaches the certificate implied by `(p, r, povm)` and the KKT report.
pub(crate) fn finish(
    ensemble: &WeightedEnsemble,
    p: f64,
    r: CommonPoint,
    povm: Povm,
    method: Method,
) -> Result<DiscriminationResult> {
    let certificate = HelstromCertificate::from_measurement(ensemble, p, r, &povm)?;
    Ok(DiscriminationResult::new(
        ensemble,
        p,
        povm,
        certificate,
        method,
    ))
}
