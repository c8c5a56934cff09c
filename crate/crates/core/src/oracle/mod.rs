//! Independent numerical solver used to arbitrate every closed form.

pub mod classical;
pub mod minimax;
pub mod recover;
pub mod sampling;

pub use classical::classical_diagonal_oracle;
pub use minimax::{minimax_common_point, MinimaxSolution, Objective};
pub use recover::{recover_povm, Recovery};
pub use sampling::{random_povm, random_povm_sample};

use crate::ensemble::WeightedEnsemble;
use crate::error::{Error, Result};
use crate::result::{DiscriminationResult, Method};

pub const DEFAULT_MAX_ITERS: usize = 2000;

/// Minimax solve plus measurement recovery, as a full result.
pub fn solve_oracle(
    ensemble: &WeightedEnsemble,
    tol: f64,
    seed: u64,
) -> Result<DiscriminationResult> {
    let solution = minimax_common_point(ensemble, tol, DEFAULT_MAX_ITERS, seed);
    if !solution.converged {
        return Err(Error::NotConverged {
            gap: solution.gap,
            iterations: solution.iterations,
        });
    }
    let rec = recover_povm(ensemble, &solution)?;
    let p = rec.certificate.p;
    Ok(DiscriminationResult::new(
        ensemble,
        p,
        rec.povm,
        rec.certificate,
        Method::Oracle,
    ))
}
