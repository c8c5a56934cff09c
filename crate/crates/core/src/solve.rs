//! Solver selection by ensemble shape.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::closed_form::{
    enumerate_three_state, solve_cone_ensemble, solve_diagonal, solve_symmetric_shell,
    solve_two_state,
};
use crate::ensemble::WeightedEnsemble;
use crate::error::{Error, Result};
use crate::oracle::classical::is_diagonal;
use crate::oracle::solve_oracle;
use crate::result::DiscriminationResult;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Oracle convergence tolerance.
    pub tol: f64,
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { tol: 1e-9, seed: 0 }
    }
}

/// Solver requested by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodChoice {
    Auto,
    TwoState,
    ThreeState,
    SymmetricShell,
    Diagonal,
    Cone,
    Oracle,
}

impl MethodChoice {
    pub const ALL: [MethodChoice; 7] = [
        MethodChoice::Auto,
        MethodChoice::TwoState,
        MethodChoice::ThreeState,
        MethodChoice::SymmetricShell,
        MethodChoice::Diagonal,
        MethodChoice::Cone,
        MethodChoice::Oracle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            MethodChoice::Auto => "auto",
            MethodChoice::TwoState => "two-state",
            MethodChoice::ThreeState => "three-state",
            MethodChoice::SymmetricShell => "symmetric-shell",
            MethodChoice::Diagonal => "diagonal",
            MethodChoice::Cone => "cone",
            MethodChoice::Oracle => "oracle",
        }
    }
}

impl fmt::Display for MethodChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MethodChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        MethodChoice::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown method {s:?}")))
    }
}

fn three_state(ensemble: &WeightedEnsemble, opts: SolveOptions) -> Result<DiscriminationResult> {
    match enumerate_three_state(ensemble) {
        Ok(s) => Ok(s.result),
        Err(Error::NoValidCandidate) => solve_oracle(ensemble, opts.tol, opts.seed),
        Err(e) => Err(e),
    }
}

/// Tries diagonal (three or more states), two-state, three-state, then the
/// symmetric shell and cone, and finally the oracle.
pub fn solve_auto(ensemble: &WeightedEnsemble, opts: SolveOptions) -> Result<DiscriminationResult> {
    let n = ensemble.len();
    if n >= 3 && is_diagonal(ensemble) {
        return solve_diagonal(ensemble);
    }
    match n {
        2 => return solve_two_state(ensemble),
        3 => return three_state(ensemble, opts),
        _ => {}
    }
    for solver in [solve_symmetric_shell, solve_cone_ensemble] {
        match solver(ensemble) {
            Ok(r) => return Ok(r),
            Err(Error::WrongShape(_) | Error::Infeasible(_)) => {}
            Err(e) => return Err(e),
        }
    }
    solve_oracle(ensemble, opts.tol, opts.seed)
}

pub fn solve_with(
    ensemble: &WeightedEnsemble,
    choice: MethodChoice,
    opts: SolveOptions,
) -> Result<DiscriminationResult> {
    match choice {
        MethodChoice::Auto => solve_auto(ensemble, opts),
        MethodChoice::TwoState => solve_two_state(ensemble),
        MethodChoice::ThreeState => three_state(ensemble, opts),
        MethodChoice::SymmetricShell => solve_symmetric_shell(ensemble),
        MethodChoice::Diagonal => solve_diagonal(ensemble),
        MethodChoice::Cone => solve_cone_ensemble(ensemble),
        MethodChoice::Oracle => solve_oracle(ensemble, opts.tol, opts.seed),
    }
}
