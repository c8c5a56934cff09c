//! Numerical thresholds shared by solvers, verifiers and the acceptance suite.
//!
//! Residuals are absolute: every quantity lives in the Bloch ball or on the
//! probability simplex, so it is O(1).

/// A state's Bloch vector may exceed unit length by this much.
pub const STATE_NORM_TOL: f64 = 1e-12;

/// `|c| ≥ 1 − PURITY_TOL` classifies a conjugate (or state) as pure.
pub const PURITY_TOL: f64 = 1e-9;

/// Priors must sum to one within this.
pub const PRIOR_SUM_TOL: f64 = 1e-12;

/// PSD check for `aI + v·σ`: `a ≥ |v| − PSD_TOL`.
pub const PSD_TOL: f64 = 1e-12;

/// POVM completeness: `|Σa − 1|` and `|Σv|`.
pub const COMPLETENESS_TOL: f64 = 1e-10;

/// Common-point agreement for a weak Helstrom family.
pub const FAMILY_TOL: f64 = 1e-9;

/// `Tr(τ_i Π_i)` for an optimal measurement.
pub const OPTIMALITY_TOL: f64 = 1e-9;

/// Slack allowed when checking `P ≤ p`.
pub const BOUND_SLACK: f64 = 1e-8;

/// Every KKT residual of a passing report.
pub const KKT_TOL: f64 = 1e-8;

/// Reported success probability against `p_opt`.
pub const SUCCESS_TOL: f64 = 1e-8;

/// Agreement between the two multiplier triples of the three-state interior solution.
pub const LAMBDA_TRIPLE_TOL: f64 = 1e-8;

/// Gram identity residual on interior three-state solutions.
pub const GRAM_TOL: f64 = 1e-8;

/// `p − p_i` at or below this marks entry `i` as saturated (`p̃_i = 1`).
pub const SATURATION_TOL: f64 = 1e-12;

/// Minimum magnitude of the multiplier-formula denominators.
pub const DENOMINATOR_TOL: f64 = 1e-12;

/// Residual accepted when solving the nonnegative weight systems.
pub const WEIGHT_TOL: f64 = 1e-10;

/// Relative activation tolerance of the minimax active set.
pub const ACTIVATION_TOL: f64 = 1e-7;
