use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("Bloch vector norm {norm} exceeds 1")]
    BlochNorm { norm: f64 },

    #[error("ensemble needs at least 2 states, got {0}")]
    TooFewStates(usize),

    #[error("prior {prior} of state {index} is outside (0, 1)")]
    PriorOutOfRange { index: usize, prior: f64 },

    #[error("priors sum to {sum}, expected 1")]
    PriorSum { sum: f64 },

    #[error("POVM element {index} is not positive semidefinite (a = {a}, |v| = {v_norm})")]
    NotPsd { index: usize, a: f64, v_norm: f64 },

    #[error("POVM is not complete (Σa − 1 = {trace_gap:.3e}, |Σv| = {vector_gap:.3e})")]
    Incomplete { trace_gap: f64, vector_gap: f64 },

    #[error("length mismatch: {what} has {got} entries, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("Helstrom ratio {p} does not exceed the largest prior {max_prior}")]
    RatioNotAbovePriors { p: f64, max_prior: f64 },

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error("input does not have the structure this solver needs: {0}")]
    WrongShape(String),

    #[error("nonnegative weight system is infeasible: {0}")]
    Infeasible(String),

    #[error("no three-state candidate passed validation")]
    NoValidCandidate,

    #[error("minimax oracle did not converge (gap {gap:.3e} after {iterations} iterations)")]
    NotConverged { gap: f64, iterations: usize },

    #[error("POVM recovery failed for active set {active:?}: {reason}")]
    Recovery { active: Vec<usize>, reason: String },

    #[error("parameter out of range: {0}")]
    Parameter(String),
}
