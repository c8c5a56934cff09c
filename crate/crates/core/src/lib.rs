//! Minimum-error discrimination of qubit ensembles through Helstrom families.
//!
//! States, measurements and certificates are all carried as Bloch vectors.
//! The crate provides closed-form solvers for two and three states and for
//! several symmetric ensembles, an independent minimax oracle that
//! arbitrates every closed form, and a KKT residual checker used as the
//! acceptance gate for all solver output.

pub mod bloch;
pub mod certificate;
pub mod cli;
pub mod closed_form;
pub mod ensemble;
pub mod error;
pub mod family;
pub mod kkt;
pub mod oracle;
pub mod povm;
pub mod result;
pub mod solve;
pub mod tolerance;
pub mod weights;

pub use bloch::{BlochVector, QubitState};
pub use certificate::HelstromCertificate;
pub use ensemble::{validate_ensemble, WeightedEnsemble};
pub use error::{Error, Result};
pub use family::CommonPoint;
pub use kkt::KktReport;
pub use povm::{Povm, PovmElement};
pub use result::{check_result, DiscriminationResult, Method, ResultCheck};
pub use solve::{solve_auto, solve_with, MethodChoice, SolveOptions};
