//! Reconstruction of the optimal measurement from a minimax solution.

use crate::bloch::BlochVector;
use crate::certificate::{clamp_to_ball, HelstromCertificate};
use crate::closed_form::guess_dominant;
use crate::ensemble::WeightedEnsemble;
use crate::error::{Error, Result};
use crate::family::CommonPoint;
use crate::oracle::minimax::MinimaxSolution;
use crate::povm::{Povm, PovmElement};
use crate::result::Method;
use crate::tolerance::{PURITY_TOL, WEIGHT_TOL};
use crate::weights::{balance_by_support, min_norm_balance};

/// Ratio gap below which the largest prior is taken to be the optimum.
const DOMINANCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Recovery {
    pub povm: Povm,
    pub certificate: HelstromCertificate,
    /// Weights `w_i = tr(Π_i)`.
    pub weights: Vec<f64>,
    /// False when several weight systems fit the pure conjugates; the
    /// minimum-norm one is returned.
    pub unique: bool,
}

impl Recovery {
    pub fn into_parts(self) -> (Povm, HelstromCertificate) {
        (self.povm, self.certificate)
    }
}

fn dominant(ensemble: &WeightedEnsemble) -> Result<Recovery> {
    let r = guess_dominant(ensemble, Method::Oracle)?;
    Ok(Recovery {
        weights: r.povm.elements().iter().map(PovmElement::trace).collect(),
        unique: r.povm.elements().iter().filter(|e| !e.is_zero()).count() == 1,
        povm: r.povm,
        certificate: r.certificate,
    })
}

/// Builds `Π_i = w_i·½(I − c_i·σ)` over the pure conjugates of the minimax
/// solution, with `w ≥ 0, Σ w_i = 2, Σ w_i c_i = 0`.
///
/// When the optimum equals the largest prior the measurement always guesses
/// that state (shared equally among tied priors).
pub fn recover_povm(ensemble: &WeightedEnsemble, solution: &MinimaxSolution) -> Result<Recovery> {
    let fail = |reason: String| Error::Recovery {
        active: solution.active_set.clone(),
        reason,
    };
    if solution.p_star - ensemble.max_prior() <= DOMINANCE_TOL {
        return dominant(ensemble);
    }
    let p = solution.p_star;
    let r = solution.r_star;
    let n = ensemble.len();
    let conjugates: Vec<BlochVector> = ensemble
        .entries()
        .iter()
        .map(|e| clamp_to_ball((r - e.state.bloch() * e.prior) / (p - e.prior)))
        .collect();
    let pure: Vec<usize> = (0..n)
        .filter(|&i| conjugates[i].norm() >= 1.0 - PURITY_TOL)
        .collect();
    if pure.len() < 2 {
        return Err(fail(format!("{} pure conjugate(s)", pure.len())));
    }
    let dirs: Vec<BlochVector> = pure
        .iter()
        .map(|&i| {
            conjugates[i]
                .normalized()
                .expect("pure conjugate is nonzero")
        })
        .collect();
    let sparse = balance_by_support(&dirs, 2.0, WEIGHT_TOL)
        .ok_or_else(|| fail("no nonnegative weights balance the pure conjugates".into()))?;
    let (local, unique) = if sparse.unique {
        (sparse.weights, true)
    } else {
        (
            min_norm_balance(&dirs, 2.0, WEIGHT_TOL).unwrap_or(sparse.weights),
            false,
        )
    };

    let mut weights = vec![0.0; n];
    let mut elements = vec![PovmElement::ZERO; n];
    for (k, &i) in pure.iter().enumerate() {
        weights[i] = local[k];
        if local[k] > 0.0 {
            elements[i] = PovmElement::scaled_projector(local[k], -dirs[k]);
        }
    }
    let povm = Povm::new(elements).map_err(|e| fail(e.to_string()))?;
    let certificate = HelstromCertificate::from_measurement(ensemble, p, CommonPoint(r), &povm)?;
    Ok(Recovery {
        povm,
        certificate,
        weights,
        unique,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::success_probability;
    use crate::oracle::minimax::minimax_common_point;
    use crate::result::{check_result, DiscriminationResult};
    use std::f64::consts::PI;

    fn recover(raw: &[(f64, BlochVector)]) -> (WeightedEnsemble, MinimaxSolution, Recovery) {
        let e = WeightedEnsemble::new(raw).unwrap();
        let s = minimax_common_point(&e, 1e-10, 500, 3);
        let r = recover_povm(&e, &s).unwrap();
        (e, s, r)
    }

    fn assert_passes(e: &WeightedEnsemble, s: &MinimaxSolution, r: &Recovery) {
        let res = DiscriminationResult::new(
            e,
            s.p_star,
            r.povm.clone(),
            r.certificate.clone(),
            Method::Oracle,
        );
        let check = check_result(e, &res);
        assert!(check.passes(), "{check:?}");
        assert!((success_probability(e, &r.povm).unwrap() - s.p_star).abs() < 1e-7);
    }

    #[test]
    fn orthogonal_pair() {
        let (e, s, r) = recover(&[(0.5, BlochVector::Z), (0.5, -BlochVector::Z)]);
        assert_eq!(r.weights.len(), 2);
        for w in &r.weights {
            assert!((w - 1.0).abs() < 1e-12);
        }
        assert!(r.povm.elements()[0].v.max_abs_diff(&(BlochVector::Z * 0.5)) < 1e-12);
        assert_passes(&e, &s, &r);
    }

    #[test]
    fn trine_weights() {
        let raw: Vec<_> = (0..3)
            .map(|k| {
                (
                    1.0 / 3.0,
                    BlochVector::spherical(1.0, PI / 2.0, 2.0 * PI * k as f64 / 3.0),
                )
            })
            .collect();
        let (e, s, r) = recover(&raw);
        assert!(r.unique);
        for w in &r.weights {
            assert!((w - 2.0 / 3.0).abs() < 1e-9);
        }
        assert_passes(&e, &s, &r);
    }

    #[test]
    fn mixed_third_conjugate_gets_zero_element() {
        let (e, s, r) = recover(&[
            (0.9, BlochVector::Z),
            (0.05, -BlochVector::Z),
            (0.05, BlochVector::X),
        ]);
        assert!(r.povm.elements()[2].is_zero());
        assert!((r.weights[0] - 1.0).abs() < 1e-9 && (r.weights[1] - 1.0).abs() < 1e-9);
        let c3 = r.certificate.conjugates[2];
        assert!(c3.max_abs_diff(&BlochVector::new(-1.0 / 18.0, 0.0, 17.0 / 18.0)) < 1e-9);
        assert_passes(&e, &s, &r);
    }

    #[test]
    fn dominant_prior_guesses() {
        let (e, s, r) = recover(&[
            (0.8, BlochVector::new(0.0, 0.0, 0.1)),
            (0.2, BlochVector::X * 0.1),
        ]);
        assert_eq!(r.povm.elements()[0], PovmElement::IDENTITY);
        assert!(r.certificate.is_saturated());
        assert_passes(&e, &s, &r);
    }

    #[test]
    fn octahedron_flags_non_unique() {
        let dirs = [
            BlochVector::X,
            -BlochVector::X,
            BlochVector::Y,
            -BlochVector::Y,
            BlochVector::Z,
            -BlochVector::Z,
        ];
        let raw: Vec<_> = dirs.iter().map(|d| (1.0 / 6.0, *d)).collect();
        let (e, s, r) = recover(&raw);
        assert!(!r.unique);
        for w in &r.weights {
            assert!((w - 1.0 / 3.0).abs() < 1e-9);
        }
        assert_passes(&e, &s, &r);
    }
}
