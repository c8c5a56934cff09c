//! Equiprobable ensembles on a sphere of radius `b` and on a cone around `z`.

use crate::bloch::BlochVector;
use crate::closed_form::{finish, guess_dominant};
use crate::ensemble::WeightedEnsemble;
use crate::error::{Error, Result};
use crate::family::CommonPoint;
use crate::povm::{Povm, PovmElement};
use crate::result::{DiscriminationResult, Method};
use crate::tolerance::{PRIOR_SUM_TOL, WEIGHT_TOL};
use crate::weights::min_norm_balance;

const RADIUS_TOL: f64 = 1e-9;

fn check_equiprobable(ensemble: &WeightedEnsemble) -> Result<()> {
    let target = 1.0 / ensemble.len() as f64;
    if ensemble
        .priors()
        .iter()
        .any(|p| (p - target).abs() > PRIOR_SUM_TOL)
    {
        return Err(Error::WrongShape("priors are not equal".into()));
    }
    Ok(())
}

fn weighted_projectors(dirs: &[BlochVector], what: &str) -> Result<Povm> {
    let w = min_norm_balance(dirs, 2.0, WEIGHT_TOL)
        .ok_or_else(|| Error::Infeasible(format!("{what} directions lie in an open half-space")))?;
    let elements = dirs
        .iter()
        .zip(&w)
        .map(|(d, &x)| {
            if x > 0.0 {
                PovmElement::scaled_projector(x, *d)
            } else {
                PovmElement::ZERO
            }
        })
        .collect();
    Povm::new(elements)
}

/// Equal priors and equal Bloch lengths `b` with the origin in the convex
/// hull of the directions: `p = (1 + b)/N`, `c_j = −b̂_j`, common point 0.
pub fn solve_symmetric_shell(ensemble: &WeightedEnsemble) -> Result<DiscriminationResult> {
    check_equiprobable(ensemble)?;
    let blochs = ensemble.blochs();
    let b = blochs[0].norm();
    if blochs.iter().any(|v| (v.norm() - b).abs() > RADIUS_TOL) {
        return Err(Error::WrongShape(
            "Bloch vectors have different lengths".into(),
        ));
    }
    if b <= RADIUS_TOL {
        return guess_dominant(ensemble, Method::SymmetricShell);
    }
    let dirs: Vec<BlochVector> = blochs.iter().map(|v| *v / v.norm()).collect();
    let povm = weighted_projectors(&dirs, "state")?;
    let p = (1.0 + b) / ensemble.len() as f64;
    finish(
        ensemble,
        p,
        CommonPoint(BlochVector::ZERO),
        povm,
        Method::SymmetricShell,
    )
}

/// Equiprobable states `b(sinθ cosφ_j, sinθ sinφ_j, cosθ)`:
/// `p = (1 + b sinθ)/N` measured along the azimuths.
pub fn solve_cone(n: usize, b: f64, theta: f64, phis: &[f64]) -> Result<DiscriminationResult> {
    if n < 2 || phis.len() != n {
        return Err(Error::Parameter(format!(
            "cone needs N ≥ 2 azimuths, got N = {n} with {}",
            phis.len()
        )));
    }
    if !(0.0..=1.0).contains(&b) || !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::Parameter(format!(
            "b = {b}, θ = {theta} out of range"
        )));
    }
    let blochs: Vec<BlochVector> = phis
        .iter()
        .map(|&phi| BlochVector::spherical(b, theta, phi))
        .collect();
    let ensemble = WeightedEnsemble::uniform(&blochs)?;
    cone_result(&ensemble, b * theta.sin(), b * theta.cos(), phis)
}

/// Detects the cone structure (equal priors, common `b_z`, common transverse
/// radius) and solves it.
pub fn solve_cone_ensemble(ensemble: &WeightedEnsemble) -> Result<DiscriminationResult> {
    check_equiprobable(ensemble)?;
    let blochs = ensemble.blochs();
    let z = blochs[0].z;
    let rho = blochs[0].x.hypot(blochs[0].y);
    if blochs
        .iter()
        .any(|v| (v.z - z).abs() > RADIUS_TOL || (v.x.hypot(v.y) - rho).abs() > RADIUS_TOL)
    {
        return Err(Error::WrongShape(
            "states do not share a cone around z".into(),
        ));
    }
    let phis: Vec<f64> = blochs.iter().map(|v| v.y.atan2(v.x)).collect();
    cone_result(ensemble, rho, z, &phis)
}

fn cone_result(
    ensemble: &WeightedEnsemble,
    radial: f64,
    height: f64,
    phis: &[f64],
) -> Result<DiscriminationResult> {
    let n = ensemble.len() as f64;
    if radial <= RADIUS_TOL {
        return guess_dominant(ensemble, Method::Cone);
    }
    let dirs: Vec<BlochVector> = phis
        .iter()
        .map(|&phi| BlochVector::new(phi.cos(), phi.sin(), 0.0))
        .collect();
    let povm = weighted_projectors(&dirs, "azimuth")?;
    let p = (1.0 + radial) / n;
    finish(
        ensemble,
        p,
        CommonPoint(BlochVector::new(0.0, 0.0, height / n)),
        povm,
        Method::Cone,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::minimax_common_point;
    use crate::result::check_result;
    use std::f64::consts::PI;

    fn passes(e: &WeightedEnsemble, r: &DiscriminationResult) {
        let c = check_result(e, r);
        assert!(c.passes(), "{c:?}");
    }

    fn tetrahedron(b: f64) -> Vec<BlochVector> {
        let s = b / 3f64.sqrt();
        vec![
            BlochVector::new(s, s, s),
            BlochVector::new(s, -s, -s),
            BlochVector::new(-s, s, -s),
            BlochVector::new(-s, -s, s),
        ]
    }

    #[test]
    fn tetrahedron_shell() {
        let e = WeightedEnsemble::uniform(&tetrahedron(1.0)).unwrap();
        let r = solve_symmetric_shell(&e).unwrap();
        assert!((r.p_opt - 0.5).abs() < 1e-15);
        for el in r.povm.elements() {
            assert!((el.trace() - 0.5).abs() < 1e-12);
        }
        passes(&e, &r);
    }

    #[test]
    fn octahedron_shell() {
        let d = [
            BlochVector::X,
            -BlochVector::X,
            BlochVector::Y,
            -BlochVector::Y,
            BlochVector::Z,
            -BlochVector::Z,
        ];
        let b: Vec<_> = d.iter().map(|v| *v * 0.5).collect();
        let e = WeightedEnsemble::uniform(&b).unwrap();
        let r = solve_symmetric_shell(&e).unwrap();
        assert!((r.p_opt - 0.25).abs() < 1e-15);
        passes(&e, &r);
        let o = minimax_common_point(&e, 1e-12, 500, 0);
        assert!((o.p_star - 0.25).abs() < 1e-12);
    }

    #[test]
    fn maximally_mixed_shell() {
        let e = WeightedEnsemble::uniform(&[BlochVector::ZERO; 5]).unwrap();
        let r = solve_symmetric_shell(&e).unwrap();
        assert!((r.p_opt - 0.2).abs() < 1e-15);
        passes(&e, &r);
    }

    #[test]
    fn shell_needs_balance() {
        let e =
            WeightedEnsemble::uniform(&[BlochVector::X, BlochVector::Y, BlochVector::Z]).unwrap();
        assert!(matches!(
            solve_symmetric_shell(&e),
            Err(Error::Infeasible(_))
        ));
        let e = WeightedEnsemble::new(&[(0.4, BlochVector::X), (0.6, -BlochVector::X)]).unwrap();
        assert!(matches!(
            solve_symmetric_shell(&e),
            Err(Error::WrongShape(_))
        ));
    }

    #[test]
    fn cone_examples() {
        let trine: Vec<f64> = (0..3).map(|k| 2.0 * PI * k as f64 / 3.0).collect();
        let r = solve_cone(3, 1.0, PI / 2.0, &trine).unwrap();
        assert!((r.p_opt - 2.0 / 3.0).abs() < 1e-15);

        let four: Vec<f64> = (0..4).map(|k| PI * k as f64 / 2.0).collect();
        let r = solve_cone(4, 0.8, PI / 3.0, &four).unwrap();
        let expected = (1.0 + 0.8 * 3f64.sqrt() / 2.0) / 4.0;
        assert!((r.p_opt - expected).abs() < 1e-15);
        assert!((r.p_opt - 0.4232051).abs() < 1e-7);
        let e = WeightedEnsemble::uniform(
            &four
                .iter()
                .map(|&f| BlochVector::spherical(0.8, PI / 3.0, f))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        passes(&e, &r);
        let o = minimax_common_point(&e, 1e-12, 500, 0);
        assert!((o.p_star - expected).abs() < 1e-12);
        assert!((solve_cone_ensemble(&e).unwrap().p_opt - expected).abs() < 1e-15);

        let r = solve_cone(4, 0.8, 0.0, &four).unwrap();
        assert!((r.p_opt - 0.25).abs() < 1e-15);
    }

    #[test]
    fn cone_half_plane_infeasible() {
        assert!(matches!(
            solve_cone(3, 1.0, 1.0, &[0.0, 0.5, 1.0]),
            Err(Error::Infeasible(_))
        ));
    }
}
