#![allow(dead_code)]

use helstrom_core::oracle::sampling::random_in_ball;
use helstrom_core::{validate_ensemble, BlochVector, WeightedEnsemble};
use rand::Rng;

/// Priors uniform on the open simplex.
pub fn random_priors<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n)
        .map(|_| (-(1.0 - rng.gen::<f64>()).ln()).max(1e-300))
        .collect();
    let total: f64 = raw.iter().sum();
    raw.iter().map(|x| x / total).collect()
}

/// Uniform priors on the simplex, Bloch vectors uniform in the ball.
pub fn random_ensemble<R: Rng>(rng: &mut R, n: usize) -> WeightedEnsemble {
    let priors = random_priors(rng, n);
    let raw: Vec<(f64, BlochVector)> = priors
        .into_iter()
        .map(|p| (p, random_in_ball(rng)))
        .collect();
    validate_ensemble(&raw, true).expect("random ensemble is valid")
}

/// States diagonal in the z basis.
pub fn random_diagonal<R: Rng>(rng: &mut R, n: usize) -> WeightedEnsemble {
    let priors = random_priors(rng, n);
    let raw: Vec<(f64, BlochVector)> = priors
        .into_iter()
        .map(|p| (p, BlochVector::new(0.0, 0.0, rng.gen_range(-1.0..=1.0))))
        .collect();
    validate_ensemble(&raw, true).expect("random ensemble is valid")
}

pub fn trine() -> WeightedEnsemble {
    let b: Vec<_> = (0..3)
        .map(|k| {
            BlochVector::spherical(
                1.0,
                std::f64::consts::FRAC_PI_2,
                2.0 * std::f64::consts::PI * k as f64 / 3.0,
            )
        })
        .collect();
    WeightedEnsemble::uniform(&b).unwrap()
}
