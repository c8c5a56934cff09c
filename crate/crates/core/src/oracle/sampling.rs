//! Random complete measurements for stress-testing the success bound.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bloch::BlochVector;
use crate::ensemble::WeightedEnsemble;
use crate::family::success_probability;
use crate::povm::{Povm, PovmElement};

/// Uniform direction on the unit sphere.
pub fn random_unit<R: Rng>(rng: &mut R) -> BlochVector {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let s = (1.0 - z * z).max(0.0).sqrt();
    BlochVector::new(s * phi.cos(), s * phi.sin(), z)
}

/// Uniform point in the unit ball.
pub fn random_in_ball<R: Rng>(rng: &mut R) -> BlochVector {
    random_unit(rng) * rng.gen::<f64>().cbrt()
}

/// `X A X` for `X = αI + β n·σ` and `A = aI + v·σ`.
fn congruence(alpha: f64, beta: f64, n: BlochVector, el: &PovmElement) -> PovmElement {
    let nv = n.dot(&el.v);
    PovmElement {
        a: (alpha * alpha + beta * beta) * el.a + 2.0 * alpha * beta * nv,
        v: el.v * (alpha * alpha - beta * beta)
            + n * (2.0 * beta * beta * nv + 2.0 * alpha * beta * el.a),
    }
}

fn projective<R: Rng>(rng: &mut R, n: usize) -> Povm {
    let mut elements = vec![PovmElement::ZERO; n];
    if rng.gen_bool(0.1) {
        elements[rng.gen_range(0..n)] = PovmElement::IDENTITY;
    } else {
        let pair = sample(rng, n, 2);
        let u = random_unit(rng);
        elements[pair.index(0)] = PovmElement::scaled_projector(1.0, u);
        elements[pair.index(1)] = PovmElement::scaled_projector(1.0, -u);
    }
    Povm::new(elements).expect("projective measurement is complete")
}

/// Random PSD elements on a random support, made complete by the congruence
/// `Π_j = S^{-½} A_j S^{-½}` with `S = Σ A_j`.
fn general<R: Rng>(rng: &mut R, n: usize) -> Option<Povm> {
    let mut raw = vec![PovmElement::ZERO; n];
    let mut any = false;
    for el in raw.iter_mut() {
        if rng.gen_bool(0.75) {
            let a: f64 = rng.gen();
            // bias toward rank-one elements, where optima live
            let len = a * rng.gen::<f64>().powf(0.2);
            *el = PovmElement {
                a,
                v: random_unit(rng) * len,
            };
            any = true;
        }
    }
    if !any {
        return None;
    }
    let s: f64 = raw.iter().map(|e| e.a).sum();
    let t: BlochVector = raw.iter().map(|e| e.v).sum();
    let tn = t.norm();
    let (hi, lo) = (s + tn, s - tn);
    if lo <= 1e-6 * hi {
        return None;
    }
    let (ih, il) = (hi.sqrt().recip(), lo.sqrt().recip());
    let alpha = 0.5 * (ih + il);
    let beta = 0.5 * (ih - il);
    let dir = t.normalized().unwrap_or(BlochVector::Z);
    let elements = raw
        .iter()
        .map(|e| congruence(alpha, beta, dir, e))
        .collect();
    Povm::new(elements).ok()
}

/// A random complete measurement with `n` outcomes.
pub fn random_povm<R: Rng>(rng: &mut R, n: usize) -> Povm {
    assert!(n >= 1, "a measurement needs at least one outcome");
    if n == 1 {
        return Povm::guess(1, 0);
    }
    if rng.gen_bool(0.3) {
        return projective(rng, n);
    }
    loop {
        if let Some(m) = general(rng, n) {
            return m;
        }
    }
}

/// Best success probability over `count` random measurements.
pub fn random_povm_sample(ensemble: &WeightedEnsemble, count: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m = random_povm(&mut rng, ensemble.len());
            success_probability(ensemble, &m).expect("sizes match")
        })
        .fold(f64::NEG_INFINITY, f64::max)
}
