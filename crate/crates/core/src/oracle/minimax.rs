//! Minimax form of the Helstrom-ratio program.
//!
//! With `r = p_i b_i + (p − p_i) c_i` and `|c_i| ≤ 1`, the smallest feasible
//! ratio for a given common point is `f(r) = max_i (p_i + |r − p_i b_i|)`, so
//! the optimum is `min_r f(r)`: a convex, piecewise-smooth problem in three
//! variables. It is solved by Polyak subgradient descent followed by a
//! Gauss-Newton polish on the active set, then certified with a lower bound.

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bloch::BlochVector;
use crate::ensemble::WeightedEnsemble;
use crate::tolerance::ACTIVATION_TOL;
use crate::weights::min_norm_hull_point;

const STARTS: usize = 8;
/// Subgradient steps per start; the polish does the fine work.
const DESCENT_STEPS: usize = 400;
const POLISH_THRESHOLDS: [f64; 10] = [3e-1, 1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7];
const SUBSET_THRESHOLD: f64 = 3e-2;
const SUBSET_LIMIT: usize = 10;
const CERT_THRESHOLDS: [f64; 6] = [1e-14, 1e-12, 1e-10, 1e-9, 1e-8, ACTIVATION_TOL];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimaxSolution {
    pub p_star: f64,
    pub r_star: BlochVector,
    pub active_set: Vec<usize>,
    pub iterations: usize,
    pub converged: bool,
    /// Certified bound `p_star − lower_bound ≥ p_star − optimum`.
    pub gap: f64,
    pub lower_bound: f64,
}

/// The convex objective `f(r) = max_i (p_i + |r − p_i b_i|)`.
#[derive(Debug, Clone)]
pub struct Objective {
    points: Vec<BlochVector>,
    priors: Vec<f64>,
}

impl Objective {
    pub fn new(ensemble: &WeightedEnsemble) -> Self {
        Objective {
            points: ensemble.weighted_points(),
            priors: ensemble.priors(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn term(&self, i: usize, r: &BlochVector) -> f64 {
        self.priors[i] + r.distance(&self.points[i])
    }

    pub fn value(&self, r: &BlochVector) -> f64 {
        (0..self.len())
            .map(|i| self.term(i, r))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    fn argmax(&self, r: &BlochVector) -> (f64, usize) {
        let mut best = (f64::NEG_INFINITY, 0);
        for i in 0..self.len() {
            let v = self.term(i, r);
            if v > best.0 {
                best = (v, i);
            }
        }
        best
    }

    fn active(&self, r: &BlochVector, threshold: f64) -> Vec<usize> {
        let f = self.value(r);
        (0..self.len())
            .filter(|&i| self.term(i, r) >= f - threshold * f.max(1.0))
            .collect()
    }

    /// `max(max_i p_i, max_{i<j} ½(p_i + p_j + |p_i b_i − p_j b_j|))`, from
    /// `f ≥ f_i` and `f ≥ ½(f_i + f_j)` with the triangle inequality.
    pub fn pair_lower_bound(&self) -> f64 {
        let mut lb = self
            .priors
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                let v = 0.5
                    * (self.priors[i] + self.priors[j] + self.points[i].distance(&self.points[j]));
                lb = lb.max(v);
            }
        }
        lb
    }
}

fn descend(
    obj: &Objective,
    start: BlochVector,
    lower: f64,
    max_iters: usize,
) -> (BlochVector, usize) {
    let mut r = start;
    let mut best = (obj.value(&r), r);
    let mut gamma = 1.0;
    let mut stall = 0;
    let mut iters = 0;
    while iters < max_iters {
        iters += 1;
        let (fv, k) = obj.argmax(&r);
        let d = r - obj.points[k];
        let n = d.norm();
        let excess = fv - lower;
        if n < 1e-15 || excess <= 1e-15 || gamma < 1e-12 {
            break;
        }
        // Polyak step toward the running lower bound; unit subgradient.
        r = r - d * (gamma * excess / n);
        let fr = obj.value(&r);
        if fr < best.0 {
            best = (fr, r);
            stall = 0;
        } else {
            stall += 1;
            if stall >= 8 {
                gamma *= 0.5;
                stall = 0;
                r = best.1;
            }
        }
    }
    (best.1, iters)
}

fn affine_basis(points: &[BlochVector]) -> Vec<BlochVector> {
    let mut basis: Vec<BlochVector> = Vec::new();
    for q in &points[1..] {
        let mut v = *q - points[0];
        for e in &basis {
            v = v - *e * v.dot(e);
        }
        let n = v.norm();
        if n > 1e-12 && basis.len() < 3 {
            basis.push(v / n);
        }
    }
    basis
}

/// Solves `|r − q_i| + p_i = p` for `i` in `active` with `r` restricted to
/// the affine hull of the active points. Returns the polished point.
fn gauss_newton(
    obj: &Objective,
    active: &[usize],
    r0: BlochVector,
) -> Option<(BlochVector, usize)> {
    if active.len() < 2 {
        return None;
    }
    let anchor = obj.points[active[0]];
    let pts: Vec<BlochVector> = active.iter().map(|&i| obj.points[i]).collect();
    let basis = affine_basis(&pts);
    let m = basis.len();
    if m == 0 {
        return None;
    }
    let mut t: Vec<f64> = basis.iter().map(|e| e.dot(&(r0 - anchor))).collect();
    let mut p = active
        .iter()
        .map(|&i| obj.term(i, &r0))
        .fold(f64::NEG_INFINITY, f64::max);
    let point = |t: &[f64]| {
        anchor
            + basis
                .iter()
                .zip(t)
                .map(|(e, s)| *e * *s)
                .sum::<BlochVector>()
    };
    let residuals = |t: &[f64], p: f64| -> Option<DVector<f64>> {
        let r = point(t);
        let mut f = DVector::zeros(active.len());
        for (k, &i) in active.iter().enumerate() {
            let d = r.distance(&obj.points[i]);
            if d < 1e-14 {
                return None;
            }
            f[k] = d + obj.priors[i] - p;
        }
        Some(f)
    };

    let mut iters = 0;
    for _ in 0..60 {
        iters += 1;
        let r = point(&t);
        let f = residuals(&t, p)?;
        let fnorm = f.norm();
        if fnorm < 1e-16 {
            break;
        }
        let mut jac = DMatrix::zeros(active.len(), m + 1);
        for (k, &i) in active.iter().enumerate() {
            let u = (r - obj.points[i]) / r.distance(&obj.points[i]);
            for (c, e) in basis.iter().enumerate() {
                jac[(k, c)] = u.dot(e);
            }
            jac[(k, m)] = -1.0;
        }
        let step = jac.svd(true, true).solve(&(-&f), 1e-14).ok()?;
        let mut alpha = 1.0;
        loop {
            let t_new: Vec<f64> = t
                .iter()
                .enumerate()
                .map(|(c, s)| s + alpha * step[c])
                .collect();
            let p_new = p + alpha * step[m];
            match residuals(&t_new, p_new) {
                Some(f_new) if f_new.norm() < fnorm || alpha < 1e-8 => {
                    t = t_new;
                    p = p_new;
                    break;
                }
                _ => alpha *= 0.5,
            }
            if alpha < 1e-9 {
                return Some((point(&t), iters));
            }
        }
        if alpha * step.norm() < 1e-17 {
            break;
        }
    }
    Some((point(&t), iters))
}

fn polish(obj: &Objective, mut r: BlochVector) -> (BlochVector, usize) {
    let mut iters = 0;
    for _ in 0..10 {
        let fr = obj.value(&r);
        let mut improved = false;
        let mut last: Option<Vec<usize>> = None;
        for &delta in &POLISH_THRESHOLDS {
            let active = obj.active(&r, delta);
            if last.as_ref() == Some(&active) {
                continue;
            }
            if let Some((cand, it)) = gauss_newton(obj, &active, r) {
                iters += it;
                if obj.value(&cand) < fr {
                    r = cand;
                    improved = true;
                    break;
                }
            }
            last = Some(active);
        }
        if !improved {
            // a term can tie at a non-stationary point; try dropping each one
            let active = obj.active(&r, POLISH_THRESHOLDS[POLISH_THRESHOLDS.len() - 1]);
            if active.len() >= 3 {
                for skip in 0..active.len() {
                    let subset: Vec<usize> = active
                        .iter()
                        .copied()
                        .filter(|&i| i != active[skip])
                        .collect();
                    if let Some((cand, it)) = gauss_newton(obj, &subset, r) {
                        iters += it;
                        if obj.value(&cand) < fr {
                            r = cand;
                            improved = true;
                            break;
                        }
                    }
                }
            }
        }
        if !improved {
            // the optimum rests on at most four terms; search small subsets of
            // the nearly active ones for the right set
            let near = obj.active(&r, SUBSET_THRESHOLD);
            if near.len() <= SUBSET_LIMIT {
                let mut best = (fr, r);
                for size in 2..=near.len().min(4) {
                    for subset in near.iter().copied().combinations(size) {
                        if let Some((cand, it)) = gauss_newton(obj, &subset, r) {
                            iters += it;
                            let fc = obj.value(&cand);
                            if fc < best.0 {
                                best = (fc, cand);
                            }
                        }
                    }
                }
                if best.0 < fr {
                    r = best.1;
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    (r, iters)
}

/// Lower bound on `min f` from a convex combination of active subgradients:
/// `f(r*) ≥ Σ μ_i f_i(r) − |Σ μ_i u_i| · |r* − r|`, with `|r* − r|` bounded
/// because the minimizer lies in the hull of the points.
fn certified_lower_bound(obj: &Objective, r: &BlochVector) -> f64 {
    let reach = r.norm() + obj.points.iter().map(BlochVector::norm).fold(0.0, f64::max);
    let mut lb = obj.pair_lower_bound();
    for &threshold in &CERT_THRESHOLDS {
        let active = obj.active(r, threshold);
        let mut dirs = Vec::with_capacity(active.len());
        for &i in &active {
            let d = *r - obj.points[i];
            match d.normalized() {
                Some(u) => dirs.push(u),
                // r sits on a point: the zero subgradient is available
                None => return lb.max(obj.priors[i]),
            }
        }
        let (mu, s) = min_norm_hull_point(&dirs);
        let weighted: f64 = active
            .iter()
            .zip(&mu)
            .map(|(&i, m)| m * obj.term(i, r))
            .sum();
        lb = lb.max(weighted - s * reach);
    }
    lb
}

/// Minimizes `f(r) = max_i (p_i + |r − p_i b_i|)` over `R³`.
///
/// Deterministic for a fixed `(ensemble, tol, max_iters, seed)`. A solution
/// whose certified gap exceeds `tol` is returned with `converged = false`.
pub fn minimax_common_point(
    ensemble: &WeightedEnsemble,
    tol: f64,
    max_iters: usize,
    seed: u64,
) -> MinimaxSolution {
    let obj = Objective::new(ensemble);
    let lower = obj.pair_lower_bound();
    let priors = ensemble.priors();
    let total: f64 = priors.iter().sum();
    let center: BlochVector = obj
        .points
        .iter()
        .zip(&priors)
        .map(|(q, p)| *q * *p)
        .sum::<BlochVector>()
        / total;

    let mut best: Option<(f64, BlochVector)> = None;
    // f(p_k b_k) ≥ p_k is attained when one prior dominates
    for q in &obj.points {
        let fq = obj.value(q);
        if best.is_none_or(|(bf, _)| fq < bf) {
            best = Some((fq, *q));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut iterations = 0;
    let mut lower_bound = lower;
    for start in 0..STARTS {
        let r0 = if start == 0 {
            center
        } else {
            let dir = BlochVector::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            center + dir * 0.25
        };
        let (r1, it1) = descend(&obj, r0, lower, max_iters.min(DESCENT_STEPS));
        let (r2, it2) = polish(&obj, r1);
        iterations += it1 + it2;
        let f2 = obj.value(&r2);
        if best.is_none_or(|(bf, _)| f2 < bf) {
            best = Some((f2, r2));
        }
        let (bf, br) = best.expect("candidates evaluated");
        lower_bound = lower_bound.max(certified_lower_bound(&obj, &br));
        if bf - lower_bound <= tol {
            break;
        }
    }
    let (p_star, r_star) = best.expect("candidates evaluated");
    let gap = (p_star - lower_bound).max(0.0);
    MinimaxSolution {
        p_star,
        r_star,
        active_set: obj.active(&r_star, ACTIVATION_TOL),
        iterations,
        converged: gap <= tol,
        gap,
        lower_bound,
    }
}
