//! Nonnegative weight systems `Σ w_i = total, Σ w_i d_i = 0, w ≥ 0`.
//!
//! Two independent solvers: an exact support enumeration (Carathéodory
//! bounds the support by 4 in three dimensions) and a primal-dual active-set
//! sweep that returns the minimum-norm solution.

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};

use crate::bloch::BlochVector;

const SVD_EPS: f64 = 1e-13;

/// Result of the support enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportWeights {
    pub weights: Vec<f64>,
    pub support: Vec<usize>,
    /// False when another support of the same size also solves the system.
    pub unique: bool,
}

fn constraint_matrix(dirs: &[BlochVector], cols: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(4, cols.len(), |r, c| {
        let d = dirs[cols[c]];
        match r {
            0 => 1.0,
            1 => d.x,
            2 => d.y,
            _ => d.z,
        }
    })
}

fn rhs(total: f64) -> DVector<f64> {
    DVector::from_column_slice(&[total, 0.0, 0.0, 0.0])
}

/// Minimum-norm least-squares solution of `A w = b`.
fn lstsq(a: &DMatrix<f64>, b: &DVector<f64>) -> Option<DVector<f64>> {
    a.clone().svd(true, true).solve(b, SVD_EPS).ok()
}

/// Enumerates supports of increasing size and returns the first exact
/// nonnegative solution, breaking ties by smallest Euclidean norm.
pub fn balance_by_support(dirs: &[BlochVector], total: f64, tol: f64) -> Option<SupportWeights> {
    let n = dirs.len();
    let b = rhs(total);
    for size in 1..=n.min(4) {
        let mut found: Vec<(f64, Vec<usize>, DVector<f64>)> = Vec::new();
        for support in (0..n).combinations(size) {
            let a = constraint_matrix(dirs, &support);
            let Some(w) = lstsq(&a, &b) else { continue };
            if (&a * &w - &b).norm() > tol || w.iter().any(|&x| x < -tol) {
                continue;
            }
            found.push((w.norm(), support, w));
        }
        if found.is_empty() {
            continue;
        }
        let unique = found.len() == 1;
        let best = found
            .into_iter()
            .min_by(|a, b| a.0.total_cmp(&b.0))
            .expect("non-empty");
        let mut weights = vec![0.0; n];
        for (k, &i) in best.1.iter().enumerate() {
            weights[i] = best.2[k].max(0.0);
        }
        return Some(SupportWeights {
            weights,
            support: best.1,
            unique,
        });
    }
    None
}

/// Minimum-norm nonnegative solution via a primal-dual active-set sweep.
///
/// Optimality conditions of `min ½|w|²` under `Aw = b, w ≥ 0` are
/// `w = max(0, Aᵀy)`; the sweep drops negative weights from the free set and
/// releases bound indices whose dual sign is wrong.
pub fn min_norm_balance(dirs: &[BlochVector], total: f64, tol: f64) -> Option<Vec<f64>> {
    let n = dirs.len();
    if n == 0 {
        return None;
    }
    let all: Vec<usize> = (0..n).collect();
    let a_full = constraint_matrix(dirs, &all);
    let b = rhs(total);
    let mut free = vec![true; n];

    for _ in 0..(8 * n + 16) {
        let cols: Vec<usize> = (0..n).filter(|&i| free[i]).collect();
        if cols.is_empty() {
            return None;
        }
        let a = constraint_matrix(dirs, &cols);
        let gram = &a * a.transpose();
        let y = lstsq(&gram, &b)?;
        let w_free = a.transpose() * &y;
        let dual = a_full.transpose() * &y;
        let consistent = (&a * &w_free - &b).norm() <= tol;

        if consistent {
            let (worst, min_w) = w_free
                .iter()
                .enumerate()
                .min_by(|x, y| x.1.total_cmp(y.1))
                .map(|(k, &v)| (k, v))
                .expect("non-empty");
            if min_w < -tol {
                free[cols[worst]] = false;
                continue;
            }
        }
        let release = (0..n)
            .filter(|&i| !free[i] && dual[i] > tol)
            .max_by(|&i, &j| dual[i].total_cmp(&dual[j]));
        match (consistent, release) {
            (_, Some(i)) => free[i] = true,
            (true, None) => {
                let mut w = vec![0.0; n];
                for (k, &i) in cols.iter().enumerate() {
                    w[i] = w_free[k].max(0.0);
                }
                return Some(w);
            }
            (false, None) => return None,
        }
    }
    None
}

/// Weights `μ ≥ 0, Σμ = 1` approximately minimizing `|Σ μ_i d_i|`, searched
/// over supports of size at most 4. Returns `(μ, |Σ μ_i d_i|)`.
pub fn min_norm_hull_point(dirs: &[BlochVector]) -> (Vec<f64>, f64) {
    let n = dirs.len();
    let mut best = (vec![0.0; n], f64::INFINITY);
    for size in 1..=n.min(4) {
        for support in (0..n).combinations(size) {
            let k = support.len();
            // [2DᵀD 1; 1ᵀ 0] [μ; η] = [0; 1]
            let mut m = DMatrix::zeros(k + 1, k + 1);
            for (r, &i) in support.iter().enumerate() {
                for (c, &j) in support.iter().enumerate() {
                    m[(r, c)] = 2.0 * dirs[i].dot(&dirs[j]);
                }
                m[(r, k)] = 1.0;
                m[(k, r)] = 1.0;
            }
            let mut rhs = DVector::zeros(k + 1);
            rhs[k] = 1.0;
            let Some(sol) = lstsq(&m, &rhs) else { continue };
            if (0..k).any(|r| sol[r] < -1e-14) {
                continue;
            }
            let s: f64 = (0..k).map(|r| sol[r].max(0.0)).sum();
            if s <= 0.0 {
                continue;
            }
            let point: BlochVector = support
                .iter()
                .enumerate()
                .map(|(r, &i)| dirs[i] * (sol[r].max(0.0) / s))
                .sum();
            let norm = point.norm();
            if norm < best.1 {
                let mut mu = vec![0.0; n];
                for (r, &i) in support.iter().enumerate() {
                    mu[i] = sol[r].max(0.0) / s;
                }
                best = (mu, norm);
            }
        }
    }
    best
}
