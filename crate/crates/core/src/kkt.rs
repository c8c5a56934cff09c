//! Residuals of the Karush-Kuhn-Tucker system for minimizing the Helstrom
//! ratio over weak Helstrom families.
//!
//! Variables are the ratio `p` and the conjugates `c_i`; the scaled priors are
//! `p̃_i = p_i/p`. With one distinguished index `d` (index 0 by default) the
//! conditions are
//!
//! ```text
//! |c_i|² − 1 ≤ 0
//! p̃_d b_d + (1−p̃_d) c_d − p̃_i b_i − (1−p̃_i) c_i = 0        i ≠ d
//! λ_i ≥ 0
//! 1 + Σ_{i≠d} ν_i·(c_d − c_i) = 0
//! 2λ_d c_d + (1−p̃_d) Σ_{i≠d} ν_i = 0
//! 2λ_i c_i − (1−p̃_i) ν_i = 0                                   i ≠ d
//! λ_i (|c_i|² − 1) = 0
//! ```
//!
//! and they imply `Σ λ_i c_i/(1−p̃_i) = 0` and `Σ λ_i |c_i|²/(1−p̃_i) = ½`.

use serde::{Deserialize, Serialize};

use crate::bloch::BlochVector;
use crate::certificate::HelstromCertificate;
use crate::ensemble::WeightedEnsemble;
use crate::error::{Error, Result};
use crate::povm::Povm;
use crate::tolerance::{KKT_TOL, SATURATION_TOL};

/// `λ_j = tr(Π_j)(p − p_j)/(4p)`, the inverse of `Π_j = 4pλ_j/(p−p_j) |χ_j⟩⟨χ_j|`.
///
/// Saturated entries (`p = p_j`) get `λ_j = 0`.
pub fn lambdas_from_povm(ensemble: &WeightedEnsemble, p: f64, povm: &Povm) -> Result<Vec<f64>> {
    if povm.len() != ensemble.len() {
        return Err(Error::LengthMismatch {
            what: "POVM",
            expected: ensemble.len(),
            got: povm.len(),
        });
    }
    Ok(ensemble
        .entries()
        .iter()
        .zip(povm.elements())
        .map(|(e, el)| {
            let gap = p - e.prior;
            if gap <= SATURATION_TOL {
                0.0
            } else {
                el.trace() * gap / (4.0 * p)
            }
        })
        .collect())
}

/// Multipliers `λ` from the measurement and `ν_i = 2λ_i c_i/(1 − p̃_i)` for
/// every index after the first.
pub fn recover_multipliers(
    ensemble: &WeightedEnsemble,
    p: f64,
    conjugates: &[BlochVector],
    povm: &Povm,
) -> Result<(Vec<f64>, Vec<BlochVector>)> {
    let max_prior = ensemble.max_prior();
    if p <= max_prior {
        return Err(Error::RatioNotAbovePriors { p, max_prior });
    }
    if conjugates.len() != ensemble.len() {
        return Err(Error::LengthMismatch {
            what: "conjugates",
            expected: ensemble.len(),
            got: conjugates.len(),
        });
    }
    let lambdas = lambdas_from_povm(ensemble, p, povm)?;
    let nus = (1..ensemble.len())
        .map(|i| conjugates[i] * (2.0 * lambdas[i] / (1.0 - ensemble.prior(i) / p)))
        .collect();
    Ok((lambdas, nus))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KktReport {
    pub primal_ineq: f64,
    pub primal_eq: f64,
    pub dual_feas: f64,
    pub stationarity_p: f64,
    pub stationarity_c: f64,
    pub slackness: f64,
    pub aggregate_sum: f64,
    pub aggregate_half: f64,
    /// `ν_i` for indices `1..N`, with index 0 distinguished.
    pub nu: Vec<BlochVector>,
    /// Worst stationarity residual when another index is distinguished.
    pub rotated_stationarity: f64,
    /// `max |λ_cert − tr(Π)(p − p_i)/(4p)|`.
    pub lambda_consistency: f64,
    /// False when some `p̃_i = 1`; the system then has no solution.
    pub applicable: bool,
}

impl KktReport {
    pub fn max_residual(&self) -> f64 {
        [
            self.primal_ineq,
            self.primal_eq,
            self.dual_feas,
            self.stationarity_p,
            self.stationarity_c,
            self.slackness,
            self.aggregate_sum,
            self.aggregate_half,
            self.rotated_stationarity,
            self.lambda_consistency,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn passes(&self) -> bool {
        self.applicable && self.max_residual() <= KKT_TOL
    }
}

struct Stationarity {
    p: f64,
    c: f64,
    nu: Vec<BlochVector>,
}

fn stationarity(
    slack: &[f64],
    conjugates: &[BlochVector],
    lambdas: &[f64],
    d: usize,
) -> Stationarity {
    let n = conjugates.len();
    let nu: Vec<BlochVector> = (0..n)
        .filter(|&i| i != d)
        .map(|i| {
            if slack[i] > 0.0 {
                conjugates[i] * (2.0 * lambdas[i] / slack[i])
            } else {
                BlochVector::ZERO
            }
        })
        .collect();
    let others: Vec<usize> = (0..n).filter(|&i| i != d).collect();
    let eq13 = 1.0
        + others
            .iter()
            .zip(&nu)
            .map(|(&i, v)| v.dot(&(conjugates[d] - conjugates[i])))
            .sum::<f64>();
    let nu_sum: BlochVector = nu.iter().copied().sum();
    let eq14 = (conjugates[d] * (2.0 * lambdas[d]) + nu_sum * slack[d]).norm();
    let eq15 = others
        .iter()
        .zip(&nu)
        .map(|(&i, v)| (conjugates[i] * (2.0 * lambdas[i]) - *v * slack[i]).norm())
        .fold(0.0, f64::max);
    Stationarity {
        p: eq13.abs(),
        c: eq14.max(eq15),
        nu,
    }
}

/// Evaluates every KKT condition and the two derived aggregates exactly as
/// written; nothing is clamped.
pub fn kkt_residuals(
    ensemble: &WeightedEnsemble,
    certificate: &HelstromCertificate,
    povm: &Povm,
) -> KktReport {
    let p = certificate.p;
    let c = &certificate.conjugates;
    let lambdas = &certificate.lambdas;
    let n = ensemble.len();
    let scaled: Vec<f64> = ensemble.entries().iter().map(|e| e.prior / p).collect();
    let slack: Vec<f64> = ensemble
        .entries()
        .iter()
        .map(|e| {
            if p - e.prior <= SATURATION_TOL {
                0.0
            } else {
                1.0 - e.prior / p
            }
        })
        .collect();
    let applicable = slack.iter().all(|&s| s > 0.0) && c.len() == n && lambdas.len() == n;
    if c.len() != n || lambdas.len() != n || povm.len() != n {
        return KktReport {
            primal_ineq: f64::MAX,
            primal_eq: f64::MAX,
            dual_feas: f64::MAX,
            stationarity_p: f64::MAX,
            stationarity_c: f64::MAX,
            slackness: f64::MAX,
            aggregate_sum: f64::MAX,
            aggregate_half: f64::MAX,
            nu: Vec::new(),
            rotated_stationarity: f64::MAX,
            lambda_consistency: f64::MAX,
            applicable: false,
        };
    }

    let primal_ineq = c
        .iter()
        .map(|ci| (ci.norm_squared() - 1.0).max(0.0))
        .fold(0.0, f64::max);
    let anchor = ensemble.bloch(0) * scaled[0] + c[0] * (1.0 - scaled[0]);
    let primal_eq = (1..n)
        .map(|i| (anchor - ensemble.bloch(i) * scaled[i] - c[i] * (1.0 - scaled[i])).norm())
        .fold(0.0, f64::max);
    let dual_feas = lambdas.iter().map(|l| (-l).max(0.0)).fold(0.0, f64::max);
    let slackness = lambdas
        .iter()
        .zip(c)
        .map(|(l, ci)| (l * (ci.norm_squared() - 1.0)).abs())
        .fold(0.0, f64::max);

    let mut agg_vec = BlochVector::ZERO;
    let mut agg_scalar = 0.0;
    for i in 0..n {
        if slack[i] > 0.0 {
            agg_vec += c[i] * (lambdas[i] / slack[i]);
            agg_scalar += lambdas[i] * c[i].norm_squared() / slack[i];
        }
    }

    let primary = stationarity(&slack, c, lambdas, 0);
    let rotated_stationarity = (1..n)
        .map(|d| {
            let s = stationarity(&slack, c, lambdas, d);
            s.p.max(s.c)
        })
        .fold(0.0, f64::max);

    let lambda_consistency = match lambdas_from_povm(ensemble, p, povm) {
        Ok(from_povm) => from_povm
            .iter()
            .zip(lambdas)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max),
        Err(_) => f64::MAX,
    };

    KktReport {
        primal_ineq,
        primal_eq,
        dual_feas,
        stationarity_p: primary.p,
        stationarity_c: primary.c,
        slackness,
        aggregate_sum: agg_vec.norm(),
        aggregate_half: (agg_scalar - 0.5).abs(),
        nu: primary.nu,
        rotated_stationarity,
        lambda_consistency,
        applicable,
    }
}
