//! Three-state optimum by candidate enumeration.
//!
//! Candidates: one per pair with the third conjugate mixed (`Π_k = 0`), one
//! per root of the interior quadratic with all three conjugates pure, and one
//! per state whose prior dominates (`Π_k = I`). Every candidate is checked
//! against the full certificate suite and the smallest valid ratio wins.

use nalgebra::{Matrix2, Vector2};
use serde::{Deserialize, Serialize};

use crate::bloch::BlochVector;
use crate::certificate::clamp_to_ball;
use crate::closed_form::finish;
use crate::ensemble::WeightedEnsemble;
use crate::error::{Error, Result};
use crate::family::CommonPoint;
use crate::oracle::solve_oracle;
use crate::povm::{Povm, PovmElement};
use crate::result::{check_result, DiscriminationResult, Method};
use crate::solve::SolveOptions;
use crate::tolerance::{DENOMINATOR_TOL, GRAM_TOL, LAMBDA_TRIPLE_TOL, PURITY_TOL};
use crate::weights::balance_by_support;

/// Pairwise squared distances of the weighted points and the coefficients of
/// `L p² + M p + N = 0` for the interior ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThreeStateCoefficients {
    pub i: f64,
    pub j: f64,
    pub k: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
}

impl ThreeStateCoefficients {
    pub fn new(ensemble: &WeightedEnsemble) -> Result<Self> {
        if ensemble.len() != 3 {
            return Err(Error::WrongShape(format!(
                "three-state solver got {} states",
                ensemble.len()
            )));
        }
        let q = ensemble.weighted_points();
        let (p1, p2, p3) = (ensemble.prior(0), ensemble.prior(1), ensemble.prior(2));
        let i = (q[0] - q[1]).norm_squared();
        let j = (q[0] - q[2]).norm_squared();
        let k = (q[1] - q[2]).norm_squared();
        let (s1, s2, s3) = (p1 * p1, p2 * p2, p3 * p3);

        let l = 4.0 * (-p1 * p2 + p1 * p3 + p2 * p3 - s3) * i
            + 4.0 * (p1 * p2 - p1 * p3 + p2 * p3 - s2) * j
            + 4.0 * (p1 * p2 + p1 * p3 - p2 * p3 - s1) * k
            + 2.0 * i * j
            + 2.0 * i * k
            + 2.0 * j * k
            - i * i
            - j * j
            - k * k;
        let m = 2.0
            * ((s1 * p2 + p1 * s2 - s1 * p3 - p1 * s3 - s2 * p3 - p2 * s3 + 2.0 * s3 * p3)
                - p1 * k
                - p2 * j
                + p3 * i)
            * i
            + 2.0
                * ((-s1 * p2 - p1 * s2 + s1 * p3 + p1 * s3 - s2 * p3 - p2 * s3 + 2.0 * s2 * p2)
                    - p1 * k
                    + p2 * j
                    - p3 * i)
                * j
            + 2.0
                * ((-s1 * p2 - p1 * s2 - s1 * p3 - p1 * s3 + s2 * p3 + p2 * s3 + 2.0 * s1 * p1)
                    + p1 * k
                    - p2 * j
                    - p3 * i)
                * k;
        let n = (-s1 * s2 + s1 * s3 + s2 * s3 - s3 * s3 + s1 * k + s2 * j - s3 * i) * i
            + (s1 * s2 - s1 * s3 + s2 * s3 - s2 * s2 + s1 * k - s2 * j + s3 * i) * j
            + (s1 * s2 + s1 * s3 - s2 * s3 - s1 * s1 - s1 * k + s2 * j + s3 * i) * k
            - i * j * k;
        Ok(ThreeStateCoefficients { i, j, k, l, m, n })
    }

    /// Real roots, the `(−M + √(M² − 4LN))/(2L)` root first.
    pub fn roots(&self) -> Vec<f64> {
        let (l, m, n) = (self.l, self.m, self.n);
        let scale = l.abs().max(m.abs()).max(n.abs());
        if scale == 0.0 {
            return Vec::new();
        }
        if l.abs() <= 1e-14 * scale {
            return if m != 0.0 { vec![-n / m] } else { Vec::new() };
        }
        let mut disc = m * m - 4.0 * l * n;
        if disc < 0.0 {
            if disc > -1e-12 * m * m {
                disc = 0.0;
            } else {
                return Vec::new();
            }
        }
        let s = disc.sqrt();
        vec![(-m + s) / (2.0 * l), (-m - s) / (2.0 * l)]
    }
}

/// `(c₁·c₂)² + (c₁·c₃)² + (c₂·c₃)² − 2(c₁·c₂)(c₁·c₃)(c₂·c₃) − 1`, zero
/// exactly when three unit vectors with these dot products are coplanar.
pub fn gram_identity_residual(dots: [f64; 3]) -> f64 {
    let [d12, d13, d23] = dots;
    d12 * d12 + d13 * d13 + d23 * d23 - 2.0 * d12 * d13 * d23 - 1.0
}

/// Both closed-form multiplier triples for three pure coplanar conjugates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambdaTriples {
    pub first: [f64; 3],
    pub second: [f64; 3],
    pub disagreement: f64,
}

/// Evaluates both multiplier triples from the conjugate dot products
/// `(c₁·c₂, c₁·c₃, c₂·c₃)` and the scaled priors `p̃_i`.
pub fn lambda_triples(dots: [f64; 3], scaled_priors: [f64; 3]) -> Result<LambdaTriples> {
    let [d12, d13, d23] = dots;
    let w = scaled_priors.map(|t| 1.0 - t);
    let pivot = 1.0 + d12 - d13 - d23;
    let den1 = 2.0 * pivot * (1.0 - d12);
    let den2 =
        2.0 * (2.0 * d12 * d13 * d23 - d13 * d23 - d12 * d23 - d12 * d12 - d13 * d13 + d12 + d13);
    for den in [den1, den2, pivot] {
        if den.abs() < DENOMINATOR_TOL {
            return Err(Error::Degenerate(format!(
                "multiplier denominator {den:.3e} vanishes (collinear conjugates)"
            )));
        }
    }
    let first = [
        w[0] * (d12 * d23 - d13) / den1,
        w[1] * (d12 * d13 - d23) / den1,
        w[2] * (1.0 + d12) / (2.0 * pivot),
    ];
    let second = [
        w[0] * (d23 * d23 - 1.0) / den2,
        w[1] * (d12 - d13 * d23) / den2,
        w[2] * (d13 - d12 * d23) / den2,
    ];
    let disagreement = (0..3)
        .map(|i| (first[i] - second[i]).abs())
        .fold(0.0, f64::max);
    Ok(LambdaTriples {
        first,
        second,
        disagreement,
    })
}

/// The first multiplier triple, rejected unless the second one agrees.
pub fn lambdas_three_state(dots: [f64; 3], scaled_priors: [f64; 3]) -> Result<[f64; 3]> {
    let t = lambda_triples(dots, scaled_priors)?;
    if t.disagreement > LAMBDA_TRIPLE_TOL {
        return Err(Error::Degenerate(format!(
            "multiplier triples disagree by {:.3e} (conjugates not coplanar)",
            t.disagreement
        )));
    }
    Ok(t.first)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CandidateKind {
    /// Conjugates of the pair pure and antipodal, the third mixed.
    Boundary { pair: (usize, usize) },
    /// All three conjugates pure; `root` indexes the quadratic's roots.
    Interior { root: usize },
    /// `p` equals the prior of `index`.
    Dominant { index: usize },
}

impl CandidateKind {
    pub fn method(&self) -> Method {
        match self {
            CandidateKind::Boundary { .. } => Method::ThreeStateBoundary,
            CandidateKind::Interior { .. } => Method::ThreeStateInterior,
            CandidateKind::Dominant { .. } => Method::ThreeStateDominant,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateReport {
    pub kind: CandidateKind,
    pub p: Option<f64>,
    pub valid: bool,
    pub reason: Option<String>,
    /// Disagreement of the two multiplier triples (interior only).
    pub lambda_disagreement: Option<f64>,
    pub gram_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThreeStateSolution {
    pub result: DiscriminationResult,
    pub chosen: CandidateKind,
    pub candidates: Vec<CandidateReport>,
}

struct Built {
    result: DiscriminationResult,
    lambda_disagreement: Option<f64>,
    gram_residual: Option<f64>,
}

fn validate(ensemble: &WeightedEnsemble, result: &DiscriminationResult) -> Result<()> {
    let max_prior = ensemble.max_prior();
    if result.p_opt < max_prior - 1e-12 {
        return Err(Error::RatioNotAbovePriors {
            p: result.p_opt,
            max_prior,
        });
    }
    if let Some(l) = result.certificate.lambdas.iter().find(|&&l| l < -1e-10) {
        return Err(Error::Infeasible(format!("negative multiplier {l:.3e}")));
    }
    let check = check_result(ensemble, result);
    if !check.passes() {
        return Err(Error::Infeasible(format!(
            "certificate checks failed (family {:.2e}, success gap {:.2e}, kkt {:.2e})",
            check.family_residual, check.success_gap, check.kkt_max
        )));
    }
    Ok(())
}

fn boundary(ensemble: &WeightedEnsemble, a: usize, b: usize) -> Result<Built> {
    let q = ensemble.weighted_points();
    let (pa, pb) = (ensemble.prior(a), ensemble.prior(b));
    let diff = q[b] - q[a];
    let d = diff.norm();
    if d <= (pa - pb).abs() || d == 0.0 {
        return Err(Error::Infeasible(
            "pair ratio does not exceed both priors".into(),
        ));
    }
    let p = 0.5 * (pa + pb + d);
    let ca = diff / d;
    let r = q[a] + ca * (p - pa);
    let k = 3 - a - b;
    let pk = ensemble.prior(k);
    if p <= pk {
        return Err(Error::Infeasible(
            "third prior exceeds the pair ratio".into(),
        ));
    }
    let ck = clamp_to_ball((r - q[k]) / (p - pk));
    if ck.norm() > 1.0 + PURITY_TOL {
        return Err(Error::Infeasible(format!(
            "third conjugate has norm {:.6}",
            ck.norm()
        )));
    }
    let mut elements = [PovmElement::ZERO; 3];
    elements[a] = PovmElement::scaled_projector(1.0, -ca);
    elements[b] = PovmElement::scaled_projector(1.0, ca);
    let povm = Povm::new(elements.to_vec())?;
    Ok(Built {
        result: finish(
            ensemble,
            p,
            CommonPoint(r),
            povm,
            Method::ThreeStateBoundary,
        )?,
        lambda_disagreement: None,
        gram_residual: None,
    })
}

/// `c_i·c_j = ((p−p_i)² + (p−p_j)² − |p_i b_i − p_j b_j|²) / (2(p−p_i)(p−p_j))`
/// for pure conjugates sharing one common point.
pub fn interior_dots(ensemble: &WeightedEnsemble, p: f64) -> [f64; 3] {
    let q = ensemble.weighted_points();
    let rho: Vec<f64> = (0..3).map(|i| p - ensemble.prior(i)).collect();
    let dot = |a: usize, b: usize| {
        (rho[a] * rho[a] + rho[b] * rho[b] - (q[a] - q[b]).norm_squared()) / (2.0 * rho[a] * rho[b])
    };
    [dot(0, 1), dot(0, 2), dot(1, 2)]
}

/// Point in the affine hull of the weighted points at distance `p − p_i`
/// from each; exact when `p` solves the interior quadratic.
fn common_point(q: &[BlochVector], radii: [f64; 3]) -> Result<BlochVector> {
    let e1 = q[1] - q[0];
    let e2 = q[2] - q[0];
    // 2 r·(q_j − q_1) = |q_j|² − |q_1|² − ρ_j² + ρ_1², with r = q_1 + s e1 + t e2
    let rhs = |j: usize, e: &BlochVector| {
        0.5 * (q[j].norm_squared() - q[0].norm_squared() - radii[j] * radii[j]
            + radii[0] * radii[0])
            - q[0].dot(e)
    };
    let gram = Matrix2::new(e1.dot(&e1), e1.dot(&e2), e2.dot(&e1), e2.dot(&e2));
    let b = Vector2::new(rhs(1, &e1), rhs(2, &e2));
    let st = gram
        .svd(true, true)
        .solve(&b, 1e-13)
        .map_err(|e| Error::Degenerate(e.to_string()))?;
    Ok(q[0] + e1 * st[0] + e2 * st[1])
}

/// `|r(p) − q₁| − (p − p₁)`, where `r(p)` already matches the other two
/// distance differences; zero exactly at the interior ratio.
fn interior_residual(q: &[BlochVector], priors: [f64; 3], p: f64) -> Option<f64> {
    let rho = priors.map(|pi| p - pi);
    let r = common_point(q, rho).ok()?;
    Some(r.distance(&q[0]) - rho[0])
}

/// Secant polish of a quadratic root against the geometric condition it
/// encodes; the quadratic's coefficients lose digits to cancellation when
/// conjugates are nearly parallel.
fn polish_root(q: &[BlochVector], priors: [f64; 3], root: f64) -> f64 {
    let Some(mut h0) = interior_residual(q, priors, root) else {
        return root;
    };
    let mut best = (h0.abs(), root);
    let mut p0 = root;
    let mut p1 = root + 1e-7 * root.abs().max(1e-3);
    for _ in 0..12 {
        let Some(h1) = interior_residual(q, priors, p1) else {
            break;
        };
        if h1.abs() < best.0 {
            best = (h1.abs(), p1);
        }
        if h1 == 0.0 || h1 == h0 {
            break;
        }
        let next = p1 - h1 * (p1 - p0) / (h1 - h0);
        (p0, h0, p1) = (p1, h1, next);
        if !p1.is_finite() || (p1 - p0).abs() <= 1e-16 * p1.abs() {
            break;
        }
    }
    best.1
}

fn interior(ensemble: &WeightedEnsemble, root: f64) -> Result<Built> {
    let q = ensemble.weighted_points();
    let priors = [ensemble.prior(0), ensemble.prior(1), ensemble.prior(2)];
    let p = if root.is_finite() && priors.iter().all(|&pi| root > pi) {
        polish_root(&q, priors, root)
    } else {
        root
    };
    if !(p.is_finite() && p <= 1.0 + 1e-12) {
        return Err(Error::Infeasible(format!(
            "root {p} outside the admissible range"
        )));
    }
    if priors.iter().any(|&pi| p <= pi) {
        return Err(Error::RatioNotAbovePriors {
            p,
            max_prior: ensemble.max_prior(),
        });
    }
    let rho = priors.map(|pi| p - pi);
    let report = |reason: String| Error::Infeasible(reason);
    let r = common_point(&q, rho)?;
    let mut dirs = [BlochVector::ZERO; 3];
    for i in 0..3 {
        let c = (r - q[i]) / rho[i];
        if (c.norm() - 1.0).abs() > PURITY_TOL {
            return Err(report(format!("conjugate {i} has norm {:.12}", c.norm())));
        }
        dirs[i] = c / c.norm();
    }
    let dots = [
        dirs[0].dot(&dirs[1]),
        dirs[0].dot(&dirs[2]),
        dirs[1].dot(&dirs[2]),
    ];
    let gram = gram_identity_residual(dots);
    let triples = lambda_triples(dots, priors.map(|pi| pi / p))?;
    if gram.abs() > GRAM_TOL {
        return Err(report(format!("coplanarity residual {gram:.3e}")));
    }
    if triples.disagreement > LAMBDA_TRIPLE_TOL {
        return Err(report(format!(
            "multiplier triples disagree by {:.3e}",
            triples.disagreement
        )));
    }
    if let Some(l) = triples.first.iter().find(|&&l| l < -1e-10) {
        return Err(report(format!("negative multiplier {l:.3e}")));
    }
    // weights straight from the directions keep completeness exact when a
    // multiplier is close to zero and the triples lose digits
    let outward = dirs.map(|d| -d);
    let balance = balance_by_support(&outward, 2.0, 1e-9)
        .ok_or_else(|| report("conjugates admit no balancing weights".into()))?;
    let drift = (0..3)
        .map(|i| (balance.weights[i] * rho[i] / (4.0 * p) - triples.first[i]).abs())
        .fold(0.0, f64::max);
    if drift > LAMBDA_TRIPLE_TOL {
        return Err(report(format!(
            "balancing weights drift {drift:.3e} from the multipliers"
        )));
    }
    let elements: Vec<PovmElement> = (0..3)
        .map(|i| PovmElement::scaled_projector(balance.weights[i], outward[i]))
        .collect();
    let povm = Povm::new(elements)?;
    Ok(Built {
        result: finish(
            ensemble,
            p,
            CommonPoint(r),
            povm,
            Method::ThreeStateInterior,
        )?,
        lambda_disagreement: Some(triples.disagreement),
        gram_residual: Some(gram),
    })
}

fn dominant(ensemble: &WeightedEnsemble, k: usize) -> Result<Built> {
    let q = ensemble.weighted_points();
    let pk = ensemble.prior(k);
    for i in 0..3 {
        if i != k && q[k].distance(&q[i]) > pk - ensemble.prior(i) + 1e-12 {
            return Err(Error::Infeasible(format!(
                "prior {k} does not dominate state {i}"
            )));
        }
    }
    let mut elements = [PovmElement::ZERO; 3];
    elements[k] = PovmElement::IDENTITY;
    let povm = Povm::new(elements.to_vec())?;
    Ok(Built {
        result: finish(
            ensemble,
            pk,
            CommonPoint(q[k]),
            povm,
            Method::ThreeStateDominant,
        )?,
        lambda_disagreement: None,
        gram_residual: None,
    })
}

/// Enumerates and validates all candidates; errors if none survives.
pub fn enumerate_three_state(ensemble: &WeightedEnsemble) -> Result<ThreeStateSolution> {
    let coeffs = ThreeStateCoefficients::new(ensemble)?;
    let mut attempts: Vec<(CandidateKind, Option<f64>, Result<Built>)> = Vec::new();
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        attempts.push((
            CandidateKind::Boundary { pair: (a, b) },
            None,
            boundary(ensemble, a, b),
        ));
    }
    for (root, p) in coeffs.roots().into_iter().enumerate() {
        attempts.push((
            CandidateKind::Interior { root },
            Some(p),
            interior(ensemble, p),
        ));
    }
    for k in 0..3 {
        attempts.push((
            CandidateKind::Dominant { index: k },
            None,
            dominant(ensemble, k),
        ));
    }

    let mut reports = Vec::with_capacity(attempts.len());
    let mut best: Option<(CandidateKind, DiscriminationResult)> = None;
    for (kind, root, attempt) in attempts {
        let outcome = attempt.and_then(|built| validate(ensemble, &built.result).map(|_| built));
        match outcome {
            Ok(built) => {
                reports.push(CandidateReport {
                    kind,
                    p: Some(built.result.p_opt),
                    valid: true,
                    reason: None,
                    lambda_disagreement: built.lambda_disagreement,
                    gram_residual: built.gram_residual,
                });
                if best
                    .as_ref()
                    .is_none_or(|(_, b)| built.result.p_opt < b.p_opt)
                {
                    best = Some((kind, built.result));
                }
            }
            Err(e) => reports.push(CandidateReport {
                kind,
                p: root,
                valid: false,
                reason: Some(e.to_string()),
                lambda_disagreement: None,
                gram_residual: None,
            }),
        }
    }
    let (chosen, result) = best.ok_or(Error::NoValidCandidate)?;
    Ok(ThreeStateSolution {
        result,
        chosen,
        candidates: reports,
    })
}

/// Closed-form three-state optimum; when no candidate validates, the oracle
/// answers and the result is tagged `oracle`.
pub fn solve_three_state(ensemble: &WeightedEnsemble) -> Result<DiscriminationResult> {
    match enumerate_three_state(ensemble) {
        Ok(s) => Ok(s.result),
        Err(Error::NoValidCandidate) => {
            let opts = SolveOptions::default();
            solve_oracle(ensemble, opts.tol, opts.seed)
        }
        Err(e) => Err(e),
    }
}
