//! Solver output as a serializable report and as aligned text.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::bloch::BlochVector;
use crate::ensemble::WeightedEnsemble;
use crate::kkt::KktReport;
use crate::oracle::MinimaxSolution;
use crate::povm::PovmElement;
use crate::result::{check_result, DiscriminationResult, Method, ResultCheck};
use crate::tolerance;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateRecord {
    pub index: usize,
    pub prior: f64,
    pub bloch: BlochVector,
    pub conjugate: BlochVector,
    pub conjugate_norm: f64,
    pub pure: bool,
    pub saturated: bool,
    pub povm: PovmElement,
    pub lambda: f64,
    /// `p_i (a_i + b_i·v_i)`.
    pub contribution: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub oracle_p: f64,
    pub delta: f64,
    pub certified_gap: f64,
    pub converged: bool,
    pub active_set: Vec<usize>,
    pub iterations: usize,
}

impl CrossCheck {
    pub fn new(p_opt: f64, s: &MinimaxSolution) -> Self {
        CrossCheck {
            oracle_p: s.p_star,
            delta: (p_opt - s.p_star).abs(),
            certified_gap: s.gap,
            converged: s.converged,
            active_set: s.active_set.clone(),
            iterations: s.iterations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub oracle: f64,
    pub purity: f64,
    pub completeness: f64,
    pub psd: f64,
    pub family: f64,
    pub optimality: f64,
    pub kkt: f64,
    pub bound_slack: f64,
}

impl Tolerances {
    pub fn new(tol: f64) -> Self {
        Tolerances {
            oracle: tol,
            purity: tol,
            completeness: tolerance::COMPLETENESS_TOL,
            psd: tolerance::PSD_TOL,
            family: tolerance::FAMILY_TOL,
            optimality: tolerance::OPTIMALITY_TOL,
            kkt: tolerance::KKT_TOL,
            bound_slack: tolerance::BOUND_SLACK,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceValue {
    pub label: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub p_opt: f64,
    pub method: Method,
    pub ratio: f64,
    pub common_point: BlochVector,
    pub states: Vec<StateRecord>,
    pub kkt: KktReport,
    pub checks: ResultCheck,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub references: Vec<ReferenceValue>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub tolerances: Tolerances,
}

impl Report {
    pub fn new(ensemble: &WeightedEnsemble, result: &DiscriminationResult, tol: f64) -> Self {
        let cert = &result.certificate;
        let states = ensemble
            .entries()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let b = e.state.bloch();
                let el = result.povm.elements()[i];
                let c = cert.conjugates[i];
                StateRecord {
                    index: i,
                    prior: e.prior,
                    bloch: b,
                    conjugate: c,
                    conjugate_norm: c.norm(),
                    pure: !cert.saturated[i] && c.norm() >= 1.0 - tol,
                    saturated: cert.saturated[i],
                    povm: el,
                    lambda: cert.lambdas[i],
                    contribution: e.prior * el.overlap(&b),
                }
            })
            .collect();
        Report {
            p_opt: result.p_opt,
            method: result.method,
            ratio: cert.p,
            common_point: cert.r.0,
            states,
            kkt: result.kkt.clone(),
            checks: check_result(ensemble, result),
            cross_check: None,
            references: Vec::new(),
            notes: Vec::new(),
            tolerances: Tolerances::new(tol),
        }
    }

    pub fn povm_elements(&self) -> Vec<PovmElement> {
        self.states.iter().map(|s| s.povm).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let v = |b: &BlochVector| format!("({:>10.7}, {:>10.7}, {:>10.7})", b.x, b.y, b.z);
        let _ = writeln!(out, "p_opt         {:.12}", self.p_opt);
        let _ = writeln!(out, "method        {}", self.method);
        let _ = writeln!(out, "ratio         {:.12}", self.ratio);
        let _ = writeln!(out, "common point  {}", v(&self.common_point));
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:>3} {:>10} {:>38} {:>38} {:>10} {:>5} {:>10} {:>38} {:>11} {:>12}",
            "i",
            "prior",
            "bloch",
            "conjugate",
            "|c|",
            "pure",
            "povm a",
            "povm v",
            "lambda",
            "contribution"
        );
        for s in &self.states {
            let pure = if s.saturated {
                "sat"
            } else if s.pure {
                "yes"
            } else {
                "no"
            };
            let _ = writeln!(
                out,
                "{:>3} {:>10.7} {:>38} {:>38} {:>10.7} {:>5} {:>10.7} {:>38} {:>11.3e} {:>12.9}",
                s.index,
                s.prior,
                v(&s.bloch),
                v(&s.conjugate),
                s.conjugate_norm,
                pure,
                s.povm.a,
                v(&s.povm.v),
                s.lambda,
                s.contribution
            );
        }
        let k = &self.kkt;
        let _ = writeln!(out);
        let applicable = if k.applicable {
            "yes"
        } else {
            "no (a scaled prior equals 1)"
        };
        let _ = writeln!(out, "KKT residuals (applicable: {applicable})");
        for (name, value) in [
            ("primal inequality", k.primal_ineq),
            ("primal equality", k.primal_eq),
            ("dual feasibility", k.dual_feas),
            ("stationarity in p", k.stationarity_p),
            ("stationarity in c", k.stationarity_c),
            ("complementary slackness", k.slackness),
            ("sum lambda c/(1-p~)", k.aggregate_sum),
            ("sum lambda |c|^2/(1-p~) - 1/2", k.aggregate_half),
            ("other distinguished index", k.rotated_stationarity),
            ("lambda vs measurement", k.lambda_consistency),
        ] {
            let _ = writeln!(out, "  {name:<30} {value:.3e}");
        }
        let c = &self.checks;
        let _ = writeln!(out);
        let _ = writeln!(out, "checks ({})", if c.passes() { "pass" } else { "FAIL" });
        let _ = writeln!(out, "  {:<30} {:.3e}", "completeness", c.completeness);
        let _ = writeln!(out, "  {:<30} {:.3e}", "min PSD margin", c.min_psd_margin);
        let _ = writeln!(out, "  {:<30} {:.3e}", "Tr(tau Pi)", c.optimality);
        let _ = writeln!(out, "  {:<30} {:.3e}", "family residual", c.family_residual);
        let _ = writeln!(out, "  {:<30} {:.3e}", "|success - p_opt|", c.success_gap);
        if let Some(x) = &self.cross_check {
            let _ = writeln!(out);
            let _ = writeln!(out, "oracle cross-check");
            let _ = writeln!(out, "  {:<30} {:.12}", "oracle p", x.oracle_p);
            let _ = writeln!(out, "  {:<30} {:.3e}", "|delta p|", x.delta);
            let _ = writeln!(out, "  {:<30} {:.3e}", "certified gap", x.certified_gap);
            let _ = writeln!(out, "  {:<30} {}", "converged", x.converged);
            let _ = writeln!(out, "  {:<30} {:?}", "active set", x.active_set);
        }
        if !self.references.is_empty() {
            let _ = writeln!(out);
            let _ = writeln!(out, "reference values");
            for r in &self.references {
                let _ = writeln!(
                    out,
                    "  {:<30} {:.12}  (computed {:.12}, diff {:.3e})",
                    r.label,
                    r.value,
                    self.p_opt,
                    (r.value - self.p_opt).abs()
                );
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let t = &self.tolerances;
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "tolerances: oracle {:e}, purity {:e}, completeness {:e}, psd {:e}, family {:e}, optimality {:e}, kkt {:e}, bound slack {:e}",
            t.oracle, t.purity, t.completeness, t.psd, t.family, t.optimality, t.kkt, t.bound_slack
        );
        out
    }
}

/// Outcome of checking a user-supplied measurement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub success: f64,
    pub p_opt: f64,
    pub method: Method,
    pub completeness: f64,
    pub min_psd_margin: f64,
    pub contributions: Vec<f64>,
    pub bound_satisfied: bool,
    pub excess: f64,
}

impl VerifyReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "success       {:.12}", self.success);
        let _ = writeln!(out, "p_opt         {:.12} ({})", self.p_opt, self.method);
        let _ = writeln!(out, "completeness  {:.3e}", self.completeness);
        let _ = writeln!(out, "min PSD       {:.3e}", self.min_psd_margin);
        for (i, c) in self.contributions.iter().enumerate() {
            let _ = writeln!(out, "  state {i:>3} contribution {c:.12}");
        }
        let status = if self.bound_satisfied {
            "satisfied"
        } else {
            "VIOLATED"
        };
        let _ = writeln!(
            out,
            "bound         {status} (success - p_opt = {:.3e})",
            self.excess
        );
        out
    }
}
