use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::certificate::HelstromCertificate;
use crate::ensemble::WeightedEnsemble;
use crate::error::{Error, Result};
use crate::family::{success_probability, verify_weak_family};
use crate::kkt::{kkt_residuals, KktReport};
use crate::povm::Povm;
use crate::tolerance::{COMPLETENESS_TOL, OPTIMALITY_TOL, PSD_TOL, SUCCESS_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    TwoState,
    ThreeStateBoundary,
    ThreeStateInterior,
    ThreeStateDominant,
    SymmetricShell,
    Diagonal,
    Cone,
    MirrorSymmetric,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 9] = [
        Method::TwoState,
        Method::ThreeStateBoundary,
        Method::ThreeStateInterior,
        Method::ThreeStateDominant,
        Method::SymmetricShell,
        Method::Diagonal,
        Method::Cone,
        Method::MirrorSymmetric,
        Method::Oracle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::TwoState => "two-state",
            Method::ThreeStateBoundary => "three-state-boundary",
            Method::ThreeStateInterior => "three-state-interior",
            Method::ThreeStateDominant => "three-state-dominant",
            Method::SymmetricShell => "symmetric-shell",
            Method::Diagonal => "diagonal",
            Method::Cone => "cone",
            Method::MirrorSymmetric => "mirror-symmetric",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown method {s:?}")))
    }
}

/// Optimal success probability with its measurement and certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscriminationResult {
    pub p_opt: f64,
    pub povm: Povm,
    pub certificate: HelstromCertificate,
    pub kkt: KktReport,
    pub method: Method,
}

impl DiscriminationResult {
    pub fn new(
        ensemble: &WeightedEnsemble,
        p_opt: f64,
        povm: Povm,
        certificate: HelstromCertificate,
        method: Method,
    ) -> Self {
        let kkt = kkt_residuals(ensemble, &certificate, &povm);
        DiscriminationResult {
            p_opt,
            povm,
            certificate,
            kkt,
            method,
        }
    }
}

/// Every check a solver output should pass, gathered in one place.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultCheck {
    pub completeness: f64,
    pub min_psd_margin: f64,
    /// `Tr(τ_i Π_i)` over nonzero, non-saturated elements.
    pub optimality: f64,
    pub family_residual: f64,
    pub family_valid: bool,
    pub success: f64,
    pub success_gap: f64,
    pub ratio_gap: f64,
    pub kkt_max: f64,
    pub kkt_applicable: bool,
    pub pure_count: usize,
    pub max_lambda: f64,
    pub saturated: bool,
}

impl ResultCheck {
    /// The checks that hold in every regime.
    pub fn passes_measurement(&self) -> bool {
        self.completeness <= COMPLETENESS_TOL
            && self.min_psd_margin >= -PSD_TOL
            && self.optimality <= OPTIMALITY_TOL
            && self.family_valid
            && self.success_gap <= SUCCESS_TOL
            && self.ratio_gap <= 1e-10
    }

    /// The KKT-side structure: full residuals, two pure conjugates, some `λ > 0`.
    pub fn passes_kkt(&self) -> bool {
        self.kkt_applicable
            && self.kkt_max <= crate::tolerance::KKT_TOL
            && self.pure_count >= 2
            && self.max_lambda > 0.0
    }

    pub fn passes(&self) -> bool {
        self.passes_measurement() && (self.saturated || self.passes_kkt())
    }
}

pub fn check_result(ensemble: &WeightedEnsemble, result: &DiscriminationResult) -> ResultCheck {
    let cert = &result.certificate;
    let family = verify_weak_family(ensemble, cert.p, &cert.conjugates);
    let optimality = result
        .povm
        .elements()
        .iter()
        .zip(&cert.conjugates)
        .zip(&cert.saturated)
        .filter(|((el, _), &sat)| !el.is_zero() && !sat)
        .map(|((el, c), _)| el.overlap(c).abs())
        .fold(0.0, f64::max);
    let success = success_probability(ensemble, &result.povm).unwrap_or(f64::NAN);
    ResultCheck {
        completeness: result.povm.completeness_gap().max(),
        min_psd_margin: result.povm.min_psd_margin(),
        optimality,
        family_residual: family.residual,
        family_valid: family.valid,
        success,
        success_gap: (success - result.p_opt).abs(),
        ratio_gap: (result.p_opt - cert.p).abs(),
        kkt_max: result.kkt.max_residual(),
        kkt_applicable: result.kkt.applicable,
        pure_count: cert.pure_count(),
        max_lambda: cert.max_lambda(),
        saturated: cert.is_saturated(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
            let json = serde_json::to_string(&m).unwrap();
            assert_eq!(json, format!("\"{}\"", m.name()));
        }
        assert!("nope".parse::<Method>().is_err());
    }
}
