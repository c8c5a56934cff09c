//! Command-line front end.

pub mod io;
pub mod report;

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::bloch::BlochVector;
use crate::closed_form::{
    mirror::{solve_mirror_symmetric, MirrorRegime},
    platonic::{platonic_ensemble, PlatonicKind, PlatonicSolid},
    solve_cone,
};
use crate::ensemble::{validate_ensemble, WeightedEnsemble};
use crate::error::Error;
use crate::family::success_probability;
use crate::oracle::{classical_diagonal_oracle, minimax_common_point, DEFAULT_MAX_ITERS};
use crate::povm::{Povm, PovmElement};
use crate::result::DiscriminationResult;
use crate::solve::{solve_auto, solve_with, MethodChoice, SolveOptions};
use crate::tolerance::BOUND_SLACK;
use report::{CrossCheck, ReferenceValue, Report, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "helstrom",
    version,
    about = "Minimum-error discrimination of qubit ensembles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, clap::Args)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Oracle tolerance and purity threshold.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an ensemble file (`<prior> <bx> <by> <bz>` per line).
    Solve {
        path: PathBuf,
        #[arg(long, default_value = "auto", value_parser = parse_method)]
        method: MethodChoice,
        /// Run the minimax oracle as well and report |Δp|.
        #[arg(long)]
        cross_check: bool,
        /// Rescale priors to sum to one instead of rejecting them.
        #[arg(long)]
        renormalize: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Check a measurement (`<a> <vx> <vy> <vz>` per line, or a JSON report)
    /// against an ensemble and its optimum.
    Verify {
        ensemble: PathBuf,
        povm: PathBuf,
        #[arg(long)]
        renormalize: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Built-in examples with their closed-form reference values.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
        #[arg(long)]
        theta: Option<f64>,
        #[arg(long)]
        p1: Option<f64>,
        #[arg(long)]
        b: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        scale: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    Diagonal,
    Cone,
    Mirror,
    Trine,
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
}

fn parse_method(s: &str) -> Result<MethodChoice, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotConverged { .. }
            | Error::NoValidCandidate
            | Error::Recovery { .. }
            | Error::Degenerate(_)
            | Error::Infeasible(_)
            | Error::RatioNotAbovePriors { .. } => EXIT_NUMERICAL,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn load_ensemble(path: &PathBuf, renormalize: bool) -> Result<WeightedEnsemble, Failure> {
    let raw = io::parse_ensemble(&read(path)?)
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
    validate_ensemble(&raw, renormalize)
        .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn load_povm(path: &PathBuf) -> Result<Vec<PovmElement>, Failure> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        let report: Report = serde_json::from_str(&text)
            .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?;
        return Ok(report.povm_elements());
    }
    io::parse_povm(&text).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn cross_check(
    ensemble: &WeightedEnsemble,
    result: &DiscriminationResult,
    common: &Common,
) -> CrossCheck {
    let s = minimax_common_point(ensemble, common.tol, DEFAULT_MAX_ITERS, common.seed);
    CrossCheck::new(result.p_opt, &s)
}

fn emit<T: serde::Serialize>(out: &mut dyn Write, format: Format, value: &T, text: String) {
    let _ = match format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(value).expect("serializable")
        ),
        Format::Text => write!(out, "{text}"),
    };
}

fn options(common: &Common) -> Result<SolveOptions, Failure> {
    if !(common.tol > 0.0 && common.tol.is_finite()) {
        return Err(Failure::invalid(format!(
            "--tol must be positive, got {}",
            common.tol
        )));
    }
    Ok(SolveOptions {
        tol: common.tol,
        seed: common.seed,
    })
}

fn cmd_solve(
    path: &PathBuf,
    method: MethodChoice,
    with_oracle: bool,
    renormalize: bool,
    common: &Common,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let opts = options(common)?;
    let ensemble = load_ensemble(path, renormalize)?;
    let result = solve_with(&ensemble, method, opts)?;
    let mut report = Report::new(&ensemble, &result, common.tol);
    if with_oracle {
        report.cross_check = Some(cross_check(&ensemble, &result, common));
    }
    emit(out, common.format, &report, report.render_text());
    Ok(EXIT_OK)
}

fn cmd_verify(
    ensemble_path: &PathBuf,
    povm_path: &PathBuf,
    renormalize: bool,
    common: &Common,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let opts = options(common)?;
    let ensemble = load_ensemble(ensemble_path, renormalize)?;
    let elements = load_povm(povm_path)?;
    if elements.len() != ensemble.len() {
        return Err(Failure::invalid(format!(
            "measurement has {} elements, ensemble has {} states",
            elements.len(),
            ensemble.len()
        )));
    }
    let povm = Povm::new(elements)
        .map_err(|e| Failure::invalid(format!("{}: {e}", povm_path.display())))?;
    let success = success_probability(&ensemble, &povm)?;
    let result = solve_auto(&ensemble, opts)?;
    let excess = success - result.p_opt;
    let report = VerifyReport {
        success,
        p_opt: result.p_opt,
        method: result.method,
        completeness: povm.completeness_gap().max(),
        min_psd_margin: povm.min_psd_margin(),
        contributions: ensemble
            .entries()
            .iter()
            .zip(povm.elements())
            .map(|(e, el)| e.prior * el.overlap(&e.state.bloch()))
            .collect(),
        bound_satisfied: excess <= BOUND_SLACK,
        excess,
    };
    emit(out, common.format, &report, report.render_text());
    Ok(if report.bound_satisfied {
        EXIT_OK
    } else {
        EXIT_BOUND
    })
}

fn equally_spaced(n: usize) -> Vec<f64> {
    (0..n).map(|k| 2.0 * PI * k as f64 / n as f64).collect()
}

fn solid(name: DemoName) -> Option<PlatonicKind> {
    Some(match name {
        DemoName::Tetrahedron => PlatonicKind::Tetrahedron,
        DemoName::Cube => PlatonicKind::Cube,
        DemoName::Octahedron => PlatonicKind::Octahedron,
        DemoName::Dodecahedron => PlatonicKind::Dodecahedron,
        DemoName::Icosahedron => PlatonicKind::Icosahedron,
        _ => return None,
    })
}

fn reference(label: impl Into<String>, value: f64) -> ReferenceValue {
    ReferenceValue {
        label: label.into(),
        value,
    }
}

struct DemoParams {
    theta: Option<f64>,
    p1: Option<f64>,
    b: Option<f64>,
    n: Option<usize>,
    scale: Option<f64>,
}

fn cmd_demo(
    name: DemoName,
    params: DemoParams,
    common: &Common,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let opts = options(common)?;
    let mut references = Vec::new();
    let mut notes = Vec::new();
    let (ensemble, result) = match name {
        DemoName::Diagonal => {
            let raw: Vec<_> = [(0.5, 0.8), (0.3, -0.5), (0.2, 0.1)]
                .iter()
                .map(|&(p, z)| (p, BlochVector::new(0.0, 0.0, z)))
                .collect();
            let e = WeightedEnsemble::new(&raw)?;
            references.push(reference(
                "classical two-outcome decision",
                classical_diagonal_oracle(&e)?,
            ));
            let r = solve_auto(&e, opts)?;
            (e, r)
        }
        DemoName::Cone | DemoName::Trine => {
            let (n, b, theta) = if name == DemoName::Trine {
                (3, 1.0, PI / 2.0)
            } else {
                (
                    params.n.unwrap_or(4),
                    params.b.unwrap_or(0.8),
                    params.theta.unwrap_or(PI / 3.0),
                )
            };
            let phis = equally_spaced(n);
            let blochs: Vec<_> = phis
                .iter()
                .map(|&f| BlochVector::spherical(b, theta, f))
                .collect();
            let e = WeightedEnsemble::uniform(&blochs)?;
            references.push(reference(
                "(1 + b sin theta)/N",
                (1.0 + b * theta.sin()) / n as f64,
            ));
            let r = if name == DemoName::Trine {
                solve_auto(&e, opts)?
            } else {
                solve_cone(n, b, theta, &phis)?
            };
            (e, r)
        }
        DemoName::Mirror => {
            let theta = params.theta.unwrap_or(PI / 3.0);
            let p1 = params.p1.unwrap_or(0.4);
            let m = solve_mirror_symmetric(theta, p1)?;
            references.push(reference("p1 (1 + sin 2theta)", m.pair_value));
            references.push(reference("three-pure-conjugate formula", m.triple_value));
            let regime = match m.regime {
                MirrorRegime::Pair => "mirrored pair only (third element zero)",
                MirrorRegime::Triple => "all three conjugates pure",
                MirrorRegime::Crossover => "crossover: both formulas agree",
            };
            notes.push(format!(
                "regime: {regime}; threshold p1' = {:.10}, p1 = {p1}",
                m.threshold
            ));
            (
                crate::closed_form::mirror::mirror_ensemble(theta, p1)?,
                m.result,
            )
        }
        _ => {
            let kind = solid(name).expect("remaining demos are solids");
            let scale = params.scale.unwrap_or(1.0);
            let (e, r) = platonic_ensemble(PlatonicSolid::new(kind, scale)?)?;
            references.push(reference("(1 + b)/N", r.via_radius));
            references.push(reference(
                format!("edge form, coefficient {:.10}", r.published_coefficient),
                r.via_edge,
            ));
            if !r.coefficient_confirmed(1e-9) {
                notes.push(format!(
                    "published edge coefficient {:.10} differs from circumradius/edge {:.10}",
                    r.published_coefficient, r.measured_coefficient
                ));
            }
            let res = solve_auto(&e, opts)?;
            (e, res)
        }
    };
    let mut report = Report::new(&ensemble, &result, common.tol);
    report.cross_check = Some(cross_check(&ensemble, &result, common));
    report.references = references;
    report.notes = notes;
    emit(out, common.format, &report, report.render_text());
    Ok(EXIT_OK)
}

/// Runs a parsed command, writing the report to `out` and diagnostics to
/// `err`. Returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let outcome = match cli.command {
        Command::Solve {
            path,
            method,
            cross_check,
            renormalize,
            common,
        } => cmd_solve(&path, method, cross_check, renormalize, &common, out),
        Command::Verify {
            ensemble,
            povm,
            renormalize,
            common,
        } => cmd_verify(&ensemble, &povm, renormalize, &common, out),
        Command::Demo {
            name,
            theta,
            p1,
            b,
            n,
            scale,
            common,
        } => cmd_demo(
            name,
            DemoParams {
                theta,
                p1,
                b,
                n,
                scale,
            },
            &common,
            out,
        ),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
