//! Command implementations over a parsed input document.

use super::input::InputDocument;
use super::report::{BoundsEcho, Report};
use super::{CliError, RunOptions};
use crate::algebra::{MatRF, Rat, RatFn};
use crate::category::{arrow_compose, arrow_new, Obj};
use crate::closedform::{
    fundamental_2x2_triangular, fundamental_for_diagonal, FundamentalMatrix, GaloisGen,
    ParamPoly, ParamSym, Representation,
};
use crate::gauge::{gauge_act, h_mul, HPair};
use crate::ratsol::{
    equivalent_with, is_trivial_with, rational_solutions, Decision, DecisionResult,
    SylvesterSystem,
};
use serde_json::json;
use std::collections::BTreeSet;

/// The batch commands exposed by the tool.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Gauge,
    HMul,
    Equivalent,
    Trivial,
    Intertwine,
    Compose,
    Rep,
    Check,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gauge => "gauge",
            Command::HMul => "hmul",
            Command::Equivalent => "equivalent",
            Command::Trivial => "trivial",
            Command::Intertwine => "intertwine",
            Command::Compose => "compose",
            Command::Rep => "rep",
            Command::Check => "check",
        }
    }

    pub fn from_name(s: &str) -> Option<Command> {
        Some(match s {
            "gauge" => Command::Gauge,
            "hmul" => Command::HMul,
            "equivalent" => Command::Equivalent,
            "trivial" => Command::Trivial,
            "intertwine" => Command::Intertwine,
            "compose" => Command::Compose,
            "rep" => Command::Rep,
            "check" => Command::Check,
            _ => return None,
        })
    }
}

/// Runs one command; returns the report and the process exit code.
pub fn run_command(
    cmd: Command,
    doc: &InputDocument,
    opts: &RunOptions,
) -> Result<(Report, i32), CliError> {
    match cmd {
        Command::Gauge => run_gauge(doc),
        Command::HMul => run_hmul(doc),
        Command::Equivalent => run_equivalent(doc, opts),
        Command::Trivial => run_trivial(doc, opts),
        Command::Intertwine => run_intertwine(doc),
        Command::Compose => run_compose(doc),
        Command::Rep => run_rep(doc),
        Command::Check => run_check(doc),
    }
}

fn run_gauge(doc: &InputDocument) -> Result<(Report, i32), CliError> {
    let u = doc.matrix("U")?;
    let a = doc.matrix("A")?;
    let out = gauge_act(u, a).map_err(|e| CliError::Domain(e.to_string()))?;
    let report = Report::new("gauge")
        .input("U", u)
        .input("A", a);
    Ok((
        Report {
            result: json!(out.to_string()),
            ..report
        },
        0,
    ))
}

fn run_hmul(doc: &InputDocument) -> Result<(Report, i32), CliError> {
    let a1 = doc.matrix("A1")?;
    let f1 = doc.matrix("F1")?;
    let a2 = doc.matrix("A2")?;
    let f2 = doc.matrix("F2")?;
    let p = HPair::new(a1.clone(), f1.clone()).map_err(|e| CliError::Domain(e.to_string()))?;
    let q = HPair::new(a2.clone(), f2.clone()).map_err(|e| CliError::Domain(e.to_string()))?;
    let prod = h_mul(&p, &q).map_err(|e| CliError::Domain(e.to_string()))?;
    let report = Report::new("hmul")
        .input("A1", a1)
        .input("F1", f1)
        .input("A2", a2)
        .input("F2", f2);
    Ok((
        Report {
            result: json!({
                "a": prod.a().to_string(),
                "f": prod.f().to_string(),
            }),
            ..report
        },
        0,
    ))
}

fn decision_report(
    report: Report,
    decision: &Decision,
    certificate: impl Fn(usize) -> String,
) -> (Report, i32) {
    let bounds = Some(BoundsEcho::from_bounds(decision.solutions.bounds_used()));
    match &decision.result {
        DecisionResult::Witness(u) => (
            Report {
                result: json!("witness-found"),
                witness: Some(u.to_string()),
                certificate: None,
                seed: Some(decision.seed),
                bounds,
                ..report
            },
            0,
        ),
        DecisionResult::NoneFound(cert) => (
            Report {
                result: json!("none-found"),
                witness: None,
                certificate: Some(certificate(cert.solution_dim)),
                seed: Some(decision.seed),
                bounds,
                ..report
            },
            1,
        ),
    }
}

fn run_equivalent(doc: &InputDocument, opts: &RunOptions) -> Result<(Report, i32), CliError> {
    let a = doc.matrix("A")?;
    let b = doc.matrix("B")?;
    let decision = equivalent_with(a, b, doc.bounds.as_ref(), opts.seed, opts.threads)?;
    let report = Report::new("equivalent").input("A", a).input("B", b);
    Ok(decision_report(report, &decision, |dim| {
        if dim == 0 {
            "no rational intertwiner: solution space over Q(x) is {0}".to_string()
        } else {
            format!(
                "solution space dimension {}; no invertible element over Q (generic determinant identically zero)",
                dim
            )
        }
    }))
}

fn run_trivial(doc: &InputDocument, opts: &RunOptions) -> Result<(Report, i32), CliError> {
    let a = doc.matrix("A")?;
    let decision = is_trivial_with(a, doc.bounds.as_ref(), opts.seed, opts.threads)?;
    let n = a.n();
    let report = Report::new("trivial").input("A", a);
    Ok(decision_report(report, &decision, move |dim| {
        format!("rational solution space dimension {}", dim / n)
    }))
}

fn run_intertwine(doc: &InputDocument) -> Result<(Report, i32), CliError> {
    let a1 = doc.matrix("A1")?;
    let a2 = doc.matrix("A2")?;
    let sys = SylvesterSystem::new(a1.clone(), a2.clone())
        .map_err(|e| CliError::Domain(e.to_string()))?;
    let sol = rational_solutions(&sys, doc.bounds.as_ref())?;
    let basis: Vec<String> = sol.basis().iter().map(|m| m.to_string()).collect();
    let report = Report::new("intertwine").input("A1", a1).input("A2", a2);
    Ok((
        Report {
            result: json!({
                "dimension": sol.dim(),
                "basis": basis,
            }),
            bounds: Some(BoundsEcho::from_bounds(sol.bounds_used())),
            ..report
        },
        0,
    ))
}

fn run_compose(doc: &InputDocument) -> Result<(Report, i32), CliError> {
    let a1 = doc.matrix("A1")?;
    let a2 = doc.matrix("A2")?;
    let a3 = doc.matrix("A3")?;
    let m = doc.matrix("M")?;
    let n = doc.matrix("N")?;
    let f = arrow_new(Obj::new(a1.clone()), Obj::new(a2.clone()), m.clone())
        .map_err(|e| CliError::Domain(e.to_string()))?;
    let g = arrow_new(Obj::new(a2.clone()), Obj::new(a3.clone()), n.clone())
        .map_err(|e| CliError::Domain(e.to_string()))?;
    let gf = arrow_compose(&g, &f).map_err(|e| CliError::Domain(e.to_string()))?;
    let report = Report::new("compose")
        .input("A1", a1)
        .input("A2", a2)
        .input("A3", a3)
        .input("M", m)
        .input("N", n);
    Ok((
        Report {
            result: json!({
                "matrix": gf.m().to_string(),
                "src": gf.src().rep().to_string(),
                "dst": gf.dst().rep().to_string(),
            }),
            ..report
        },
        0,
    ))
}

/// Builds the fundamental matrix for the supported shapes.
fn fundamental_by_shape(a: &MatRF) -> Result<FundamentalMatrix, CliError> {
    let shape_2x2 = a.n() == 2
        && a.get(0, 0).is_zero()
        && a.get(1, 0).is_zero()
        && a.get(1, 1).is_zero()
        && !a.get(0, 1).is_zero();
    let built = if shape_2x2 {
        fundamental_2x2_triangular(a)
    } else if a.is_diagonal() {
        fundamental_for_diagonal(a)
    } else {
        return Err(CliError::Domain(
            "closed-form construction supports diagonal systems and [[0, a],[0, 0]]".into(),
        ));
    };
    built.map_err(|e| CliError::Domain(e.to_string()))
}

fn sanitize(r: &Rat) -> String {
    r.to_string().replace('-', "m").replace('/', "_")
}

/// Canonical generator tables derived from the tower elements of F: one
/// cyclotomic twist per fractional power, one order-two twist per
/// exponential, one formal additive shift per logarithm. Every generator is
/// total on F's tower (identity entries fill the rest).
fn auto_generators(f: &FundamentalMatrix) -> Result<Vec<GaloisGen>, CliError> {
    let mut powers: BTreeSet<(Rat, Rat)> = BTreeSet::new();
    let mut exps: BTreeSet<RatFn> = BTreeSet::new();
    let mut logs: BTreeSet<Rat> = BTreeSet::new();
    for e in f.mat().entries() {
        for (sig, _) in e.terms() {
            for (alpha, ex) in sig.powers() {
                powers.insert((alpha.clone(), ex.clone()));
            }
            if !sig.exp_arg().is_zero() {
                exps.insert(sig.exp_arg().clone());
            }
            for (beta, _) in sig.logs() {
                logs.insert(beta.clone());
            }
        }
    }
    let fill = |mut g: GaloisGen| -> Result<GaloisGen, CliError> {
        for (alpha, ex) in &powers {
            g = g
                .with_power(alpha.clone(), ex.clone(), ParamPoly::one())
                .expect("identity twist is a unit");
        }
        for r in &exps {
            g = g
                .with_exp(r.clone(), ParamPoly::one())
                .expect("identity twist is a unit");
        }
        for beta in &logs {
            g = g.with_log(beta.clone(), ParamPoly::zero());
        }
        Ok(g)
    };
    let mut gens = Vec::new();
    for (alpha, ex) in &powers {
        let d = u32::try_from(ex.denom().clone())
            .map_err(|_| CliError::Domain("power denominator out of range".into()))?;
        let k = ex.numer().clone();
        let k = u32::try_from(((k % d) + d) % d).expect("reduced exponent");
        let name = format!("mu{}_at_{}", d, sanitize(alpha));
        let zeta = ParamSym::zeta(d);
        let mu = ParamPoly::monomial(
            crate::closedform::Monomial::one().times(&zeta, k),
            Rat::one(),
        );
        let g = fill(GaloisGen::new(name))?
            .with_power(alpha.clone(), ex.clone(), mu)
            .map_err(|e| CliError::Domain(e.to_string()))?;
        gens.push(g);
    }
    for (i, r) in exps.iter().enumerate() {
        let name = format!("negexp{}", i + 1);
        let g = fill(GaloisGen::new(name))?
            .with_exp(r.clone(), ParamPoly::from_int(-1))
            .expect("-1 is a unit");
        gens.push(g);
    }
    for (i, beta) in logs.iter().enumerate() {
        let name = format!("shift_at_{}", sanitize(beta));
        let c = ParamPoly::var(ParamSym::formal(format!("c{}", i + 1)));
        let g = fill(GaloisGen::new(name))?.with_log(beta.clone(), c);
        gens.push(g);
    }
    Ok(gens)
}

fn run_rep(doc: &InputDocument) -> Result<(Report, i32), CliError> {
    let a = doc.matrix("A")?;
    let f = fundamental_by_shape(a)?;
    let gens = if doc.galois.is_empty() {
        auto_generators(&f)?
    } else {
        doc.galois.clone()
    };
    let rep = Representation::of(&f, &gens).map_err(|e| CliError::Domain(e.to_string()))?;
    let mut matrices = serde_json::Map::new();
    for (g, c) in rep.entries() {
        matrices.insert(g.name().to_string(), json!(c.to_string()));
    }
    let fundamental: Vec<String> = (0..f.n())
        .map(|i| {
            (0..f.n())
                .map(|j| f.mat().get(i, j).to_string())
                .collect::<Vec<_>>()
                .join(", ")
        })
        .map(|row| format!("[{}]", row))
        .collect();
    let report = Report::new("rep").input("A", a);
    Ok((
        Report {
            result: json!({
                "fundamental": format!("[{}]", fundamental.join(", ")),
                "representation": serde_json::Value::Object(matrices),
            }),
            ..report
        },
        0,
    ))
}

fn run_check(doc: &InputDocument) -> Result<(Report, i32), CliError> {
    if let Ok(m) = doc.matrix("M") {
        let a1 = doc.matrix("A1")?;
        let a2 = doc.matrix("A2")?;
        let sys = SylvesterSystem::new(a1.clone(), a2.clone())
            .map_err(|e| CliError::Domain(e.to_string()))?;
        let residual = crate::ratsol::sylvester_residual(m, &sys)
            .map_err(|e| CliError::Domain(e.to_string()))?;
        let ok = residual.is_zero();
        let report = Report::new("check")
            .input("A1", a1)
            .input("A2", a2)
            .input("M", m);
        return Ok((
            Report {
                result: json!({
                    "residual": residual.to_string(),
                    "intertwiner": ok,
                }),
                ..report
            },
            if ok { 0 } else { 1 },
        ));
    }
    let a = doc.matrix("A")?;
    let f = fundamental_by_shape(a)?;
    let fundamental: Vec<String> = (0..f.n())
        .map(|i| {
            (0..f.n())
                .map(|j| f.mat().get(i, j).to_string())
                .collect::<Vec<_>>()
                .join(", ")
        })
        .map(|row| format!("[{}]", row))
        .collect();
    let report = Report::new("check").input("A", a);
    Ok((
        Report {
            result: json!({
                "fundamental": format!("[{}]", fundamental.join(", ")),
                "verified": true,
            }),
            ..report
        },
        0,
    ))
}
