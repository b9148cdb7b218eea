//! The commands behind `mcfix`. Each returns the text to print and an exit
//! code, so they can be tested without spawning the binary.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use mcfix_core::cdga::{check_cdga, tensor_model_equivariant, CDGAModel};
use mcfix_core::liealg::{
    check_dglie_identities, check_equivariance, check_filtration_law, check_jacobi, check_symmetry,
    default_jacobi_range, Convention, GSLInfinityAlgebra,
};
use mcfix_core::mc::{homotopy_fixed_pi, mapping_space_pi, PiReport};
use mcfix_core::qlinalg::{FiniteGroup, GroupRepresentation, SparseVec};
use mcfix_core::report::CheckReport;
use mcfix_core::simpl::{abelian_target, verify_retraction, Fault, RetractionOptions, DEFAULT_MAX_CELLS};
use mcfix_core::{Error, Result};

use crate::doc::Problem;

pub const SCHEMA: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_SCHEMA: i32 = 3;
pub const EXIT_HYPOTHESIS: i32 = 4;
pub const EXIT_CAPACITY: i32 = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, code: EXIT_OK }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) | Error::DegreeOutOfRange { .. } => EXIT_SCHEMA,
        Error::Hypothesis(_) => EXIT_HYPOTHESIS,
        Error::Capacity(_) => EXIT_CAPACITY,
        Error::Structural(_) => EXIT_FAIL,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum TableFormat {
    Md,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

fn law_report(name: &str, rep: &GroupRepresentation) -> CheckReport {
    match rep.law_violation() {
        None => CheckReport::pass(name, rep.group().order() * rep.group().order()),
        Some(msg) => CheckReport::fail(name, None, Vec::new(), msg, 1),
    }
}

fn cdga_with_action(a: &CDGAModel, group: &FiniteGroup) -> Result<CDGAModel> {
    match a.action() {
        Some(_) => Ok(a.clone()),
        None => a.clone().with_action(Some(GroupRepresentation::trivial(group.clone(), a.carrier().clone()))),
    }
}

/// Every structural check that applies to the document.
pub fn check_reports(p: &Problem) -> Vec<CheckReport> {
    let l = &p.algebra.algebra;
    let mut out = vec![check_symmetry(l), check_filtration_law(l)];
    if l.convention() == Convention::DgLie {
        out.push(check_dglie_identities(l));
    }
    out.push(check_jacobi(l, p.caps.arity.unwrap_or_else(|| default_jacobi_range(l))));
    out.push(law_report("group law of the action", &p.algebra.action));
    out.push(check_equivariance(&p.algebra));
    if let Some(a) = &p.cdga {
        out.push(check_cdga(a));
        if let Some(rep) = a.action() {
            out.push(law_report("group law of the cdga action", rep));
        }
    }
    out
}

pub fn check(p: &Problem, format: ReportFormat) -> Outcome {
    let reports = check_reports(p);
    let passed = reports.iter().all(CheckReport::passed);
    let output = match format {
        ReportFormat::Text => {
            let mut s = String::new();
            for r in &reports {
                writeln!(s, "{r}").unwrap();
            }
            writeln!(s, "{}", if passed { "all checks pass" } else { "FAILED" }).unwrap();
            s
        }
        ReportFormat::Json => json_line(&json!({ "schema": SCHEMA, "passed": passed, "checks": reports })),
    };
    Outcome { output, code: if passed { EXIT_OK } else { EXIT_FAIL } }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantRow {
    pub degree: i32,
    pub ambient_dim: usize,
    pub invariant_dim: usize,
    pub basis: Vec<String>,
}

/// Scales `v` so that its first coefficient is 1.
fn normalized(v: &SparseVec) -> SparseVec {
    match v.iter().next() {
        Some((_, c)) => v.scaled(&c.recip()),
        None => v.clone(),
    }
}

/// The algebra whose invariants are tabulated: `L`, or `L ⊗ A` with the
/// diagonal action when a cdga is present.
fn tabulated(p: &Problem, max_degree: i32) -> Result<GSLInfinityAlgebra> {
    match &p.cdga {
        None => Ok(p.algebra.clone()),
        Some(a) => {
            let a = cdga_with_action(a, p.algebra.action.group())?;
            let t = tensor_model_equivariant(&a, &p.algebra, max_degree)?;
            Ok(t.equivariant().expect("both factors carry an action"))
        }
    }
}

pub fn invariant_rows(p: &Problem, max_degree: i32) -> Result<Vec<InvariantRow>> {
    let gl = tabulated(p, max_degree)?;
    let carrier = gl.algebra.carrier();
    Ok((1..=max_degree)
        .map(|n| {
            let inv = gl.action.invariants(n);
            InvariantRow {
                degree: n,
                ambient_dim: carrier.dim_in(n),
                invariant_dim: inv.len(),
                basis: inv.iter().map(|v| normalized(v).display_with(carrier.labels()).to_string()).collect(),
            }
        })
        .collect())
}

pub fn invariants_markdown(rows: &[InvariantRow]) -> String {
    let mut s = String::from("| degree | ambient dim | invariant dim | invariant basis |\n|---|---|---|---|\n");
    for r in rows {
        writeln!(s, "| {} | {} | {} | {} |", r.degree, r.ambient_dim, r.invariant_dim, r.basis.join("; ")).unwrap();
    }
    s
}

fn invariants_csv(rows: &[InvariantRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["degree", "ambient_dim", "invariant_dim", "basis"]).unwrap();
    for r in rows {
        w.write_record([r.degree.to_string(), r.ambient_dim.to_string(), r.invariant_dim.to_string(), r.basis.join("; ")])
            .unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

fn default_degree(p: &Problem) -> i32 {
    p.caps.max_degree.unwrap_or_else(|| p.algebra.algebra.carrier().degrees().iter().copied().max().unwrap_or(1).max(1))
}

pub fn invariants(p: &Problem, max_degree: Option<i32>, format: TableFormat) -> Result<Outcome> {
    let n = max_degree.unwrap_or_else(|| default_degree(p));
    if n < 1 {
        return Err(Error::Input("--max-degree must be positive".into()));
    }
    let rows = invariant_rows(p, n)?;
    Ok(Outcome::ok(match format {
        TableFormat::Md => invariants_markdown(&rows),
        TableFormat::Csv => invariants_csv(&rows),
        TableFormat::Json => json_line(&json!({ "schema": SCHEMA, "rows": rows })),
    }))
}

pub fn pi_report(p: &Problem, max_degree: i32) -> Result<PiReport> {
    match &p.cdga {
        None => homotopy_fixed_pi(&p.algebra, max_degree),
        Some(a) => mapping_space_pi(a, &p.algebra, max_degree),
    }
}

pub fn pi(p: &Problem, max_degree: Option<i32>, format: ReportFormat) -> Result<Outcome> {
    let n = max_degree.unwrap_or_else(|| default_degree(p));
    if n < 1 {
        return Err(Error::Input("--max-degree must be positive".into()));
    }
    let report = pi_report(p, n)?;
    Ok(Outcome::ok(match format {
        ReportFormat::Text => report.to_string(),
        ReportFormat::Json => json_line(&json!({ "schema": SCHEMA, "pi": report })),
    }))
}

#[derive(Clone, Debug)]
pub struct RetractionArgs {
    pub group: String,
    pub dim_cap: usize,
    pub n_max: usize,
    pub target: String,
    pub seed: u64,
    pub samples: usize,
    pub inject_fault: bool,
    pub max_cells: usize,
}

impl Default for RetractionArgs {
    fn default() -> Self {
        RetractionArgs {
            group: "Z2".into(),
            dim_cap: 3,
            n_max: 2,
            target: "1".into(),
            seed: 0,
            samples: 1,
            inject_fault: false,
            max_cells: DEFAULT_MAX_CELLS,
        }
    }
}

/// `MCFIX_MAX_CELLS`, when set to a positive integer.
pub fn max_cells_from_env() -> Result<usize> {
    match std::env::var("MCFIX_MAX_CELLS") {
        Err(_) => Ok(DEFAULT_MAX_CELLS),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Input(format!("MCFIX_MAX_CELLS={v:?} is not a positive integer"))),
    }
}

pub fn verify(args: &RetractionArgs, format: ReportFormat) -> Result<Outcome> {
    let group = FiniteGroup::preset(&args.group)?;
    let target = abelian_target(&args.target, &group)?;
    let options = RetractionOptions {
        m_max: args.dim_cap,
        n_max: args.n_max.min(args.dim_cap),
        samples: args.samples.max(1),
        fault: args.inject_fault.then_some(Fault::HSign),
        max_cells: args.max_cells,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut report = verify_retraction(&target, &options, &mut rng)?;
    report.group = args.group.clone();
    let code = if report.passed() { EXIT_OK } else { EXIT_FAIL };
    let output = match format {
        ReportFormat::Text => format!("{report}\n"),
        ReportFormat::Json => json_line(&json!({ "schema": SCHEMA, "passed": report.passed(), "report": report })),
    };
    Ok(Outcome { output, code })
}

fn json_line(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}
