//! Browser bindings. Every function takes and returns plain strings so the
//! same code runs natively in tests.

use wasm_bindgen::prelude::*;

use mcfix_cli::commands::{self, ReportFormat, RetractionArgs, TableFormat};
use mcfix_cli::presets::preset;
use mcfix_cli::{Problem, ProblemDocument};

/// A TOML document, or a preset spec such as `cp-n:n=2,a=-1`.
fn problem(input: &str) -> Result<Problem, String> {
    let input = input.trim();
    let doc = if input.contains('\n') || input.starts_with('[') {
        ProblemDocument::parse(input)
    } else {
        preset(input)
    };
    doc.and_then(|d| d.build()).map_err(|e| e.to_string())
}

fn degree(max_degree: i32) -> Option<i32> {
    (max_degree > 0).then_some(max_degree)
}

/// Markdown table of invariant subspaces. `max_degree <= 0` uses the
/// document's default.
#[wasm_bindgen]
pub fn invariants_table(input: &str, max_degree: i32) -> Result<String, String> {
    let p = problem(input)?;
    commands::invariants(&p, degree(max_degree), TableFormat::Md).map(|o| o.output).map_err(|e| e.to_string())
}

/// Rational homotopy groups of the homotopy fixed points, as text.
#[wasm_bindgen]
pub fn homotopy_groups(input: &str, max_degree: i32) -> Result<String, String> {
    let p = problem(input)?;
    commands::pi(&p, degree(max_degree), ReportFormat::Text).map(|o| o.output).map_err(|e| e.to_string())
}

/// Runs the structural checks and returns the report.
#[wasm_bindgen]
pub fn check_document(input: &str) -> Result<String, String> {
    Ok(commands::check(&problem(input)?, ReportFormat::Text).output)
}

/// Exhaustive retraction check on EG up to level `dim_cap`. The cell cap is
/// kept small since the page runs on the main thread.
#[wasm_bindgen]
pub fn verify_retraction(group: &str, target: &str, dim_cap: usize, seed: u64) -> Result<String, String> {
    let args = RetractionArgs {
        group: group.trim().into(),
        target: target.trim().into(),
        dim_cap,
        seed,
        max_cells: 20_000,
        ..Default::default()
    };
    commands::verify(&args, ReportFormat::Text).map(|o| o.output).map_err(|e| e.to_string())
}
