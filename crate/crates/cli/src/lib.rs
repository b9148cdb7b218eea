//! Library half of the `mcfix` command-line tool: problem documents,
//! presets, commands and example fixtures.

pub mod commands;
pub mod doc;
pub mod examples;
pub mod presets;

use mcfix_core::{Error, Result};

pub use doc::{Problem, ProblemDocument};

/// Loads a document from a path, or from a preset spec when `preset` is set.
pub fn load(path: Option<&std::path::Path>, preset: Option<&str>) -> Result<ProblemDocument> {
    match (path, preset) {
        (Some(p), None) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Input(format!("{}: {e}", p.display())))?;
            ProblemDocument::parse(&text).map_err(|e| match e {
                Error::Input(m) => Error::Input(format!("{}: {m}", p.display())),
                other => other,
            })
        }
        (None, Some(spec)) => presets::preset(spec),
        _ => Err(Error::Input("give a document path or --preset, not both".into())),
    }
}
