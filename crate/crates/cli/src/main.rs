use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mcfix_cli::commands::{self, exit_code, Outcome, ReportFormat, RetractionArgs, TableFormat};
use mcfix_cli::{examples, load, presets};
use mcfix_core::Result;

/// Exact equivariant invariants of Maurer-Cartan spaces.
#[derive(Parser)]
#[command(name = "mcfix", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Problem document (TOML).
    file: Option<PathBuf>,
    /// Use a built-in document instead, e.g. `wedge-s2` or `cp-n:n=2,a=-1`.
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the structural checks (symmetry, Jacobi, action, cdga).
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Tabulate invariant subspaces degree by degree.
    Invariants {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max_degree: Option<i32>,
        #[arg(long, value_enum, default_value = "md")]
        format: TableFormat,
    },
    /// Rational homotopy groups of the homotopy fixed points.
    Pi {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max_degree: Option<i32>,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Check the retraction onto the homotopy fixed points on EG exhaustively.
    VerifyRetraction {
        /// Z<n> or S<m>.
        #[arg(long, default_value = "Z2")]
        group: String,
        /// Highest simplicial level enumerated.
        #[arg(long, default_value_t = 3)]
        dim_cap: usize,
        /// Highest n for the sampled n-simplices of the fixed points.
        #[arg(long, default_value_t = 2)]
        n_max: usize,
        /// Degrees of an abelian target with an optional action, e.g. `1,1:swap`.
        #[arg(long, default_value = "1")]
        target: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        samples: usize,
        /// Deliberately corrupt H to exercise the checks.
        #[arg(long, hide = true)]
        inject_fault: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Regenerate a worked example and compare it with the stored tables.
    Example {
        name: String,
        /// Print the regenerated tables without comparing.
        #[arg(long)]
        print: bool,
    },
    /// Print the document of a preset.
    Preset { spec: String },
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Check { input, format } => {
            let p = load(input.file.as_deref(), input.preset.as_deref())?.build()?;
            Ok(commands::check(&p, format))
        }
        Command::Invariants { input, max_degree, format } => {
            let p = load(input.file.as_deref(), input.preset.as_deref())?.build()?;
            commands::invariants(&p, max_degree, format)
        }
        Command::Pi { input, max_degree, format } => {
            let p = load(input.file.as_deref(), input.preset.as_deref())?.build()?;
            commands::pi(&p, max_degree, format)
        }
        Command::VerifyRetraction { group, dim_cap, n_max, target, seed, samples, inject_fault, format } => {
            let args = RetractionArgs {
                group,
                dim_cap,
                n_max,
                target,
                seed,
                samples,
                inject_fault,
                max_cells: commands::max_cells_from_env()?,
            };
            commands::verify(&args, format)
        }
        Command::Example { name, print } => examples::run(&name, print),
        Command::Preset { spec } => Ok(Outcome { output: presets::preset(&spec)?.to_toml(), code: 0 }),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out.output);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
