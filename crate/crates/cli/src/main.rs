//! `vassiliev`: batch front end for the library.
//!
//! Exit codes: 0 when every check is consistent, 1 on an inconsistency or a
//! failing suite, 2 when input cannot be parsed.

mod commands;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser)]
#[command(name = "vassiliev", version, about = "Low-degree Vassiliev invariants from Gauss codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Lannes,
    Pv,
    Thm,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Calibration,
    Table,
    Relations,
    #[value(name = "4t")]
    FourTerm,
    Weights,
    Invariance,
    Expansion,
    All,
}

#[derive(clap::Args)]
struct Input {
    /// Inline Gauss code, e.g. "O1+ U2+ O3+ U1+ O2+ U3+".
    #[arg(long, conflicts_with = "table")]
    code: Option<String>,
    /// Knot table in JSON lines: {"name", "gauss", "expected"}.
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute v2 and v3 by the selected methods, one row per knot.
    Compute {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "all")]
        method: Method,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
        /// Directory holding v2.pat, v3_pv.pat and v3_theorem.pat.
        #[arg(long)]
        patterns_dir: Option<PathBuf>,
    },
    /// Run cross-checks and relation suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Degree for the relation suites (default: 2 and 3).
        #[arg(long)]
        degree: Option<usize>,
        /// Knot table to check against (default: the bundled fixtures).
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        perturbations: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
        #[arg(long)]
        patterns_dir: Option<PathBuf>,
    },
    /// Print the (label, delta, epsilon) table of a code.
    Coords {
        #[arg(long)]
        code: String,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Print the weight system induced by an invariant and its relation report.
    Weights {
        #[arg(long)]
        degree: usize,
        /// One of v2, v3, v2_lannes, v2_pv, v3_lannes, v3_pv, v3_thm.
        #[arg(long)]
        invariant: String,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Expansions in a module basis.
    #[command(subcommand)]
    Expansion(ExpansionCommand),
}

#[derive(Subcommand)]
enum ExpansionCommand {
    /// Check an expansion file against a knot table.
    Check {
        /// Expansion file; `n2`, `n3` or `n4` selects a bundled one.
        #[arg(long)]
        file: String,
        /// Corpus and basis knots (default: the bundled fixtures).
        #[arg(long)]
        table: Option<PathBuf>,
        /// Comma-separated probe invariants (default: v2 and v3 up to the degree).
        #[arg(long, value_delimiter = ',')]
        probes: Vec<String>,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
}

/// `Ok(true)`: consistent. `Ok(false)`: inconsistent. `Err`: bad input.
pub type Outcome = Result<bool, String>;

fn run(cli: Cli) -> Outcome {
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Compute { input, method, format, patterns_dir } => commands::compute(
            &mut out,
            input.code.as_deref(),
            input.table.as_deref(),
            method,
            format,
            patterns_dir.as_deref(),
        ),
        Command::Verify { suite, degree, table, perturbations, seed, format, patterns_dir } => {
            let config = verify::Config { suite, degree, table, perturbations, seed, patterns_dir };
            verify::run(&mut out, &config, format)
        }
        Command::Coords { code, format } => commands::coords(&mut out, &code, format),
        Command::Weights { degree, invariant, format } => commands::weights(&mut out, degree, &invariant, format),
        Command::Expansion(ExpansionCommand::Check { file, table, probes, format }) => {
            commands::expansion_check(&mut out, &file, table.as_deref(), &probes, format)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
