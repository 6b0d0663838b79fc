//! `evimcdm` command line: `solve`, `validate` and `demo`.
//!
//! Exit status is 0 on success, 1 when the input is rejected or the ranking
//! cannot be computed, and 2 on usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use evimcdm::io::{emit_report, load_problem_json, LoadOptions, ReportFormat, ReportMode, SUPPLIER_SELECTION_JSON};
use evimcdm::pipeline::{rank_alternatives_with, CriterionNormalization, RankOptions};

#[derive(Debug, Parser)]
#[command(
    name = "evimcdm",
    version,
    about = "Rank alternatives from interval-weighted evidential ratings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rank the alternatives of a problem document.
    Solve(SolveArgs),
    /// Parse and validate a problem document without ranking it.
    Validate {
        #[arg(long)]
        input: PathBuf,
        /// Alpha level for fuzzy-number terms.
        #[arg(long, default_value_t = 0.0, value_parser = parse_alpha)]
        alpha: f64,
    },
    /// Rank the bundled supplier-selection dataset with a full trace.
    Demo {
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Debug, clap::Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Include every intermediate fusion table.
    #[arg(long)]
    trace: bool,
    /// Alpha level for fuzzy-number terms.
    #[arg(long, default_value_t = 0.0, value_parser = parse_alpha)]
    alpha: f64,
    #[arg(long, value_enum, default_value_t = Normalization::Pooled)]
    criterion_normalization: Normalization,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ReportFormat::Json,
            Format::Table => ReportFormat::Table,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Normalization {
    Pooled,
    PerDm,
}

impl From<Normalization> for CriterionNormalization {
    fn from(n: Normalization) -> Self {
        match n {
            Normalization::Pooled => CriterionNormalization::Pooled,
            Normalization::PerDm => CriterionNormalization::PerDm,
        }
    }
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is outside [0, 1]"))
    }
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

/// Runs the command line and returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn read_input(path: &PathBuf) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Solve(args) => {
            let bytes = read_input(&args.input)?;
            let problem = load_problem_json(&bytes, &LoadOptions { alpha: args.alpha })?;
            let options = RankOptions {
                criterion_normalization: args.criterion_normalization.into(),
            };
            let report = rank_alternatives_with(&problem, &options)?;
            let mode = if args.trace {
                ReportMode::FullTrace
            } else {
                ReportMode::Summary
            };
            let text = emit_report(&report, mode, args.format.into());
            match args.output {
                Some(path) => {
                    fs::write(&path, text).map_err(|e| Failure(format!("cannot write {}: {e}", path.display())))?
                }
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::Validate { input, alpha } => {
            let bytes = read_input(&input)?;
            let problem = load_problem_json(&bytes, &LoadOptions { alpha })?;
            writeln!(
                out,
                "valid: {} decision makers, {} criteria, {} alternatives",
                problem.decision_makers().len(),
                problem.criteria().len(),
                problem.alternatives().len()
            )?;
        }
        Command::Demo { format } => {
            let problem = load_problem_json(SUPPLIER_SELECTION_JSON.as_bytes(), &LoadOptions::default())?;
            let report = rank_alternatives_with(&problem, &RankOptions::default())?;
            out.write_all(emit_report(&report, ReportMode::FullTrace, format.into()).as_bytes())?;
        }
    }
    Ok(())
}
