//! `orthoscalar`: classify subspace systems, unitarize brick quadruples and
//! systems of lines, apply Coxeter functors and evaluate the explicit
//! constructions for `(2;1,1,1,1)`.
//!
//! Exit codes: 0 ok, 2 parse error, 3 invariant violation, 4 not brick,
//! 5 inadmissible character, 6 solver failure, 7 functor precondition.

mod commands;
mod document;
mod error;
mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use orthoscalar_core::ToleranceConfig;

use commands::{ConstructArgs, Context, FamilyKindArg, Outcome};
use document::SystemDocument;
use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "orthoscalar", version, about = "Orthoscalar systems of subspaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for the randomized steps (isomorphism search, indecomposability).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Residual tolerance for accepting a certificate.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Print reports as JSON instead of `key: value` lines.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimension vector, root class, brick and indecomposability verdicts.
    Classify {
        /// Input document (stdin when omitted).
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Inner product making the system orthoscalar.
    #[command(group(ArgGroup::new("chi").required(true).args(["character", "auto"])))]
    Unitarize {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Character as "a0,a1,...,an"; fractions allowed.
        #[arg(long, allow_hyphen_values = true)]
        character: Option<String>,
        /// Pick the character from the system's class.
        #[arg(long)]
        auto: bool,
    },
    /// Apply Coxeter functors to a certificate, left to right.
    Coxeter {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Letters o (circle), b (bullet), + (o b) and - (b o).
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Build a discrete model, `S_mu` or a degenerate `S_ij`.
    #[command(group(ArgGroup::new("kind").required(true).args(["family", "mu", "degenerate"])))]
    Construct {
        #[arg(long, value_enum, ignore_case = true)]
        family: Option<FamilyKindArg>,
        /// Distinguished subspace of a D4 family (1..=4).
        #[arg(long = "i")]
        variant: Option<usize>,
        /// Size parameter is 2m+1.
        #[arg(long)]
        m: Option<i64>,
        /// Size parameter, overriding --m.
        #[arg(long)]
        size: Option<i64>,
        #[arg(long, allow_negative_numbers = true)]
        sign: Option<i64>,
        /// "re,im"
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        degenerate: Option<Vec<usize>>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Residual of a system with Gram matrix and character.
    Verify {
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Check a character against the conditions for a dimension.
    Admissible {
        /// Dimension vector "d0,d1,...".
        dimension: String,
        /// Character "a0,a1,..."; fractions and decimals are exact.
        #[arg(allow_hyphen_values = true)]
        character: String,
        /// Coinciding pair for the degenerate (2;1,1,1,1) systems.
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        degenerate: Option<Vec<usize>>,
    },
    /// Explicit projections for (2;1,1,1,1), or the inverse problem for mu.
    Knr {
        /// Four weights summing to 2, or a character "a0,a1,a2,a3,a4".
        weights: String,
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        x: Option<f64>,
        /// "re,im"
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["lambda", "x"])]
        solve_mu: Option<String>,
    },
}

fn read_document(path: Option<&PathBuf>) -> Result<SystemDocument, CliError> {
    let text = match path {
        Some(p) => fs::read_to_string(p).map_err(|e| CliError::parse(format!("{}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::parse(format!("stdin: {e}")))?;
            s
        }
    };
    SystemDocument::parse(&text)
}

fn run(cli: &Cli) -> Result<(Outcome, Option<PathBuf>), CliError> {
    let mut tol = ToleranceConfig::default();
    if let Some(t) = cli.tol {
        tol = tol.with_residual(t);
        tol.validate().map_err(|e| CliError::parse(e.to_string()))?;
    }
    let ctx = Context { tol, seed: cli.seed };
    Ok(match &cli.command {
        Command::Classify { input } => (commands::classify(&read_document(input.as_ref())?, &ctx)?, None),
        Command::Unitarize {
            input,
            output,
            character,
            ..
        } => {
            let doc = read_document(input.as_ref())?;
            (commands::unitarize(&doc, character.as_deref(), &ctx)?, output.clone())
        }
        Command::Coxeter { input, output, word } => (
            commands::coxeter(&read_document(input.as_ref())?, word, &ctx)?,
            output.clone(),
        ),
        Command::Construct {
            family,
            variant,
            m,
            size,
            sign,
            mu,
            degenerate,
            output,
        } => {
            let args = ConstructArgs {
                family: *family,
                variant: *variant,
                m: *m,
                size: *size,
                sign: *sign,
                mu: mu.clone(),
                degenerate: degenerate.clone(),
            };
            (commands::construct(&args, &ctx)?, output.clone())
        }
        Command::Verify { input } => (commands::verify(&read_document(input.as_ref())?, &ctx)?, None),
        Command::Admissible {
            dimension,
            character,
            degenerate,
        } => (commands::admissible(dimension, character, degenerate.as_deref())?, None),
        Command::Knr {
            weights,
            lambda,
            x,
            solve_mu,
        } => (commands::knr(weights, *lambda, *x, solve_mu.as_deref())?, None),
    })
}

/// Documents go to `--output` or stdout; the report goes to stdout unless
/// the document already occupies it, in which case it goes to stderr.
fn emit(outcome: &Outcome, output: Option<&PathBuf>, json: bool) -> Result<(), CliError> {
    let report = if json {
        outcome.report.to_json()
    } else {
        outcome.report.to_text()
    };
    let io_err = |e: io::Error| CliError::invariant(format!("write failed: {e}"));
    match (&outcome.document, output) {
        (Some(doc), Some(path)) => {
            fs::write(path, doc.to_canonical_string()).map_err(io_err)?;
            io::stdout().write_all(report.as_bytes()).map_err(io_err)
        }
        (Some(doc), None) => {
            io::stderr().write_all(report.as_bytes()).map_err(io_err)?;
            io::stdout()
                .write_all(doc.to_canonical_string().as_bytes())
                .map_err(io_err)
        }
        (None, _) => io::stdout().write_all(report.as_bytes()).map_err(io_err),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|(outcome, output)| {
        emit(&outcome, output.as_ref(), cli.json)?;
        Ok(outcome.status)
    });
    match result {
        Ok(status) => ExitCode::from(status),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
