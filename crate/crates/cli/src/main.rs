//! `hyperwitt`: build and compare quadratic hyperfields, classify valuations,
//! run the function-field checks and the prime-type census.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error.

mod commands;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hyperwitt::Error;

#[derive(Parser)]
#[command(name = "hyperwitt", version, about = "Quadratic hyperfields and Witt equivalence at desk scale")]
struct Cli {
    /// Seed for every randomized step; runs are reproducible for a fixed seed.
    #[arg(long, global = true, default_value_t = 2026)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build the quadratic hyperfield of a field descriptor (e.g. Qp:3, F5((t)), R).
    Qh {
        descriptor: String,
        /// Build the group extension of this rank over Q(K) instead.
        #[arg(long)]
        extend: Option<u32>,
    },
    /// Check the hyperfield axioms of a JSON table.
    Axioms { file: PathBuf },
    /// Decide Witt equivalence (isomorphism of quadratic hyperfields).
    Witteq {
        /// Descriptor, `ext(<descriptor>, <rank>)`, or a path to a JSON table.
        first: String,
        second: String,
    },
    /// Classify a valuation on a function field in one variable.
    Classify {
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        residue: String,
        #[arg(long)]
        restriction: String,
        #[arg(long)]
        constants: String,
    },
    /// Which index-profile families occur over a constant field.
    Mu { constants: String },
    /// Transport a unit subgroup along an isomorphism and check the diagrams.
    Transport {
        first: String,
        second: String,
        /// Subgroup T: the canonical unit classes or the trivial subgroup.
        #[arg(long, value_enum, default_value_t = commands::TChoice::Units)]
        t: commands::TChoice,
    },
    /// Element-level checks over F_q(t).
    Ff {
        /// Constant field size.
        #[arg(long, default_value_t = 3)]
        q: u64,
        #[command(subcommand)]
        command: commands::FfCommand,
    },
    /// Census of prime-type hyperfields with at most this many nonzero elements.
    Enumerate {
        #[arg(long, default_value_t = 4)]
        max_nonzero: usize,
    },
}

pub struct Report {
    pub json: Value,
    pub text: String,
}

pub enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// Variant name of a library error, for the machine-readable error object.
fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(['(', ' ', '{']).next().unwrap_or("Error").to_string()
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let seed = cli.seed;
    match &cli.command {
        Command::Qh { descriptor, extend } => commands::qh(descriptor, *extend),
        Command::Axioms { file } => commands::axioms(file),
        Command::Witteq { first, second } => commands::witteq(first, second),
        Command::Classify { gamma, residue, restriction, constants } => {
            commands::classify(gamma, residue, restriction, constants)
        }
        Command::Mu { constants } => commands::mu(constants),
        Command::Transport { first, second, t } => commands::transport(first, second, *t),
        Command::Ff { q, command } => commands::ff(*q, command, seed),
        Command::Enumerate { max_nonzero } => commands::enumerate(*max_nonzero),
    }
}

fn emit(cli: &Cli, body: String) -> Result<(), String> {
    match &cli.out {
        Some(path) => fs::write(path, body + "\n").map_err(|e| format!("cannot write {}: {e}", path.display())),
        // A closed pipe (`| head`) is not an error worth reporting.
        None => {
            let _ = writeln!(io::stdout(), "{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (body, code) = match run(&cli) {
        Ok(r) => match cli.format {
            Format::Json => (serde_json::to_string_pretty(&r.json).expect("serializable"), 0),
            Format::Text => (r.text, 0),
        },
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Domain(e)) => match cli.format {
            Format::Json => {
                let obj = json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } });
                (serde_json::to_string_pretty(&obj).expect("serializable"), 1)
            }
            Format::Text => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        },
    };
    if let Err(msg) = emit(&cli, body) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
