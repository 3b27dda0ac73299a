use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use krk_core::group::GroupSpec;
use krk_core::report::{analyze, lattice, verify, Corpus, Status};
use krk_core::{Error, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "krk", version, about = "Exact kR_k evaluations and subfunctor lattices")]
struct Cli {
    /// Seed for the randomized module splitting.
    #[arg(long, global = true, env = "KRK_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline on one group.
    Analyze {
        /// Builtin name (S4, C3xC3, ...), JSON spec, or path to a JSON spec.
        group: String,
        #[arg(long)]
        p: u64,
        /// Largest p-group order in the catalog; defaults to the dataset bound.
        #[arg(long)]
        max_p_order: Option<usize>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Catalog poset and its closed sets.
    Lattice {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        max_order: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Invariant suites over a corpus.
    Verify {
        /// `default`, a builtin group name, or a corpus JSON file.
        #[arg(long, default_value = "default")]
        corpus: String,
        /// Comma-separated primes overriding the corpus list.
        #[arg(long, value_delimiter = ',')]
        p: Option<Vec<u64>>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn emit(text: String, path: Option<PathBuf>) -> Result<(), Error> {
    match path {
        Some(path) => {
            std::fs::write(&path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
        }
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(Error::Io(e.to_string())),
            _ => Ok(()),
        },
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Analyze { group, p, max_p_order, json } => {
            let spec = GroupSpec::parse(&group)?;
            let report = analyze(&spec, p, max_p_order, cli.seed)?;
            emit(report.to_json(), json)?;
            Ok(true)
        }
        Command::Lattice { p, max_order, json } => {
            emit(lattice(p, max_order)?.to_json(), json)?;
            Ok(true)
        }
        Command::Verify { corpus, p, json } => {
            let corpus = Corpus::resolve(&corpus)?;
            let report = verify(&corpus, p.as_deref(), cli.seed)?;
            for r in &report.results {
                let status = match r.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skip => "SKIP",
                };
                let group = if r.group.is_empty() { "-" } else { &r.group };
                eprintln!("{status} {:<18} {group:<8} p={} {}", r.suite, r.p, r.detail);
            }
            eprintln!(
                "{} suites, {} failed",
                report.results.len(),
                report.failures
            );
            let passed = report.passed;
            emit(report.to_json(), json)?;
            Ok(passed)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let body = serde_json::json!({
                "error": {
                    "module": e.module(),
                    "kind": e.kind(),
                    "message": e.to_string(),
                }
            });
            eprintln!("{body}");
            ExitCode::from(2)
        }
    }
}
