//! `horadam`: terms, tilings, censuses and identity checks for full-history
//! linear recurrences.

mod commands;
mod select;

use std::fmt;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use horadam_core::DEFAULT_BUDGET;

use crate::select::Selector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    #[value(name = "json-lines", alias = "jsonl")]
    JsonLines,
}

#[derive(Debug, Parser)]
#[command(name = "horadam", version, about)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "plain")]
    format: Format,
    /// Refuse tiling enumerations predicted to exceed this many tilings.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Worker threads for verification sweeps.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a single term.
    Term {
        #[command(flatten)]
        select: Selector,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        /// iter, matrix, or both (prints an agreement flag).
        #[arg(long, default_value = "iter")]
        strategy: String,
    },
    /// Print terms over an inclusive index range `lo..hi`.
    Table {
        #[command(flatten)]
        select: Selector,
        #[arg(long, allow_hyphen_values = true)]
        range: String,
    },
    /// Enumerate colored tilings of a board and compare the count with the
    /// recurrence.
    Tilings {
        #[command(flatten)]
        select: Selector,
        #[arg(long)]
        n: usize,
    },
    /// Break-position census of the tilings of an `n + k` board.
    Census {
        #[command(flatten)]
        select: Selector,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Verify identities from the built-in corpus, a corpus file, or the
    /// command line.
    Verify(commands::VerifyArgs),
    /// Time term strategies against each other.
    Bench {
        #[command(flatten)]
        select: Selector,
        /// Comma-separated indices.
        #[arg(long, default_value = "0")]
        n: String,
        #[arg(long, default_value = "iter,matrix")]
        strategies: String,
    },
    /// List the built-in sequences with their offsets and citations.
    Registry,
}

#[derive(Debug)]
pub enum CliError {
    /// A requested check disagreed (exit 1).
    Mismatch,
    /// Bad arguments or input files (exit 2).
    Usage(String),
    /// Enumeration refused (exit 3).
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Mismatch => 1,
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Mismatch => f.write_str("check failed"),
            CliError::Usage(m) | CliError::Budget(m) => f.write_str(m),
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    horadam_core::Registry::builtin()
        .validate()
        .map_err(|e| CliError::Usage(format!("registry validation failed: {e}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs as usize)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut out = commands::Output::new(cli.format);
    let result = match cli.command {
        Command::Term { select, n, strategy } => commands::term(&mut out, &select, n, &strategy),
        Command::Table { select, range } => commands::table(&mut out, &select, &range),
        Command::Tilings { select, n } => commands::tilings(&mut out, &select, n, cli.budget),
        Command::Census { select, n, k } => commands::census(&mut out, &select, n, k, cli.budget),
        Command::Verify(args) => commands::verify(&mut out, &args),
        Command::Bench { select, n, strategies } => commands::bench(&mut out, &select, &n, &strategies),
        Command::Registry => commands::list_registry(&mut out),
    };
    out.flush();
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
