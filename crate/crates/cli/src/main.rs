//! `gridiv`: count divisions of grid boards into connected pieces.

mod commands;
mod engine;
mod failure;
mod span;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gridiv_core::brute::DEFAULT_EDGE_LIMIT;

use engine::Engine;
use failure::Failure;
use span::Span;

#[derive(Debug, Parser)]
#[command(
    name = "gridiv",
    version,
    about = "Exact counts of grid board divisions"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    args: Args,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
enum Command {
    /// Number of divisions for every (m, n, k) in the given ranges.
    Count,
    /// List the divisions of one board as canonical label arrays.
    Enumerate,
    /// Table of d_k(n) or s_k(n) for one board height.
    Table,
    /// Exact closed forms for the two-row families k.
    Fit,
    /// Cross-engine equivalence suite.
    Verify,
    /// Burnside counts up to rotation and reflection.
    Symmetry,
    /// Time the profile DP against brute force.
    Bench,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Markdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesArg {
    /// All divisions.
    D,
    /// Divisions splitting the last column.
    S,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Args {
    /// Rows, e.g. `2` or `2..4`.
    #[arg(long, global = true)]
    m: Option<Span>,

    /// Columns, e.g. `5` or `1..20`.
    #[arg(long, global = true)]
    n: Option<Span>,

    /// Pieces, e.g. `3` or `1..10`.
    #[arg(long, global = true)]
    k: Option<Span>,

    #[arg(long, value_enum, default_value = "auto", global = true)]
    engine: Engine,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    /// Largest edge count the brute-force engine will sweep.
    #[arg(long, env = "GRIDIV_EDGE_LIMIT", default_value_t = DEFAULT_EDGE_LIMIT, global = true)]
    edge_limit: usize,

    /// Seed for randomized checks in `verify`.
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,

    /// Series for `table`.
    #[arg(long, value_enum, default_value = "d", global = true)]
    series: SeriesArg,
}

fn run(cli: &Cli) -> Result<commands::Report, Failure> {
    let args = &cli.args;
    match cli.command {
        Command::Count => commands::count(args),
        Command::Enumerate => commands::enumerate(args),
        Command::Table => commands::table(args),
        Command::Fit => commands::fit(args),
        Command::Verify => commands::verify(args),
        Command::Symmetry => commands::symmetry(args),
        Command::Bench => commands::bench(args),
    }
}

fn fail(failure: &Failure) -> ExitCode {
    eprintln!("{}", failure.to_json());
    ExitCode::from(failure.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) if !err.use_stderr() => {
            print!("{err}");
            return ExitCode::SUCCESS;
        }
        Err(err) => return fail(&Failure::input(err.to_string().trim_end())),
    };
    let report = match run(&cli) {
        Ok(report) => report,
        Err(failure) => return fail(&failure),
    };
    let written = match &cli.args.output {
        Some(path) => std::fs::write(path, &report.body),
        None => {
            print!("{}", report.body);
            Ok(())
        }
    };
    if let Err(err) = written {
        return fail(&err.into());
    }
    match report.failure {
        Some(failure) => fail(&failure),
        None => ExitCode::SUCCESS,
    }
}
