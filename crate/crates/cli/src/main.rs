use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod input;
mod report;
mod svg;

/// Minimal first-order descriptions of unary structures.
#[derive(Debug, Parser)]
#[command(name = "fo-describe", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a defining sentence and verify it
    Synthesize(commands::synthesize::SynthesizeArgs),
    /// Proven bounds on C, or its exact value by search
    Complexity(commands::complexity::ComplexityArgs),
    /// Play the formula size game between two sets of structures
    Game(commands::game::GameArgs),
    /// Expected complexity of a random structure
    Expected(commands::expected::ExpectedArgs),
    /// Entropy/complexity region data as CSV and SVG
    BoundsPlot(commands::plot::PlotArgs),
    /// Shannon and Boltzmann entropy of a structure
    Entropy(commands::entropy::EntropyArgs),
    /// Draw a uniformly random structure as CSV
    Sample(commands::sample::SampleArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Svg,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Comma-separated predicate names for profile literals
    #[arg(long, global = true)]
    pub vocab: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t)]
    pub format: Format,
    /// Write here instead of stdout (a file prefix for bounds-plot)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

/// A claimed result failed its own check.
#[derive(Debug)]
pub struct Unverified(pub String);

impl fmt::Display for Unverified {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "verification failed: {}", self.0)
    }
}

impl std::error::Error for Unverified {}

/// The search budget ran out before an answer.
#[derive(Debug)]
pub struct OverBudget(pub String);

impl fmt::Display for OverBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "budget exceeded: {}", self.0)
    }
}

impl std::error::Error for OverBudget {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Unverified>().is_some() {
        1
    } else if err.downcast_ref::<OverBudget>().is_some()
        || matches!(err.downcast_ref(), Some(fo_describe::Error::BudgetExhausted(_)))
    {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Synthesize(args) => commands::synthesize::run(args, &cli.common),
        Command::Complexity(args) => commands::complexity::run(args, &cli.common),
        Command::Game(args) => commands::game::run(args, &cli.common),
        Command::Expected(args) => commands::expected::run(args, &cli.common),
        Command::BoundsPlot(args) => commands::plot::run(args, &cli.common),
        Command::Entropy(args) => commands::entropy::run(args, &cli.common),
        Command::Sample(args) => commands::sample::run(args, &cli.common),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
