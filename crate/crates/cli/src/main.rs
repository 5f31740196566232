//! `dtqw`: average search probabilities of discrete-time quantum walks on
//! regular graphs, by direct simulation and in closed spectral form.
//!
//! Exit codes: 0 success; 1 invalid input; 2 tolerance breach under
//! `--check`; 3 a structural hypothesis fails on this input (non-regular,
//! disconnected, not 2-connected, non-equitable distance partition, degree
//! below 2); 4 `check-dr` found the graph not distance regular.

mod commands;
mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dtqw_core::Error;

#[derive(Parser)]
#[command(name = "dtqw", version, about = "Quantum-walk search probabilities on regular graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form average search probability, cross-checked by simulation
    Average(AverageArgs),
    /// Eigenphases of the walk step and their source eigenvalues
    Spectrum(SpectrumArgs),
    /// Family sweep of the gap between the average and 1/4
    Sweep(SweepArgs),
    /// Spectral lower bounds with measured slacks
    Bounds(BoundsArgs),
    /// Distance-regularity check; prints the intersection array
    CheckDr(CheckDrArgs),
}

/// Input selection shared by the single-graph commands.
#[derive(Args)]
struct InputArgs {
    /// Graph family: complete, cycle, petersen, hypercube, hamming, johnson, paley
    #[arg(long, conflicts_with_all = ["edges", "array"])]
    family: Option<String>,

    /// Single family parameter (e.g. n for complete)
    #[arg(long, requires = "family")]
    param: Option<usize>,

    /// Comma-separated family parameters (e.g. 2,3 for hamming)
    #[arg(long, value_delimiter = ',', requires = "family")]
    params: Vec<usize>,

    /// Edge-list file: first significant line n, then one "u v" line per edge
    #[arg(long, conflicts_with = "array")]
    edges: Option<PathBuf>,

    /// Intersection array such as "3,2;1,1" (bounds only)
    #[arg(long)]
    array: Option<String>,

    /// Marked vertex; defaults to 0 for families, required with --edges
    #[arg(long)]
    vertex: Option<usize>,
}

#[derive(Args)]
struct AverageArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Number of Cesaro steps for the simulated cross-check
    #[arg(long = "T", default_value_t = 200_000)]
    steps: usize,

    /// Allowed |closed form - simulation| under --check
    #[arg(long, default_value_t = 5e-3)]
    tol: f64,

    /// Exit 2 if the simulation strays beyond --tol from the closed form
    #[arg(long)]
    check: bool,

    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Family to sweep: complete, cycle, paley, hypercube, hamming, johnson
    #[arg(long)]
    family: String,

    /// Fixed first parameter (word length d for hamming, subset size m for johnson)
    #[arg(long)]
    param: Option<usize>,

    /// Comma-separated sweep values (n, q or v depending on the family)
    #[arg(long, value_delimiter = ',')]
    params: Vec<usize>,

    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Also write a log-scale chart of the gap next to --out
    #[arg(long, requires = "out")]
    svg: bool,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckDrArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Anything that stops a command, tagged with the exit code it maps to.
pub enum Failure {
    /// Unusable configuration or input: exit 1.
    Usage(String),
    /// Library error; hypothesis failures exit 3, bad input exits 1.
    Core(Error),
    /// File handling: exit 1.
    Io(std::io::Error),
    /// --check tolerance breach: exit 2.
    Breach(String),
    /// check-dr: the graph is not distance regular: exit 4.
    Refusal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => 1,
            Failure::Breach(_) => 2,
            Failure::Refusal(_) => 4,
            Failure::Core(e) => match e {
                Error::NotRegular { .. }
                | Error::Disconnected { .. }
                | Error::DegreeTooSmall { .. }
                | Error::NotEquitable { .. }
                | Error::NotDistanceRegular { .. }
                | Error::NotTwoConnected { .. }
                | Error::EigenvalueOutsideDisc { .. }
                | Error::NeighbourWeightSpread { .. } => 3,
                _ => 1,
            },
        }
    }

    fn report(&self) {
        match self {
            // The refusal is the command's answer, not a diagnostic.
            Failure::Refusal(text) => println!("{text}"),
            Failure::Usage(text) => eprintln!("dtqw: {text}"),
            Failure::Core(e) => eprintln!("dtqw: {e}"),
            Failure::Io(e) => eprintln!("dtqw: {e}"),
            Failure::Breach(text) => eprintln!("dtqw: {text}"),
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Average(args) => commands::average(&args),
        Command::Spectrum(args) => commands::spectrum(&args),
        Command::Sweep(args) => commands::sweep(&args),
        Command::Bounds(args) => commands::bounds(&args),
        Command::CheckDr(args) => commands::check_dr(&args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here too; those keep exit 0.
            let failed = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(u8::from(failed));
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            failure.report();
            ExitCode::from(failure.code())
        }
    }
}
