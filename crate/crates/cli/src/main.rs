mod commands;
mod grid;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fairrank::ranking::FairnessClass;
use thiserror::Error;

#[derive(Parser, Debug)]
#[command(name = "fairrank", version, about = "Fair rankings of tournaments")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a tournament.
    Gen(GenArgs),
    /// Rank a tournament.
    Rank(RankArgs),
    /// Check a ranking against a fairness class.
    Check(CheckArgs),
    /// Minimize backward arcs over a class of rankings.
    Minimize(MinimizeArgs),
    /// Backward-fraction sweeps and bound checks.
    Emn(EmnArgs),
    /// Print the adjacency grid, ordered by rank.
    Dump(DumpArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Rotational,
    Composite,
    Random,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Parameter of the rotational and composite families.
    #[arg(long)]
    l: Option<usize>,
    /// Vertex count of a random tournament.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write an edge list instead of the matrix format.
    #[arg(long)]
    edges: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Copeland,
    LinearFair,
}

#[derive(Args, Debug)]
pub struct RankArgs {
    /// Tournament file, or "-" for stdin.
    input: String,
    #[arg(long, value_enum, default_value_t = Method::Copeland)]
    method: Method,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    input: String,
    ranking: String,
    #[arg(long, value_parser = parse_class)]
    class: FairnessClass,
    /// Float comparison tolerance.
    #[arg(long)]
    epsilon: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Space {
    Injective,
    WeakOrders,
}

#[derive(Args, Debug)]
pub struct MinimizeArgs {
    input: String,
    #[arg(long, value_enum, default_value_t = Space::WeakOrders)]
    space: Space,
    #[arg(long, value_parser = parse_class, default_value = "scop")]
    class: FairnessClass,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["family", "exhaustive", "random"])))]
pub struct EmnArgs {
    #[arg(long, value_enum, requires = "lmax")]
    family: Option<EmnFamily>,
    #[arg(long)]
    lmax: Option<usize>,
    /// Construct and recount T_l for l up to this value.
    #[arg(long, default_value_t = 0)]
    materialize: usize,
    /// Scan every tournament on N vertices.
    #[arg(long, value_name = "N")]
    exhaustive: Option<usize>,
    /// Scan random tournaments on N vertices.
    #[arg(long, value_name = "N")]
    random: Option<usize>,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Check minimum injective backward counts against half the arcs
    /// instead of the strict Copeland bound.
    #[arg(long)]
    reversal: bool,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EmnFamily {
    Composite,
}

#[derive(Args, Debug)]
pub struct DumpArgs {
    input: String,
    /// Ranking used to order rows and columns and to mark backward arcs.
    #[arg(long)]
    ranking: Option<String>,
    /// Print the grid (the only dump format).
    #[arg(long)]
    table: bool,
}

fn parse_class(s: &str) -> Result<FairnessClass, String> {
    s.parse()
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Io(_) => 3,
            CliError::Verification(_) => 4,
        }
    }

    pub fn input(e: impl ToString) -> CliError {
        CliError::Input(e.to_string())
    }
}

/// Result of a command: text for stdout and whether the verdict was PASS.
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub pass: bool,
}

impl Output {
    pub fn ok(stdout: String) -> Output {
        Output {
            stdout,
            stderr: String::new(),
            pass: true,
        }
    }
}

pub fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
    }
}

pub fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let format = cli.format;
    match cli.command {
        Command::Gen(args) => commands::gen(&args, format),
        Command::Rank(args) => commands::rank(&args, format),
        Command::Check(args) => commands::check(&args, format),
        Command::Minimize(args) => commands::minimize(&args, format),
        Command::Emn(args) => {
            let jobs = args.jobs;
            match jobs {
                Some(0) => Err(CliError::Input("--jobs must be at least 1".into())),
                Some(j) => rayon::ThreadPoolBuilder::new()
                    .num_threads(j)
                    .build()
                    .map_err(|e| CliError::Io(e.to_string()))?
                    .install(|| commands::emn(&args, format)),
                None => commands::emn(&args, format),
            }
        }
        Command::Dump(args) => commands::dump(&args, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.stdout.as_bytes()).is_err() {
                return ExitCode::from(3);
            }
            eprint!("{}", out.stderr);
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
