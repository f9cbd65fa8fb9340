//! `twoweight`: construct trace/norm codes and verify their weight
//! distributions, exponential sums and strongly regular graphs.

mod commands;
mod report;

use std::{path::PathBuf, process::ExitCode};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use report::RunReport;

/// Exit status for invalid input.
const EXIT_INPUT: u8 = 2;
/// Exit status for a verification mismatch.
const EXIT_MISMATCH: u8 = 1;

/// Overrides the largest field (in elements) the tool will tabulate.
pub const MAX_FIELD_ENV: &str = "TWOWEIGHT_MAX_FIELD_SIZE";

#[derive(Parser, Debug)]
#[command(
    name = "twoweight",
    version,
    about = "Two-weight codes from trace and norm defining sets"
)]
struct Cli {
    /// Emit a versioned JSON report instead of a table.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build one code and compare it with its closed-form enumerator.
    Construct(ConstructArgs),
    /// Check enumerated distributions and exponential sums against closed forms.
    Verify(VerifyArgs),
    /// Compare a Gauss sum over F_q with its closed form.
    Gauss(GaussArgs),
    /// Distribution of Omega(b) or Delta(b) over b in F_(q^m1)^*.
    Omega(OmegaArgs),
    /// Build the Cayley graph of a projective two-weight code and count it.
    Srg(SrgArgs),
}

#[derive(Args, Debug, Clone, Copy, Serialize)]
pub struct TowerArgs {
    /// Characteristic.
    #[arg(short = 'p')]
    pub p: u32,
    /// q = p^t.
    #[arg(short = 't', default_value_t = 1)]
    pub t: u32,
    #[arg(long)]
    pub m1: u32,
    #[arg(long)]
    pub m2: u32,
    #[arg(short = 'm')]
    pub m: u32,
}

#[derive(Args, Debug, Serialize)]
pub struct ConstructArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub tower: TowerArgs,
    /// Offset of the defining set: 0 (trace zero) or 1 (trace one).
    #[arg(short = 'a')]
    pub a: u32,
    /// Keep one representative per F_q^* orbit (a = 0 only).
    #[arg(long)]
    pub shorten: bool,
    /// Also print the codewords c(alpha_1^s) for s < COUNT.
    #[arg(long, value_name = "COUNT")]
    pub codewords: Option<u64>,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    /// Values of q for the sweep.
    #[arg(long = "q", value_delimiter = ',', default_values_t = [2u64, 3, 4])]
    pub qs: Vec<u64>,
    /// Largest field size q^m in the sweep.
    #[arg(long, default_value_t = 1 << 16)]
    pub max_size: u64,
    /// Check a single code instead of a sweep.
    #[arg(short = 'p', requires_all = ["m1", "m2", "m", "a"])]
    pub p: Option<u32>,
    #[arg(short = 't', default_value_t = 1)]
    pub t: u32,
    #[arg(long)]
    pub m1: Option<u32>,
    #[arg(long)]
    pub m2: Option<u32>,
    #[arg(short = 'm')]
    pub m: Option<u32>,
    #[arg(short = 'a')]
    pub a: Option<u32>,
    #[arg(long)]
    pub shorten: bool,
    /// Check the reference codes listed in a fixture file.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["p", "seed_fixtures"])]
    pub fixtures: Option<PathBuf>,
    /// Regenerate the reference fixture file from computation and exit.
    #[arg(long, value_name = "PATH", conflicts_with = "p")]
    pub seed_fixtures: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
#[command(group = clap::ArgGroup::new("character").required(true).args(["quadratic", "order"]))]
pub struct GaussArgs {
    #[arg(short = 'p')]
    pub p: u32,
    #[arg(short = 't', default_value_t = 1)]
    pub t: u32,
    /// The quadratic character (odd p).
    #[arg(long)]
    pub quadratic: bool,
    /// Order N of a semi-primitive character; N must divide q - 1.
    #[arg(long, value_name = "N")]
    pub order: Option<u64>,
    /// Power s of the order-N character.
    #[arg(long, value_name = "S", default_value_t = 1, requires = "order")]
    pub power: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SumKind {
    Omega,
    Delta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyArg {
    Auto,
    PerElement,
    ResidueClasses,
}

#[derive(Args, Debug, Serialize)]
pub struct OmegaArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub tower: TowerArgs,
    #[arg(long, value_enum, default_value_t = SumKind::Omega)]
    pub kind: SumKind,
    #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
    pub strategy: StrategyArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyArg {
    /// a = 1, m1 = m, m2 = 2.
    TraceOne,
    /// a = 0 shortened, m1 = m, m2 = 2.
    ShortenedTraceZero,
}

#[derive(Args, Debug, Serialize)]
pub struct SrgArgs {
    #[arg(short = 'p')]
    pub p: u32,
    #[arg(short = 't', default_value_t = 1)]
    pub t: u32,
    #[arg(short = 'm')]
    pub m: u32,
    #[arg(long, value_enum)]
    pub family: FamilyArg,
}

/// Failure before any check ran.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn run(cli: &Cli) -> Result<RunReport, InputError> {
    match &cli.command {
        Command::Construct(a) => commands::construct(a),
        Command::Verify(a) => commands::verify(a),
        Command::Gauss(a) => commands::gauss(a),
        Command::Omega(a) => commands::omega(a),
        Command::Srg(a) => commands::srg(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let out = if cli.json {
                report.to_json()
            } else {
                report.to_table()
            };
            print!("{out}");
            if report.failed() {
                ExitCode::from(EXIT_MISMATCH)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
