//! Command-line front end for `orddec`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
//! budget exceeded.

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
pub mod verify;

pub use verify::{Mismatch, Status, VerificationRun, CHECK_IDS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "orddec",
    version,
    about = "Oriented order-decreasing transformation semigroups"
)]
struct Cli {
    /// Output format; defaults to csv for `table`, lines for `enumerate`, json otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads for parallel stages.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Lines,
    Pretty,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form cardinality of a family, optionally checked by enumeration.
    Count(CountArgs),
    /// Cardinality, nilpotent count, rank and number of maximal subsemigroups for every (n, r).
    Table(TableArgs),
    /// List the members of a family in line format.
    Enumerate(EnumerateArgs),
    /// The minimal generating set C ∪ G of ORD(n, r).
    Generators(NrArgs),
    /// Factor an element of RD*(n, r) over OPD(n, r) and G.
    Factor(FactorArgs),
    /// Maximal subsemigroups of ORD(n, r) or ORD_n.
    Maximal(MaximalArgs),
    /// Run named verification checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Ord,
    Opd,
    Rdstar,
    RdstarOrd,
    J,
    GSlice,
    Chain,
    AllDecreasing,
    NilpotentOrd,
    NilpotentRdstar,
    NilpotentJ,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long)]
    n: usize,
    /// Rank bound (exact rank for j and g-slice).
    #[arg(long)]
    r: Option<usize>,
    /// Order-reversing degree, for rdstar-ord and g-slice.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum, default_value_t = FamilyName::Ord)]
    family: FamilyName,
}

#[derive(Debug, Args)]
struct CountArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Also count by exhaustive enumeration.
    #[arg(long)]
    enumerate: bool,
    /// Raise the enumeration budget.
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long)]
    max_n: usize,
    /// Add enumerated columns up to the enumeration budget.
    #[arg(long)]
    enumerate: bool,
    /// Raise the enumeration budget.
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Raise the enumeration budget.
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Debug, Args)]
struct NrArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
}

#[derive(Debug, Args)]
struct FactorArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    /// The element, in line format.
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
}

#[derive(Debug, Args)]
struct MaximalArgs {
    #[arg(long)]
    n: usize,
    /// Required unless --full-semigroup is given.
    #[arg(long, required_unless_present = "full_semigroup")]
    r: Option<usize>,
    /// Check each descriptor with the maximality battery.
    #[arg(long)]
    verify: bool,
    /// Describe the maximal subsemigroups of ORD_n instead.
    #[arg(long, conflicts_with = "r")]
    full_semigroup: bool,
    /// Raise the maximality budget.
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// A check id, or `all`.
    #[arg(long)]
    check: String,
    #[arg(long, required_unless_present = "max_n")]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Run every n from 4 up to this value.
    #[arg(long, conflicts_with = "n")]
    max_n: Option<usize>,
    /// Seed for randomized spot checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Raise every budget to this chain size.
    #[arg(long)]
    budget: Option<usize>,
}

/// A terminal error with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn budget(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_BUDGET,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<orddec::Error> for CliError {
    fn from(e: orddec::Error) -> Self {
        let code = match e {
            orddec::Error::Budget { .. } => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Self {
                code: EXIT_OK,
                message: String::new(),
            };
        }
        Self {
            code: EXIT_FAILURE,
            message: format!("i/o error: {e}"),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self {
            code: EXIT_FAILURE,
            message: format!("csv error: {e}"),
        }
    }
}

pub(crate) type CliResult<T> = Result<T, CliError>;

/// Parses `argv` (including the program name), runs the command against the
/// process's standard streams and returns the exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// As [`run_cli`], writing to the given streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.threads {
        Some(k) => match rayon::ThreadPoolBuilder::new()
            .num_threads(k as usize)
            .build()
        {
            Ok(pool) => {
                let (mut o, mut e) = (Vec::new(), Vec::new());
                let result = pool.install(|| dispatch(&cli, &mut o, &mut e));
                let _ = out.write_all(&o);
                let _ = err.write_all(&e);
                result
            }
            Err(e) => Err(CliError::usage(format!("cannot start {k} threads: {e}"))),
        },
        None => dispatch(&cli, out, err),
    };
    let code = match result {
        Ok(code) => code,
        Err(e) => {
            if !e.message.is_empty() {
                let _ = writeln!(err, "error: {e}");
            }
            e.code
        }
    };
    let _ = out.flush();
    code
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let format = cli.format;
    match &cli.command {
        Command::Count(a) => commands::count(
            &a.family,
            a.enumerate,
            a.budget,
            format.unwrap_or(Format::Json),
            out,
            err,
        ),
        Command::Table(a) => commands::table(
            a.max_n,
            a.enumerate,
            a.budget,
            format.unwrap_or(Format::Csv),
            out,
            err,
        ),
        Command::Enumerate(a) => commands::enumerate(
            &a.family,
            a.budget,
            format.unwrap_or(Format::Lines),
            out,
            err,
        ),
        Command::Generators(a) => {
            commands::generators(a.n, a.r, format.unwrap_or(Format::Json), out)
        }
        Command::Factor(a) => {
            commands::factor(a.n, a.r, &a.alpha, format.unwrap_or(Format::Json), out)
        }
        Command::Maximal(a) => commands::maximal(a, format.unwrap_or(Format::Json), out, err),
        Command::Verify(a) => {
            let plan = verify::Plan {
                check: a.check.clone(),
                n: a.n,
                r: a.r,
                max_n: a.max_n,
                seed: a.seed,
                budget: a.budget,
            };
            verify::run(&plan, format.unwrap_or(Format::Json), out, err)
        }
    }
}
