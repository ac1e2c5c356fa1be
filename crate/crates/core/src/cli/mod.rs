//! Command-line front end: evaluation, comparison, table reproduction and
//! the `c(theta)` locus.

mod commands;
mod format;
pub mod tables;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;

pub use format::{Num, Outcome};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "mittag", version, about = "High-precision E_a(-x) and its exponentially small remainder")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Order a in (0, 1]; decimals or a fraction such as 1/3
    #[arg(long = "a", global = true, value_parser = parse_order)]
    pub a: Option<String>,

    /// Modulus x > 0 of z = -x
    #[arg(long = "x", global = true, value_parser = parse_positive)]
    pub x: Option<String>,

    /// Phase of z for `compare`; a real number or a multiple of pi like 0.95pi
    #[arg(long = "theta", global = true)]
    pub theta: Option<String>,

    /// Highest index k of the B_{2k} terms
    #[arg(long = "kmax", global = true)]
    pub kmax: Option<usize>,

    /// Working decimal digits
    #[arg(long = "digits", global = true, default_value_t = 30, value_parser = clap::value_parser!(u32).range(16..))]
    pub digits: u32,

    #[arg(long = "format", global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report here instead of stdout
    #[arg(long = "out", global = true)]
    pub out: Option<PathBuf>,

    /// Number of theta samples for `fig1-locus`
    #[arg(long = "samples", global = true, default_value_t = 400, value_parser = clap::value_parser!(u32).range(2..))]
    pub samples: u32,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// E_a(-x), the truncated algebraic sum, their difference and the remainder expansion
    Eval,
    /// Partial sums of the remainder expansion against the direct evaluation
    Compare,
    /// B_{2k}(pi) for a = 0.99, x = 40
    #[command(name = "repro-table1")]
    ReproTable1,
    /// Remainder against truncation level near a = 1
    #[command(name = "repro-table2")]
    ReproTable2,
    /// Script-E and the remainder for a = 0.95 down to 0.25
    #[command(name = "repro-table3")]
    ReproTable3,
    /// c(theta) over (0, 3 pi a)
    #[command(name = "fig1-locus")]
    Fig1Locus,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Eval => "eval",
            Command::Compare => "compare",
            Command::ReproTable1 => "repro-table1",
            Command::ReproTable2 => "repro-table2",
            Command::ReproTable3 => "repro-table3",
            Command::Fig1Locus => "fig1-locus",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Validated settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub a: Option<String>,
    pub x: Option<String>,
    pub theta: Option<String>,
    pub kmax: Option<usize>,
    pub digits: u32,
    pub format: Format,
    pub output_path: Option<PathBuf>,
    pub samples: u32,
}

impl From<Cli> for RunConfig {
    fn from(c: Cli) -> Self {
        RunConfig {
            command: c.command,
            a: c.a,
            x: c.x,
            theta: c.theta,
            kmax: c.kmax,
            digits: c.digits,
            format: c.format,
            output_path: c.out,
            samples: c.samples,
        }
    }
}

fn rough_value(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n.trim().parse().map_err(|_| format!("not a number: {s:?}"))?;
            let d: f64 = d.trim().parse().map_err(|_| format!("not a number: {s:?}"))?;
            n / d
        }
        None => s.parse().map_err(|_| format!("not a number: {s:?}"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("not a finite number: {s:?}"))
    }
}

fn parse_order(s: &str) -> Result<String, String> {
    let v = rough_value(s)?;
    if v > 0.0 && v <= 1.0 {
        Ok(s.trim().to_string())
    } else {
        Err(format!("a must lie in (0, 1] (got {s})"))
    }
}

fn parse_positive(s: &str) -> Result<String, String> {
    if rough_value(s)? > 0.0 {
        Ok(s.trim().to_string())
    } else {
        Err(format!("x must be positive (got {s})"))
    }
}

/// Runs one command and returns the report.
pub fn execute(cfg: &RunConfig) -> Result<Outcome, Error> {
    match cfg.command {
        Command::Eval => commands::eval(cfg),
        Command::Compare => commands::compare(cfg),
        Command::ReproTable1 => commands::repro_table1(cfg),
        Command::ReproTable2 => commands::repro_table2(cfg),
        Command::ReproTable3 => commands::repro_table3(cfg),
        Command::Fig1Locus => commands::fig1_locus(cfg),
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::PrecisionBudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

/// Parses `args`, runs the command, writes the report and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let cfg = RunConfig::from(cli);
    let outcome = match execute(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let body = match outcome.render(cfg.format) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &cfg.output_path {
        Some(p) => std::fs::write(p, body.as_bytes()),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return EXIT_USAGE;
    }
    outcome.code
}
