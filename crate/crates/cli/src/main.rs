use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use fuzzyrel::{EnumerationCap, Rational};

mod commands;

const FORMATS_HELP: &str = "\
FILE FORMATS:
  Relations are comma-separated tables. The header row starts with an empty
  cell or `label` followed by the column labels; every other row is a row
  label followed by degrees in [0, 1]:

      label,R,I,G,Ca
      A,0.7,0.5,0.3,0

  Targets (R) and candidate rows (P) are one-row relation tables.
  Grade counts are `grade,count` lines; rosters are `student,grade` lines.
  Both accept an optional header line.

EXIT CODES:
  0  affirmative result (composed, solvable, is a solution)
  1  well-formed negative result (no solution, not a solution)
  2  operational error (unreadable or invalid input, enumeration cap)";

#[derive(Debug, Parser)]
#[command(
    name = "fuzzyrel",
    version,
    about = "Max-min fuzzy relations, inverse relation equations and learning-stage profiles",
    after_help = FORMATS_HELP
)]
pub struct Cli {
    #[command(flatten)]
    pub options: Options,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Options {
    /// Tolerance for comparing composed degrees with targets.
    #[arg(long = "tol", global = true, default_value_t = 1e-9, value_parser = parse_tolerance)]
    pub tolerance: f64,

    /// Decimal places for grade fractions in the profile pipeline [default: 2].
    #[arg(long = "round", global = true, value_parser = clap::value_parser!(u32).range(0..=9))]
    pub round_digits: Option<u32>,

    /// Use exact rational arithmetic and skip rounding of grade fractions.
    #[arg(long, global = true, conflicts_with = "round_digits")]
    pub exact: bool,

    /// Largest problem (unknowns x equations) for minimal-solution enumeration.
    #[arg(long, global = true, default_value = "12x12", value_parser = parse_cap)]
    pub cap: EnumerationCap,

    /// Write the result here instead of standard output.
    #[arg(long = "output", global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Plain tables and prose.
    Text,
    /// Pretty-printed JSON.
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Max-min composition P ∘ Q of two relation tables.
    #[command(after_help = FORMATS_HELP)]
    Compose { p: PathBuf, q: PathBuf },

    /// Turn a class's grades into a profile over learning stages.
    ///
    /// The grade scale is taken from the row labels of Q and the stages from
    /// its column labels.
    #[command(after_help = FORMATS_HELP)]
    Profile {
        /// `grade,count` table.
        #[arg(long, required_unless_present = "roster", conflicts_with = "roster")]
        grades: Option<PathBuf>,
        /// `student,grade` table.
        #[arg(long)]
        roster: Option<PathBuf>,
        /// Grade-to-stage relation.
        #[arg(long)]
        q: PathBuf,
    },

    /// Find all rows P with P ∘ Q = R: the greatest and every minimal solution.
    ///
    /// Exits 1 when no solution exists.
    #[command(after_help = FORMATS_HELP)]
    Solve { q: PathBuf, r: PathBuf },

    /// Check whether the row P satisfies P ∘ Q = R.
    ///
    /// Exits 1 when it does not.
    #[command(after_help = FORMATS_HELP)]
    Check { p: PathBuf, q: PathBuf, r: PathBuf },

    /// Run the bundled 60-student classroom example end to end.
    #[command(name = "paper-demo", after_help = FORMATS_HELP)]
    PaperDemo,
}

fn parse_tolerance(text: &str) -> Result<f64, String> {
    let tol: f64 = text
        .parse()
        .map_err(|_| format!("`{text}` is not a number"))?;
    if tol.is_finite() && tol >= 0.0 {
        Ok(tol)
    } else {
        Err("tolerance must be a finite non-negative number".into())
    }
}

fn parse_cap(text: &str) -> Result<EnumerationCap, String> {
    let (rows, cols) = text
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("`{text}` is not of the form RxC"))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| format!("`{s}` is not a positive integer"))
    };
    Ok(EnumerationCap {
        max_unknowns: parse(rows)?,
        max_equations: parse(cols)?,
    })
}

/// Exit status of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Affirmative,
    Negative,
}

fn emit(options: &Options, body: &str) -> anyhow::Result<()> {
    match &options.output {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Verdict> {
    let (body, verdict) = if cli.options.exact {
        commands::run::<Rational>(cli)?
    } else {
        commands::run::<f64>(cli)?
    };
    emit(&cli.options, &body)?;
    Ok(verdict)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Verdict::Affirmative) => ExitCode::SUCCESS,
        Ok(Verdict::Negative) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
