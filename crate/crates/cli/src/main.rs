//! `vform` — exact Gram matrices, signatures, unitarity verdicts and property
//! suites for configured vertex-algebra presentations.
//!
//! Exit status: 0 on success, 1 when a property suite fails, 2 on bad input.

mod commands;
mod render;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use vform::{HalfInt, Rat};

/// Largest weight accepted without `--cap-override`.
pub const WEIGHT_CAP: HalfInt = HalfInt::from_int(5);

#[derive(Parser, Debug)]
#[command(name = "vform", version, about = "Exact invariant Hermitian forms on vertex algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generators, weights, parities, conjugation, validation and central charge.
    Describe {
        #[command(flatten)]
        common: Common,
    },
    /// The Gram matrix of one weight space, symbolic in k unless a level is given.
    Gram {
        #[command(flatten)]
        common: Common,
        /// Conformal weight of the space.
        #[arg(long, short = 'w')]
        weight: HalfInt,
        /// Specialize the level; at most one.
        #[arg(long)]
        level: Vec<Rat>,
    },
    /// Signature per weight up to a bound and the resulting verdict.
    Unitarity {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_weight: HalfInt,
        /// Levels to test; required when the presentation depends on k.
        #[arg(long)]
        level: Vec<Rat>,
    },
    /// Levels at which a Gram determinant vanishes, with kernel evidence.
    Collapsing {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        max_weight: HalfInt,
    },
    /// Run property suites; non-zero exit status on failure.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Weight bound (default: 5/2, or 3 for the a-operator suite).
        #[arg(long)]
        max_weight: Option<HalfInt>,
        /// Levels for level-dependent presentations (default: 1, 7/2, -1/3).
        #[arg(long)]
        level: Vec<Rat>,
        /// Seed for sampled suites.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of samples for the residue suite.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Presentation configuration (JSON). Optional only for `check --suite residue`.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Allow weights above the hard cap.
    #[arg(long)]
    pub cap_override: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Invariance of the form under every mode, and conjugate symmetry.
    Invariance,
    /// The residue identity on seeded random exponents.
    Residue,
    /// ω on the minimal-W Zhu algebra.
    Zhu,
    /// Mode commutators against the λ-bracket table.
    Borcherds,
    /// A(1/z)A(z) = id, g² = id and ω² = id.
    AOperator,
    /// Every suite that applies to the configuration.
    All,
}

/// Failure to run a command at all.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Presentation(#[from] vform::presentation::PresentationError),
    #[error(transparent)]
    Hermitian(#[from] vform::hermitian::HermitianError),
    #[error(transparent)]
    Engine(#[from] vform::engine::EngineError),
    #[error(transparent)]
    Zhu(#[from] vform::zhu::ZhuError),
    #[error(transparent)]
    Scalar(#[from] vform::ScalarError),
}

/// Text to print and whether every checked property held.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    pub fn ok(text: String) -> Self {
        Outcome { text, passed: true }
    }
}

pub fn check_cap(w: HalfInt, common: &Common) -> Result<(), CliError> {
    if w > WEIGHT_CAP && !common.cap_override {
        return Err(CliError::Input(format!(
            "weight {w} exceeds the cap of {WEIGHT_CAP}; weight spaces grow too fast above it (pass --cap-override to proceed)"
        )));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Describe { common } => commands::describe(&common),
        Command::Gram { common, weight, level } => commands::gram(&common, weight, &level),
        Command::Unitarity { common, max_weight, level } => commands::unitarity(&common, max_weight, &level),
        Command::Collapsing { common, max_weight } => commands::collapsing(&common, max_weight),
        Command::Check { common, suite, max_weight, level, seed, samples } => {
            suites::check(&common, suite, max_weight, &level, seed, samples)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
