//! Command-line front end: words, continued fractions, approximants, minimal
//! points and the verification and exponent suites, as JSON or CSV.

mod commands;
mod config;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use palinprefix::lab::{GOLDEN, SIGMA2};
use palinprefix::Error;

use commands::{BetaOverride, SpectrumArgs};
use config::{Flags, RunConfig};

/// Exit codes.
const EXIT_ASSERTION: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_INSUFFICIENT: u8 = 3;
const EXIT_REFINEMENT: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    code: u8,
    msg: String,
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError { code: EXIT_CONFIG, msg: msg.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } | Error::NonInjectivePhi | Error::Domain(_) => EXIT_CONFIG,
            Error::InsufficientData(_) | Error::InsufficientQuotients { .. } => EXIT_INSUFFICIENT,
            Error::RefinementCap { .. } => EXIT_REFINEMENT,
            _ => EXIT_ASSERTION,
        };
        CliError { code, msg: e.to_string() }
    }
}

#[derive(Parser)]
#[command(name = "palinprefix", version, about = "Palindromic prefixes and simultaneous approximation to (xi, xi^2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand)]
enum Command {
    /// Prefix of a word, its palindromic prefix lengths and the growth rate delta.
    Word,
    /// Partial quotients, convergents and an enclosure of xi built from the word.
    Xi,
    /// Points built from the palindromic prefixes.
    Approximants,
    /// Record-breaking points of the scan up to --bmax.
    Minpoints,
    /// Successor points and bracket chains between consecutive corners of the scan.
    Chains,
    /// Index function read off the word and off the approximants.
    Psi,
    /// Runs every exact check; exits 1 if one fails above the grace index.
    Verify,
    /// Exponent estimates and the epsilon bound.
    Exponents {
        /// Value for beta_1 in the epsilon bound; defaults to beta_0.
        #[arg(long)]
        beta1: Option<f64>,
        /// Value for beta_0 in the epsilon bound; defaults to the growth estimate.
        #[arg(long)]
        beta0: Option<f64>,
    },
    /// Growth rates of periodic offset patterns and the values inside a gap.
    Spectrum {
        #[arg(long, default_value_t = 4)]
        period: usize,
        #[arg(long, default_value_t = 4)]
        offset: usize,
        #[arg(long, default_value_t = 1000)]
        horizon: usize,
        #[arg(long, default_value_t = GOLDEN + 0.01)]
        gap_lo: f64,
        #[arg(long, default_value_t = SIGMA2 - 0.01)]
        gap_hi: f64,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let cfg = RunConfig::resolve(&cli.flags)?;
    let out = match cli.command {
        Command::Word => commands::word(&cfg)?,
        Command::Xi => commands::xi(&cfg)?,
        Command::Approximants => commands::approximants(&cfg)?,
        Command::Minpoints => commands::minpoints(&cfg)?,
        Command::Chains => commands::chains(&cfg)?,
        Command::Psi => commands::psi(&cfg)?,
        Command::Verify => commands::verify(&cfg)?,
        Command::Exponents { beta1, beta0 } => commands::exponents(&cfg, &BetaOverride { beta1, beta0 })?,
        Command::Spectrum { period, offset, horizon, gap_lo, gap_hi } => {
            commands::spectrum(&SpectrumArgs { period, offset, horizon, gap: (gap_lo, gap_hi) })?
        }
    };
    out.emit(cfg.format, cfg.out.as_deref())?;
    Ok(out.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("palinprefix: at least one check failed");
            ExitCode::from(EXIT_ASSERTION)
        }
        Err(e) => {
            eprintln!("palinprefix: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
