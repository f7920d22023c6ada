use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Deserialize;

use palinprefix::lab::Phi;
use palinprefix::WordSpec;

use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Flags shared by every subcommand. Each one overrides the config file.
#[derive(Clone, Debug, Default, Args)]
pub struct Flags {
    /// JSON run configuration; flags given on the command line take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Word recipe: fibonacci, sturmian:3,(3), psi:<file> or literal:abaaba.
    #[arg(long, global = true)]
    pub word: Option<String>,
    /// Letter values for the continued fraction, e.g. "a=1,b=2".
    #[arg(long, global = true)]
    pub phi: Option<String>,
    /// Number of symbols to materialize.
    #[arg(long, global = true)]
    pub length: Option<usize>,
    /// Number of approximant generations or listed items.
    #[arg(long, global = true)]
    pub count: Option<usize>,
    /// Upper bound for the first coordinate in the minimal-point scan.
    #[arg(long, global = true)]
    pub bmax: Option<u64>,
    /// Comma-separated exponents for A_eps membership and estimates.
    #[arg(long, global = true, value_delimiter = ',')]
    pub eps: Option<Vec<f64>>,
    /// Exponent used to pick the successor points e_k.
    #[arg(long, global = true)]
    pub eps2: Option<f64>,
    /// Indices below this are allowed to fail asymptotic checks.
    #[arg(long, global = true)]
    pub grace: Option<usize>,
    /// Threads for the minimal-point scan.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum PhiField {
    Text(String),
    Map(BTreeMap<String, u64>),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    word: Option<String>,
    phi: Option<PhiField>,
    length: Option<usize>,
    count: Option<usize>,
    bmax: Option<u64>,
    eps: Option<Vec<f64>>,
    eps2: Option<f64>,
    grace: Option<usize>,
    workers: Option<usize>,
    out: Option<PathBuf>,
    format: Option<Format>,
}

/// Fully resolved settings for one run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub word: WordSpec,
    pub phi: Phi,
    pub length: usize,
    pub count: usize,
    pub bmax: u64,
    pub eps: Vec<f64>,
    pub eps2: f64,
    pub grace: usize,
    pub workers: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
}

pub const DEFAULT_LENGTH: usize = 1000;
pub const DEFAULT_COUNT: usize = 25;
pub const DEFAULT_BMAX: u64 = 1_000_000;
pub const DEFAULT_EPS: [f64; 3] = [0.05, 0.1, 0.2];
pub const DEFAULT_EPS2: f64 = 0.15;
pub const DEFAULT_GRACE: usize = 5;

fn read_config(path: &Path) -> Result<FileConfig, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::config(format!("{}: {e}", path.display())))
}

fn parse_phi(field: PhiField) -> Result<Phi, CliError> {
    let text = match field {
        PhiField::Text(s) => s,
        PhiField::Map(m) => m.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(","),
    };
    text.parse::<Phi>().map_err(|e| CliError::config(format!("phi {text:?}: {e}")))
}

fn positive<T: PartialOrd + Default + Copy + std::fmt::Display>(name: &str, v: T) -> Result<T, CliError> {
    if v > T::default() {
        Ok(v)
    } else {
        Err(CliError::config(format!("{name} must be positive, got {v}")))
    }
}

impl RunConfig {
    pub fn resolve(flags: &Flags) -> Result<Self, CliError> {
        let file = match &flags.config {
            Some(p) => read_config(p)?,
            None => FileConfig::default(),
        };
        let word_text = flags.word.clone().or(file.word).unwrap_or_else(|| "fibonacci".into());
        let word = word_text.parse::<WordSpec>().map_err(|e| CliError::config(format!("word {word_text:?}: {e}")))?;
        let phi = match flags.phi.clone().map(PhiField::Text).or(file.phi) {
            Some(f) => parse_phi(f)?,
            None => Phi::standard(),
        };
        let eps = flags.eps.clone().or(file.eps).unwrap_or_else(|| DEFAULT_EPS.to_vec());
        if eps.is_empty() || eps.iter().any(|e| !(*e > 0.0 && *e < 1.0)) {
            return Err(CliError::config(format!("every eps must lie in (0, 1), got {eps:?}")));
        }
        let eps2 = flags.eps2.or(file.eps2).unwrap_or(DEFAULT_EPS2);
        if !(eps2 > 0.0 && eps2 < 1.0) {
            return Err(CliError::config(format!("eps2 must lie in (0, 1), got {eps2}")));
        }
        let default_workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
        Ok(RunConfig {
            word,
            phi,
            length: positive("length", flags.length.or(file.length).unwrap_or(DEFAULT_LENGTH))?,
            count: positive("count", flags.count.or(file.count).unwrap_or(DEFAULT_COUNT))?,
            bmax: positive("bmax", flags.bmax.or(file.bmax).unwrap_or(DEFAULT_BMAX))?,
            eps,
            eps2,
            grace: flags.grace.or(file.grace).unwrap_or(DEFAULT_GRACE),
            workers: positive("workers", flags.workers.or(file.workers).unwrap_or(default_workers))?,
            out: flags.out.clone().or(file.out),
            format: flags.format.or(file.format).unwrap_or_default(),
        })
    }
}
