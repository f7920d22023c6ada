use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("prefix of length {length} is not determined by the {available} partial quotients supplied")]
    InsufficientQuotients { length: usize, available: usize },

    #[error("word does not behave like a member of W beyond index {index}")]
    NotInW { index: usize },

    #[error("seed incompatible with psi at step {step}: {reason}")]
    SeedIncompatible { step: usize, reason: String },

    #[error("synthetic sequence stops increasing at index {0}")]
    NonIncreasing(usize),

    #[error("refinement cap of {cap} partial quotients exceeded")]
    RefinementCap { cap: usize },

    #[error("triples are not linearly dependent (det = {det})")]
    NotDependent { det: String },

    #[error("inputs are collinear")]
    CollinearInput,

    #[error("zero vector")]
    ZeroInput,

    #[error("phi is not injective on the alphabet")]
    NonInjectivePhi,

    #[error("convergent matrix is not symmetric at n = {0}")]
    SymmetryViolation(usize),

    #[error("d_{k} is not in A_eps for eps = {eps}")]
    DNotInA { k: usize, eps: f64 },

    #[error("growth hypothesis violated: liminf of log ratios is {liminf}")]
    GrowthHypothesis { liminf: f64 },

    #[error("dependence violation in chain step {step}")]
    DependenceViolation { step: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
