use thiserror::Error;

use crate::subset::Subset;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set of size {n} exceeds the enumeration limit {limit} (set OSCALC_MAX_N to override)")]
    GuardExceeded { n: usize, limit: usize },

    #[error("ground set of size {0} is larger than the supported maximum of 32 points")]
    TooLarge(usize),

    #[error("label {label} is outside the ground set 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },

    #[error("line {0} has fewer than three points")]
    ShortLine(Subset),

    #[error("lines {0} and {1} share two or more points")]
    LinesOverlap(Subset, Subset),

    #[error("from_lines needs at least three points, got {0}")]
    TooFewPoints(usize),

    #[error("circuit {0} contains circuit {1}")]
    NestedCircuits(Subset, Subset),

    #[error("circuit elimination fails for {0} and {1} at element {2}")]
    EliminationFails(Subset, Subset, usize),

    #[error("matroid is not simple: {0}")]
    NotSimple(String),

    #[error("operation needs a matrix presentation")]
    NotMatrix,

    #[error("rank {r} is out of range 1..={max}")]
    RankOutOfRange { r: usize, max: usize },

    #[error("{0} is not a flat")]
    NotFlat(Subset),

    #[error("{0} is not line-closed")]
    NotLineClosed(Subset),

    #[error("invalid linear order: {0}")]
    BadOrder(String),

    #[error("invalid partial order: {0}")]
    BadPartialOrder(String),

    #[error("line-closed set {0} has no unique smallest element under the partial order")]
    NoUniqueMinimum(Subset),

    #[error("invalid realization: {0}")]
    BadRealization(String),

    #[error("no generic section found after {attempts} attempts (seed {seed})")]
    SectionFailed { attempts: usize, seed: u64 },

    #[error("formalization has a degenerate coordinate at point {0}")]
    DegenerateColumn(usize),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },

    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),

    #[error("internal identity violated: {0}")]
    Identity(String),
}

impl Error {
    /// Failures of a mathematical identity, as opposed to bad input.
    pub fn is_identity_violation(&self) -> bool {
        matches!(self, Error::Identity(_))
    }
}
