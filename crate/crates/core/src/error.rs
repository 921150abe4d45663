use thiserror::Error;

use crate::settings::SettingPair;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("outcome must be +1 or -1, got {0}")]
    InvalidOutcome(i64),

    #[error("empty sequence")]
    EmptySequence,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("settings must be distinct on each arm ({0})")]
    DegenerateSettings(&'static str),

    #[error("non-finite angle")]
    NonFiniteAngle,

    #[error("trial count must be at least {min}, got {got}")]
    TooFewTrials { min: usize, got: usize },

    #[error("sub-run {0} is empty")]
    EmptySubRun(SettingPair),

    #[error("cascade requires equal lengths (ab={ab}, ac={ac}, db={db}, dc={dc})")]
    UnequalSubRuns {
        ab: usize,
        ac: usize,
        db: usize,
        dc: usize,
    },

    #[error("cascade is infeasible at step {step}")]
    InfeasibleCascade { step: usize },

    #[error("+1 count {k} exceeds length {n}")]
    CountExceedsLength { k: usize, n: usize },

    #[error("invalid permutation")]
    InvalidPermutation,

    #[error("no trials")]
    NoTrials,

    #[error("unknown setting pair at row {row}: {label:?}")]
    UnknownPair { row: usize, label: String },

    #[error("invalid outcome at row {row}: {value:?}")]
    BadOutcomeField { row: usize, value: String },

    #[error("missing column {0:?}")]
    MissingColumn(&'static str),

    #[error("unrecognized header {0:?}")]
    UnknownHeader(String),

    #[error("malformed record at row {row}: {reason}")]
    MalformedRow { row: usize, reason: String },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
