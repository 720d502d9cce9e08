//! Pairwise-comparison statistics: pair sampling, win matrices,
//! Bradley-Terry fitting, Kendall's tau and inter-annotator agreement.

mod agreement;
mod bradley_terry;
mod correlation;
mod kendall;
mod matrix;
mod pairs;
mod records;

pub use agreement::agreement;
pub use bradley_terry::{fit_bt, fit_bt_traced, log_likelihood, BtOptions, BtResult};
pub use correlation::{correlate, CorrelationReport, CorrelationRow};
pub use kendall::{kendall_tau, TauResult, EXACT_P_VALUE_BELOW};
pub use matrix::{aggregate, ComparisonMatrix, Polarity};
pub use pairs::{sample_pairs, PairSample, MAX_SAMPLE_ATTEMPTS};
pub use records::{read_records_csv, write_records_csv, Choice, ComparisonRecord, RECORD_CSV_HEADER};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StatsError {
    #[error("cannot sample {requested} distinct pairs from {items} items (at most {max})")]
    PairCount {
        items: usize,
        requested: usize,
        max: usize,
    },
    #[error("record references unknown design `{0}`")]
    UnknownDesign(String),
    #[error("invalid comparison record: {0}")]
    InvalidRecord(String),
    #[error("no comparisons to fit")]
    EmptyMatrix,
    #[error("need at least {needed} items, got {got}")]
    TooFewItems { needed: usize, got: usize },
    #[error("win graph is not strongly connected and smoothing is disabled")]
    NotStronglyConnected,
    #[error("rankings have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("Kendall's tau is undefined: every value in one ranking is tied")]
    TauUndefined,
    #[error("ranking contains a NaN value")]
    NotANumber,
    #[error("need at least two annotators, got {0}")]
    NotEnoughAnnotators(usize),
    #[error("no pair was annotated by more than one annotator")]
    NoOverlap,
    #[error("item sets differ: {0}")]
    ItemSetMismatch(String),
    #[error("csv: {0}")]
    Csv(String),
}

impl From<csv::Error> for StatsError {
    fn from(e: csv::Error) -> Self {
        StatsError::Csv(e.to_string())
    }
}
