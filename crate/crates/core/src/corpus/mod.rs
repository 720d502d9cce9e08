//! On-disk corpus of `.aut` designs and the append-only annotation log.

mod index;
mod log;

pub use self::index::{ingest_dir, Corpus, CorpusEntry, CorpusIndex, EntryStatus};
pub use self::log::AnnotationLog;

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("cannot read corpus directory {path}: {source}")]
    UnreadableDir {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("design id `{id}` is used by both {first} and {second}")]
    DuplicateId {
        id: String,
        first: PathBuf,
        second: PathBuf,
    },
    #[error("annotation references design `{0}`, which is not in the corpus")]
    UnknownDesign(String),
    #[error("invalid annotation: {0}")]
    InvalidRecord(String),
    #[error("annotation log {path}, line {line}: {reason}")]
    CorruptLog {
        path: PathBuf,
        line: usize,
        reason: String,
    },
    #[error("annotation log io: {0}")]
    Io(#[from] std::io::Error),
}
