use std::path::{Path, PathBuf};

use ltsrank_core::corpus::CorpusError;
use ltsrank_core::lts::GenerateError;
use ltsrank_core::stats::StatsError;
use ltsrank_service::SetupError;

/// Data-level failures; all map to exit status 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Service(#[from] SetupError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("output: {0}")]
    Output(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Data(String),
}

impl CliError {
    /// Output went to a pipe whose reader has gone away.
    pub fn is_broken_pipe(&self) -> bool {
        use std::io::ErrorKind::BrokenPipe;
        match self {
            CliError::Output(e) => e.kind() == BrokenPipe,
            CliError::Csv(e) => matches!(e.kind(), csv::ErrorKind::Io(e) if e.kind() == BrokenPipe),
            CliError::Json(e) => e.io_error_kind() == Some(BrokenPipe),
            _ => false,
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}
