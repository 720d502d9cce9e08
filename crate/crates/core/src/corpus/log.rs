use std::collections::BTreeSet;
use std::fs::{File, OpenOptions};
use std::io::{ErrorKind, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use super::CorpusError;
use crate::stats::ComparisonRecord;

/// Append-only JSON-lines log of comparison records.
///
/// Writers take an exclusive advisory lock on the file (and an in-process
/// mutex), so concurrent appends from threads or processes never interleave.
#[derive(Debug)]
pub struct AnnotationLog {
    path: PathBuf,
    known_designs: Option<BTreeSet<String>>,
    writer: Mutex<()>,
}

impl AnnotationLog {
    /// A log that accepts records for any design.
    pub fn open(path: impl Into<PathBuf>) -> Self {
        Self {
            path: path.into(),
            known_designs: None,
            writer: Mutex::new(()),
        }
    }

    /// A log that rejects records naming designs outside `designs`.
    pub fn for_corpus(path: impl Into<PathBuf>, designs: impl IntoIterator<Item = String>) -> Self {
        Self {
            known_designs: Some(designs.into_iter().collect()),
            ..Self::open(path)
        }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn append(&self, record: &ComparisonRecord) -> Result<(), CorpusError> {
        record
            .validate()
            .map_err(|e| CorpusError::InvalidRecord(e.to_string()))?;
        if let Some(known) = &self.known_designs {
            for id in [&record.design_a, &record.design_b] {
                if !known.contains(id) {
                    return Err(CorpusError::UnknownDesign(id.clone()));
                }
            }
        }
        let mut line = serde_json::to_vec(record).expect("records always serialize");
        line.push(b'\n');

        let _guard = self.writer.lock().unwrap_or_else(|e| e.into_inner());
        let mut file = OpenOptions::new()
            .read(true)
            .write(true)
            .create(true)
            .truncate(false)
            .open(&self.path)?;
        file.lock()?;
        let len = file.seek(SeekFrom::End(0))?;
        if len > 0 {
            // Drop a partial line left by an interrupted writer.
            let keep = complete_prefix_len(&mut file, len)?;
            if keep != len {
                log::warn!(
                    "{}: discarding {} bytes of a truncated trailing record",
                    self.path.display(),
                    len - keep
                );
                file.set_len(keep)?;
                file.seek(SeekFrom::Start(keep))?;
            }
        }
        file.write_all(&line)?;
        file.sync_data()?;
        file.unlock()?;
        Ok(())
    }

    /// All records in append order. A missing file is an empty log; an
    /// incomplete final line is skipped with a warning.
    pub fn load(&self) -> Result<Vec<ComparisonRecord>, CorpusError> {
        let mut file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        file.lock_shared()?;
        let mut text = String::new();
        file.read_to_string(&mut text)?;
        file.unlock()?;

        let ends_clean = text.is_empty() || text.ends_with('\n');
        let lines: Vec<&str> = text.lines().collect();
        let mut records = Vec::with_capacity(lines.len());
        for (i, line) in lines.iter().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let last = i + 1 == lines.len();
            match serde_json::from_str::<ComparisonRecord>(line) {
                Ok(r) if last && !ends_clean => {
                    // Parses, but the writer never finished the line.
                    log::warn!("{}: skipping unterminated final record", self.path.display());
                    drop(r);
                }
                Ok(r) => records.push(r),
                Err(e) if last => {
                    log::warn!(
                        "{}: skipping truncated final record at line {}: {e}",
                        self.path.display(),
                        i + 1
                    );
                }
                Err(e) => {
                    return Err(CorpusError::CorruptLog {
                        path: self.path.clone(),
                        line: i + 1,
                        reason: e.to_string(),
                    })
                }
            }
        }
        Ok(records)
    }
}

/// Length of the file up to and including its last newline.
fn complete_prefix_len(file: &mut File, len: u64) -> std::io::Result<u64> {
    let mut pos = len;
    let mut buf = [0u8; 4096];
    while pos > 0 {
        let chunk = pos.min(buf.len() as u64);
        pos -= chunk;
        file.seek(SeekFrom::Start(pos))?;
        let slice = &mut buf[..chunk as usize];
        file.read_exact(slice)?;
        if let Some(i) = slice.iter().rposition(|&b| b == b'\n') {
            return Ok(pos + i as u64 + 1);
        }
    }
    Ok(0)
}
