use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::CorpusError;
use crate::lts::{parse_aut, LtsDesign};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum EntryStatus {
    Ok {
        #[serde(rename = "N")]
        num_states: usize,
        #[serde(rename = "E")]
        num_transitions: usize,
    },
    Error {
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub design_id: String,
    pub path: PathBuf,
    #[serde(flatten)]
    pub status: EntryStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusIndex {
    pub root: PathBuf,
    /// Sorted by file name.
    pub entries: Vec<CorpusEntry>,
}

impl CorpusIndex {
    pub fn ok_entries(&self) -> impl Iterator<Item = &CorpusEntry> {
        self.entries
            .iter()
            .filter(|e| matches!(e.status, EntryStatus::Ok { .. }))
    }

    pub fn errors(&self) -> impl Iterator<Item = (&CorpusEntry, &str)> {
        self.entries.iter().filter_map(|e| match &e.status {
            EntryStatus::Error { message } => Some((e, message.as_str())),
            EntryStatus::Ok { .. } => None,
        })
    }
}

/// An ingested corpus: the index plus every design that parsed.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub index: CorpusIndex,
    designs: BTreeMap<String, LtsDesign>,
}

impl Corpus {
    pub fn load(dir: impl AsRef<Path>) -> Result<Self, CorpusError> {
        let (index, designs) = scan(dir.as_ref())?;
        Ok(Self { index, designs })
    }

    pub fn get(&self, id: &str) -> Option<&LtsDesign> {
        self.designs.get(id)
    }

    pub fn contains(&self, id: &str) -> bool {
        self.designs.contains_key(id)
    }

    /// Parsed designs ordered by id.
    pub fn designs(&self) -> impl Iterator<Item = &LtsDesign> {
        self.designs.values()
    }

    pub fn ids(&self) -> Vec<String> {
        self.designs.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.designs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.designs.is_empty()
    }
}

/// Parses every `*.aut` file in `dir` (not recursive). Files that fail to
/// read or parse become error entries.
pub fn ingest_dir(dir: impl AsRef<Path>) -> Result<CorpusIndex, CorpusError> {
    scan(dir.as_ref()).map(|(index, _)| index)
}

fn scan(dir: &Path) -> Result<(CorpusIndex, BTreeMap<String, LtsDesign>), CorpusError> {
    let unreadable = |source| CorpusError::UnreadableDir {
        path: dir.to_path_buf(),
        source,
    };
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(unreadable)?
        .collect::<Result<Vec<_>, _>>()
        .map_err(unreadable)?
        .into_iter()
        .map(|e| e.path())
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "aut"))
        .collect();
    paths.sort();

    let mut seen: BTreeMap<String, PathBuf> = BTreeMap::new();
    let mut designs = BTreeMap::new();
    let mut entries = Vec::with_capacity(paths.len());
    for path in paths {
        let design_id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        if let Some(first) = seen.insert(design_id.clone(), path.clone()) {
            return Err(CorpusError::DuplicateId {
                id: design_id,
                first,
                second: path,
            });
        }
        let parsed = fs::read_to_string(&path)
            .map_err(|e| e.to_string())
            .and_then(|text| parse_aut(&text).map_err(|e| e.to_string()));
        let status = match parsed {
            Ok(d) => {
                let status = EntryStatus::Ok {
                    num_states: d.num_states(),
                    num_transitions: d.num_transitions(),
                };
                designs.insert(design_id.clone(), d.with_id(design_id.clone()));
                status
            }
            Err(message) => EntryStatus::Error { message },
        };
        entries.push(CorpusEntry {
            design_id,
            path,
            status,
        });
    }
    Ok((
        CorpusIndex {
            root: dir.to_path_buf(),
            entries,
        },
        designs,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_dir() {
        let dir = tempfile::tempdir().unwrap();
        let index = ingest_dir(dir.path()).unwrap();
        assert!(index.entries.is_empty());
    }

    #[test]
    fn valid_and_malformed() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("good.aut"), "des (0, 1, 2)\n(0, \"a\", 1)\n").unwrap();
        fs::write(dir.path().join("bad.aut"), "des (0, 2, 2)\n(0, \"a\", 1)\n").unwrap();
        fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
        let corpus = Corpus::load(dir.path()).unwrap();
        let index = &corpus.index;
        assert_eq!(index.entries.len(), 2);
        assert_eq!(index.entries[0].design_id, "bad");
        assert!(matches!(&index.entries[0].status, EntryStatus::Error { message } if message.contains("line 3")));
        assert_eq!(
            index.entries[1].status,
            EntryStatus::Ok {
                num_states: 2,
                num_transitions: 1
            }
        );
        assert_eq!(corpus.ids(), vec!["good".to_string()]);
        assert_eq!(corpus.get("good").unwrap().id(), "good");
        assert_eq!(index.errors().count(), 1);
        assert_eq!(index.ok_entries().count(), 1);
    }

    #[test]
    fn rescan_is_identical_and_read_only() {
        let dir = tempfile::tempdir().unwrap();
        let text = "des (0,1,1)\n(0,a,0)";
        fs::write(dir.path().join("x.aut"), text).unwrap();
        let a = ingest_dir(dir.path()).unwrap();
        let b = ingest_dir(dir.path()).unwrap();
        assert_eq!(a, b);
        assert_eq!(fs::read_to_string(dir.path().join("x.aut")).unwrap(), text);
    }

    #[test]
    fn missing_dir() {
        let err = ingest_dir("/nonexistent/corpus/dir").unwrap_err();
        assert!(matches!(err, CorpusError::UnreadableDir { .. }));
    }
}
