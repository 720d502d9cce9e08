use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use ltsrank_core::corpus::{AnnotationLog, Corpus};
use ltsrank_core::stats::{sample_pairs, ComparisonRecord};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{ApiError, ServiceConfig, SetupError};

/// Pair count used when the configuration leaves it open.
pub const DEFAULT_PAIRS: usize = 324;

/// Upper bound on any reported time: one day.
pub const MAX_TIME_MS: i64 = 24 * 60 * 60 * 1000;

const PAIRS_FILE: &str = "pairs.json";
const LOG_FILE: &str = "annotations.jsonl";

/// The persisted shared pair sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairPlan {
    pub seed: u64,
    pub items: Vec<String>,
    pub pairs: Vec<(String, String)>,
}

impl PairPlan {
    fn sample(items: Vec<String>, n: Option<usize>, seed: u64) -> Result<Self, SetupError> {
        let k = items.len();
        let all = k * k.saturating_sub(1) / 2;
        let n = n.unwrap_or(DEFAULT_PAIRS.min(all));
        let sample = sample_pairs(k, n, seed)?;
        if !sample.connected && n > 0 {
            log::warn!("{n} pairs do not connect all {k} designs; rankings will be smoothed");
        }
        let pairs = sample
            .pairs
            .iter()
            .map(|&(a, b)| (items[a].clone(), items[b].clone()))
            .collect();
        Ok(Self { seed, items, pairs })
    }

    /// Reuses the plan stored in `dir` when it was drawn over the same
    /// designs, otherwise draws a fresh one and stores it.
    fn load_or_create(
        dir: &Path,
        items: Vec<String>,
        n: Option<usize>,
        seed: u64,
    ) -> Result<Self, SetupError> {
        let path = dir.join(PAIRS_FILE);
        let state_err = |reason: String| SetupError::StateFile {
            path: path.display().to_string(),
            reason,
        };
        if path.exists() {
            let text = fs::read_to_string(&path)?;
            let plan: PairPlan = serde_json::from_str(&text).map_err(|e| state_err(e.to_string()))?;
            if plan.items == items {
                if plan.seed != seed || n.is_some_and(|n| n != plan.pairs.len()) {
                    log::warn!(
                        "keeping stored pair plan (seed {}, {} pairs); delete {} to draw a new one",
                        plan.seed,
                        plan.pairs.len(),
                        path.display()
                    );
                }
                return Ok(plan);
            }
            log::warn!("corpus changed since {} was written; drawing new pairs", path.display());
        }
        let plan = Self::sample(items, n, seed)?;
        fs::create_dir_all(dir)?;
        let text = serde_json::to_string_pretty(&plan).map_err(|e| state_err(e.to_string()))?;
        fs::write(&path, text)?;
        Ok(plan)
    }
}

/// Shared state behind every handler.
pub struct AppState {
    pub corpus: Corpus,
    pub plan: PairPlan,
    pub log: AnnotationLog,
    pub config: ServiceConfig,
    /// Next unanswered position per annotator.
    sessions: Mutex<HashMap<String, usize>>,
}

/// What an annotator should look at next.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NextPair {
    Pair {
        pair_id: usize,
        design_a: String,
        design_b: String,
        /// Zero-based position in this annotator's sequence.
        position: usize,
        total: usize,
    },
    Done {
        status: String,
        answered: usize,
        total: usize,
    },
}

impl AppState {
    pub fn build(config: ServiceConfig) -> Result<Self, SetupError> {
        let corpus = Corpus::load(&config.corpus_dir)?;
        for (entry, message) in corpus.index.errors() {
            log::warn!("skipping {}: {message}", entry.path.display());
        }
        let state_dir = config.state_dir();
        let plan = PairPlan::load_or_create(&state_dir, corpus.ids(), config.pairs, config.seed)?;
        let log = AnnotationLog::for_corpus(state_dir.join(LOG_FILE), corpus.ids());
        let state = Self {
            corpus,
            plan,
            log,
            config,
            sessions: Mutex::new(HashMap::new()),
        };
        state.replay()?;
        Ok(state)
    }

    pub fn log_path(&self) -> PathBuf {
        self.log.path().to_path_buf()
    }

    /// Rebuilds every session cursor from the log.
    fn replay(&self) -> Result<(), SetupError> {
        let records = self.log.load()?;
        let mut sessions = self.sessions.lock().unwrap_or_else(|e| e.into_inner());
        for r in &records {
            let cursor = sessions.entry(r.annotator_id.clone()).or_insert(0);
            if self.pair_at(&r.annotator_id, *cursor) == Some(r.pair_id) {
                *cursor += 1;
            } else {
                log::warn!(
                    "log record for pair {} by `{}` is out of sequence; ignored for session state",
                    r.pair_id,
                    r.annotator_id
                );
            }
        }
        log::info!("replayed {} annotations for {} annotators", records.len(), sessions.len());
        Ok(())
    }

    /// The pair id at `position` in the annotator's sequence.
    fn pair_at(&self, annotator: &str, position: usize) -> Option<usize> {
        let n = self.plan.pairs.len();
        if position >= n {
            return None;
        }
        if !self.config.shuffle_per_annotator {
            return Some(position);
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(annotator_seed(self.plan.seed, annotator)));
        Some(order[position])
    }

    pub fn next_pair(&self, annotator: &str) -> NextPair {
        let position = {
            let sessions = self.sessions.lock().unwrap_or_else(|e| e.into_inner());
            sessions.get(annotator).copied().unwrap_or(0)
        };
        self.describe(annotator, position)
    }

    fn describe(&self, annotator: &str, position: usize) -> NextPair {
        let total = self.plan.pairs.len();
        match self.pair_at(annotator, position) {
            Some(pair_id) => {
                let (a, b) = &self.plan.pairs[pair_id];
                NextPair::Pair {
                    pair_id,
                    design_a: a.clone(),
                    design_b: b.clone(),
                    position,
                    total,
                }
            }
            None => NextPair::Done {
                status: "done".into(),
                answered: position.min(total),
                total,
            },
        }
    }

    /// Checks `record` against the annotator's current pair, persists it and
    /// advances the cursor.
    pub fn submit(&self, record: &ComparisonRecord) -> Result<NextPair, ApiError> {
        if record.annotator_id.trim().is_empty() {
            return Err(ApiError::BadRequest("annotator_id must not be empty".into()));
        }
        record
            .validate()
            .map_err(|e| ApiError::BadRequest(e.to_string()))?;
        for (name, t) in [
            ("time_a_ms", record.time_a_ms),
            ("time_b_ms", record.time_b_ms),
            ("total_ms", record.total_ms),
        ] {
            if t > MAX_TIME_MS {
                return Err(ApiError::BadRequest(format!("{name} exceeds 24 hours ({t})")));
            }
        }
        for id in [&record.design_a, &record.design_b] {
            if !self.corpus.contains(id) {
                return Err(ApiError::BadRequest(format!("unknown design `{id}`")));
            }
        }

        let mut sessions = self.sessions.lock().unwrap_or_else(|e| e.into_inner());
        let position = sessions.get(&record.annotator_id).copied().unwrap_or(0);
        let expected = self.pair_at(&record.annotator_id, position).ok_or_else(|| {
            ApiError::Conflict(format!("`{}` has answered every pair", record.annotator_id))
        })?;
        let (a, b) = &self.plan.pairs[expected];
        if record.pair_id != expected || &record.design_a != a || &record.design_b != b {
            return Err(ApiError::Conflict(format!(
                "current pair for `{}` is #{expected} ({a}, {b}), got #{} ({}, {})",
                record.annotator_id, record.pair_id, record.design_a, record.design_b
            )));
        }
        self.log.append(record)?;
        sessions.insert(record.annotator_id.clone(), position + 1);
        drop(sessions);
        Ok(self.describe(&record.annotator_id, position + 1))
    }
}

/// FNV-1a over the annotator id, mixed with the plan seed.
fn annotator_seed(seed: u64, annotator: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in annotator.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed
}
