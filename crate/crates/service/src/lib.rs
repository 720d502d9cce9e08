//! HTTP backend for pairwise annotation of LTS designs.
//!
//! Every annotator walks the same seeded sequence of design pairs. The
//! sequence is stored next to the corpus so restarts hand out the same
//! pairs, and session cursors are rebuilt from the annotation log.
//!
//! | method | path | response |
//! |---|---|---|
//! | GET | `/designs` | `[{id, N, E}]` |
//! | GET | `/designs/{id}/graph` | graph JSON |
//! | GET | `/designs/{id}/dot` | Graphviz text |
//! | GET | `/pairs/next?annotator=X` | next pair or `{"status": "done"}` |
//! | POST | `/annotations` | record accepted, next pair |
//! | GET | `/results/ranking` | Bradley-Terry fit of the log |
//! | GET | `/results/agreement` | `{"percent": ...}` |

mod error;
mod state;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::{Path, Query, State};
use axum::http::header;
use axum::response::IntoResponse;
use axum::routing::{get, post};
use axum::{Json, Router};
use ltsrank_core::lts::{to_dot, GraphJson};
use ltsrank_core::stats::{agreement, aggregate, fit_bt, BtOptions, BtResult, ComparisonRecord, Polarity};
use serde::{Deserialize, Serialize};

pub use error::{ApiError, SetupError};
pub use state::{AppState, NextPair, PairPlan, DEFAULT_PAIRS, MAX_TIME_MS};

#[derive(Debug, Clone, PartialEq)]
pub struct ServiceConfig {
    pub corpus_dir: PathBuf,
    /// Where the pair plan and annotation log live; defaults to
    /// `<corpus_dir>/.ltsrank`.
    pub state_dir: Option<PathBuf>,
    /// Pairs per annotator; `None` means [`DEFAULT_PAIRS`] or every pair
    /// when the corpus is smaller.
    pub pairs: Option<usize>,
    pub seed: u64,
    pub polarity: Polarity,
    pub alpha: f64,
    /// Give each annotator their own order of the shared pairs.
    pub shuffle_per_annotator: bool,
}

impl ServiceConfig {
    pub fn new(corpus_dir: impl Into<PathBuf>) -> Self {
        Self {
            corpus_dir: corpus_dir.into(),
            state_dir: None,
            pairs: None,
            seed: 0,
            polarity: Polarity::default(),
            alpha: BtOptions::default().alpha,
            shuffle_per_annotator: false,
        }
    }

    pub fn state_dir(&self) -> PathBuf {
        self.state_dir
            .clone()
            .unwrap_or_else(|| self.corpus_dir.join(".ltsrank"))
    }
}

type Shared = Arc<AppState>;

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/designs", get(list_designs))
        .route("/designs/{id}/graph", get(design_graph))
        .route("/designs/{id}/dot", get(design_dot))
        .route("/pairs/next", get(next_pair))
        .route("/annotations", post(post_annotation))
        .route("/results/ranking", get(ranking))
        .route("/results/agreement", get(agreement_score))
        .with_state(state)
}

/// Binds `addr` and serves until Ctrl-C.
pub async fn serve(config: ServiceConfig, addr: SocketAddr) -> Result<(), SetupError> {
    let state = Arc::new(AppState::build(config)?);
    let listener = tokio::net::TcpListener::bind(addr).await?;
    log::info!(
        "serving {} designs, {} pairs on http://{}",
        state.corpus.len(),
        state.plan.pairs.len(),
        listener.local_addr()?
    );
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DesignSummary {
    pub id: String,
    #[serde(rename = "N")]
    pub num_states: usize,
    #[serde(rename = "E")]
    pub num_transitions: usize,
}

async fn list_designs(State(state): State<Shared>) -> Json<Vec<DesignSummary>> {
    Json(
        state
            .corpus
            .designs()
            .map(|d| DesignSummary {
                id: d.id().to_string(),
                num_states: d.num_states(),
                num_transitions: d.num_transitions(),
            })
            .collect(),
    )
}

async fn design_graph(
    State(state): State<Shared>,
    Path(id): Path<String>,
) -> Result<Json<GraphJson>, ApiError> {
    let d = state.corpus.get(&id).ok_or(ApiError::UnknownDesign(id))?;
    Ok(Json(GraphJson::from(d)))
}

async fn design_dot(
    State(state): State<Shared>,
    Path(id): Path<String>,
) -> Result<impl IntoResponse, ApiError> {
    let d = state.corpus.get(&id).ok_or(ApiError::UnknownDesign(id))?;
    Ok(([(header::CONTENT_TYPE, "text/vnd.graphviz; charset=utf-8")], to_dot(d)))
}

#[derive(Debug, Deserialize)]
struct AnnotatorQuery {
    annotator: Option<String>,
}

async fn next_pair(
    State(state): State<Shared>,
    Query(q): Query<AnnotatorQuery>,
) -> Result<Json<NextPair>, ApiError> {
    let annotator = q
        .annotator
        .filter(|a| !a.trim().is_empty())
        .ok_or_else(|| ApiError::BadRequest("missing `annotator` query parameter".into()))?;
    Ok(Json(state.next_pair(&annotator)))
}

async fn post_annotation(
    State(state): State<Shared>,
    body: Result<Json<ComparisonRecord>, axum::extract::rejection::JsonRejection>,
) -> Result<Json<NextPair>, ApiError> {
    let Json(record) = body.map_err(|e| ApiError::BadRequest(e.body_text()))?;
    let next = tokio::task::block_in_place(|| state.submit(&record))?;
    Ok(Json(next))
}

fn load_records(state: &AppState) -> Result<Vec<ComparisonRecord>, ApiError> {
    let records = tokio::task::block_in_place(|| state.log.load())?;
    if records.is_empty() {
        return Err(ApiError::Unavailable("no annotations yet".into()));
    }
    Ok(records)
}

async fn ranking(State(state): State<Shared>) -> Result<Json<BtResult>, ApiError> {
    let records = load_records(&state)?;
    let mut items: Vec<String> = records
        .iter()
        .flat_map(|r| [r.design_a.clone(), r.design_b.clone()])
        .collect();
    items.sort();
    items.dedup();
    let unavailable = |e: ltsrank_core::stats::StatsError| ApiError::Unavailable(e.to_string());
    let matrix = aggregate(&items, &records, state.config.polarity).map_err(unavailable)?;
    let opts = BtOptions {
        alpha: state.config.alpha,
        ..BtOptions::default()
    };
    Ok(Json(fit_bt(&matrix, &opts).map_err(unavailable)?))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AgreementResponse {
    pub percent: f64,
    pub annotators: usize,
    pub records: usize,
}

async fn agreement_score(State(state): State<Shared>) -> Result<Json<AgreementResponse>, ApiError> {
    let records = load_records(&state)?;
    let percent = agreement(&records).map_err(|e| ApiError::Unavailable(e.to_string()))?;
    let mut annotators: Vec<&str> = records.iter().map(|r| r.annotator_id.as_str()).collect();
    annotators.sort_unstable();
    annotators.dedup();
    Ok(Json(AgreementResponse {
        percent,
        annotators: annotators.len(),
        records: records.len(),
    }))
}
