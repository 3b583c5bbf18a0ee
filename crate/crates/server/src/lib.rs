//! HTTP JSON API over a [`ReviewService`]. Every mutation goes through
//! [`ReviewService::decide`], so an acknowledged decision is already in the
//! log file.

use std::collections::BTreeSet;
use std::net::SocketAddr;
use std::sync::{Arc, Mutex, MutexGuard};

use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use chrono::Utc;
use serde::{Deserialize, Serialize};
use tokio::net::TcpListener;

use neolex_core::candidates::{Candidate, NoiseFlag, RejectReason, Status};
use neolex_core::labels::Labels;
use neolex_core::lexicon::{AggregateReport, ExportFormat, ExportOrder};
use neolex_core::morphodict::Pos;
use neolex_core::review::{Action, ReviewDecision, ReviewService, SortKey};

pub const DEFAULT_LIMIT: usize = 50;
pub const MAX_LIMIT: usize = 1000;

pub type SharedService = Arc<Mutex<ReviewService>>;

#[derive(Debug, thiserror::Error)]
pub enum ServeError {
    #[error("cannot listen on {addr}: {source}")]
    Bind {
        addr: SocketAddr,
        #[source]
        source: std::io::Error,
    },
    #[error("server error: {0}")]
    Io(#[from] std::io::Error),
}

struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(serde_json::json!({ "error": self.1 }))).into_response()
    }
}

impl From<neolex_core::Error> for ApiError {
    fn from(e: neolex_core::Error) -> Self {
        let status = match e {
            neolex_core::Error::NotFound(_) => StatusCode::NOT_FOUND,
            neolex_core::Error::Validation(_) => StatusCode::UNPROCESSABLE_ENTITY,
            _ => StatusCode::INTERNAL_SERVER_ERROR,
        };
        if status == StatusCode::INTERNAL_SERVER_ERROR {
            log::error!("{e}");
        }
        ApiError(status, e.to_string())
    }
}

fn lock(service: &SharedService) -> MutexGuard<'_, ReviewService> {
    service.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
}

#[derive(Debug, Deserialize)]
pub struct ListQuery {
    pub status: Option<Status>,
    #[serde(default)]
    pub sort: SortKey,
    #[serde(default)]
    pub offset: usize,
    pub limit: Option<usize>,
}

/// Queue row: everything but contexts and the full suggestion.
#[derive(Debug, Serialize, Deserialize)]
pub struct CandidateSummary {
    pub lemma: String,
    pub pos: Pos,
    pub freq: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reject_reason: Option<RejectReason>,
    pub auto_flags: BTreeSet<NoiseFlag>,
    pub in_reference: bool,
    pub labels: Labels,
    pub needs_review: bool,
}

impl From<&Candidate> for CandidateSummary {
    fn from(c: &Candidate) -> Self {
        CandidateSummary {
            lemma: c.lemma.clone(),
            pos: c.pos,
            freq: c.freq,
            status: c.status,
            reject_reason: c.reject_reason,
            auto_flags: c.auto_flags.clone(),
            in_reference: c.in_reference,
            labels: c.labels.clone(),
            needs_review: c.suggested.as_ref().is_some_and(|s| s.needs_review),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CandidatePage {
    pub total: usize,
    pub offset: usize,
    pub limit: usize,
    pub items: Vec<CandidateSummary>,
}

/// Decision body; the lemma comes from the path and the timestamp from the
/// server clock.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecisionRequest {
    pub action: Action,
    #[serde(default)]
    pub reject_reason: Option<RejectReason>,
    #[serde(default)]
    pub labels: Option<Labels>,
    pub reviewer: String,
}

#[derive(Debug, Deserialize)]
pub struct ExportQuery {
    #[serde(default)]
    pub format: ExportFormat,
    #[serde(default)]
    pub order: ExportOrder,
}

async fn list_candidates(State(service): State<SharedService>, Query(q): Query<ListQuery>) -> Json<CandidatePage> {
    let limit = q.limit.unwrap_or(DEFAULT_LIMIT).min(MAX_LIMIT);
    let service = lock(&service);
    let (total, items) = service.state().query(q.status, q.sort, q.offset, limit);
    Json(CandidatePage {
        total,
        offset: q.offset,
        limit,
        items: items.into_iter().map(CandidateSummary::from).collect(),
    })
}

async fn get_candidate(State(service): State<SharedService>, Path(lemma): Path<String>) -> Result<Json<Candidate>, ApiError> {
    let service = lock(&service);
    service
        .state()
        .get(&lemma)
        .cloned()
        .map(Json)
        .ok_or_else(|| neolex_core::Error::NotFound(lemma).into())
}

async fn post_decision(
    State(service): State<SharedService>,
    Path(lemma): Path<String>,
    Json(body): Json<DecisionRequest>,
) -> Result<Json<Candidate>, ApiError> {
    let decision = ReviewDecision {
        lemma,
        action: body.action,
        reject_reason: body.reject_reason,
        labels: body.labels,
        decided_at: Utc::now(),
        reviewer: body.reviewer,
    };
    let mut service = lock(&service);
    Ok(Json(service.decide(decision)?.clone()))
}

async fn get_report(State(service): State<SharedService>) -> Json<AggregateReport> {
    let service = lock(&service);
    Json(AggregateReport::new(&service.state().lexicon(ExportOrder::TopicWord)))
}

async fn get_export(State(service): State<SharedService>, Query(q): Query<ExportQuery>) -> Response {
    let body = lock(&service).state().export(q.format, q.order);
    let content_type = match q.format {
        ExportFormat::Tsv => "text/tab-separated-values; charset=utf-8",
        ExportFormat::Json => "application/json",
    };
    ([(header::CONTENT_TYPE, content_type)], body).into_response()
}

pub fn router(service: SharedService) -> Router {
    Router::new()
        .route("/api/candidates", get(list_candidates))
        .route("/api/candidates/{lemma}", get(get_candidate))
        .route("/api/candidates/{lemma}/decision", post(post_decision))
        .route("/api/report", get(get_report))
        .route("/api/export", get(get_export))
        .with_state(service)
}

/// Bind before serving so a taken port is reported as a startup error.
pub async fn bind(addr: SocketAddr) -> Result<TcpListener, ServeError> {
    TcpListener::bind(addr).await.map_err(|source| ServeError::Bind { addr, source })
}

pub async fn serve(listener: TcpListener, service: ReviewService) -> Result<(), ServeError> {
    if let Ok(addr) = listener.local_addr() {
        log::info!("review service listening on http://{addr}");
    }
    axum::serve(listener, router(Arc::new(Mutex::new(service)))).await?;
    Ok(())
}
