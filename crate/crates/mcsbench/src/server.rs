//! Read-only JSON API over a loaded corpus.

use std::collections::{BTreeSet, HashMap};
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use axum::body::Bytes;
use axum::extract::rejection::BytesRejection;
use axum::extract::{DefaultBodyLimit, Path, Query, State};
use axum::http::{HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use mcsbench_core::analytics::construct_matrix;
use mcsbench_core::jsonld::to_jsonld;
use mcsbench_core::model::{CanonicalSample, ConstructKind, Iri, SplitKind};
use mcsbench_core::query::{evaluate_with, parse_query_with, substitute_task_iri, QueryError};
use mcsbench_core::store::TripleStore;
use serde_json::{json, Value};
use tower_http::cors::{AllowOrigin, CorsLayer};
use tower_http::services::ServeDir;

use crate::corpus::LoadedCorpus;
use crate::output::{compute_stat, StatKind};

pub const DEFAULT_BIND: &str = "127.0.0.1:8750";

#[derive(Debug, Clone)]
pub struct ServerConfig {
    pub query_timeout: Duration,
    pub max_body: usize,
    pub page_cap: usize,
    pub static_dir: Option<PathBuf>,
    /// Allowed origins; empty means any origin.
    pub cors_origins: Vec<String>,
}

impl Default for ServerConfig {
    fn default() -> Self {
        ServerConfig {
            query_timeout: Duration::from_secs(10),
            max_body: 64 * 1024,
            page_cap: 200,
            static_dir: None,
            cors_origins: Vec::new(),
        }
    }
}

/// Corpus and store, immutable once built.
pub struct AppState {
    pub loaded: LoadedCorpus,
    pub store: TripleStore,
    pub config: ServerConfig,
}

type Shared = Arc<AppState>;

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    code: &'static str,
    message: String,
    detail: Value,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        ApiError { status, code, message: message.into(), detail: Value::Null }
    }

    fn with_detail(mut self, detail: Value) -> Self {
        self.detail = detail;
        self
    }

    fn bad_param(name: &str, message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "BAD_PARAMETER", message).with_detail(json!({ "parameter": name }))
    }

    fn not_found(message: impl Into<String>) -> Self {
        ApiError::new(StatusCode::NOT_FOUND, "NOT_FOUND", message)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({ "code": self.code, "message": self.message, "detail": self.detail });
        (self.status, Json(body)).into_response()
    }
}

type ApiResult = Result<Json<Value>, ApiError>;

pub fn build_state(loaded: LoadedCorpus, config: ServerConfig) -> Result<AppState> {
    let (store, _) = loaded.store().context("loading the triple store")?;
    Ok(AppState { loaded, store, config })
}

pub fn router(state: AppState) -> Router {
    let config = state.config.clone();
    let state: Shared = Arc::new(state);
    let api = Router::new()
        .route("/benchmarks", get(benchmarks))
        .route("/samples", get(samples))
        .route("/samples/{id}", get(sample))
        .route("/query", post(query))
        .route("/stats/{name}", get(stats))
        .fallback(|| async { ApiError::not_found("no such endpoint") })
        .layer(DefaultBodyLimit::max(config.max_body))
        .with_state(state);

    let cors = if config.cors_origins.is_empty() {
        CorsLayer::permissive()
    } else {
        let origins: Vec<HeaderValue> = config.cors_origins.iter().filter_map(|o| o.parse().ok()).collect();
        CorsLayer::new()
            .allow_origin(AllowOrigin::list(origins))
            .allow_methods(tower_http::cors::Any)
            .allow_headers(tower_http::cors::Any)
    };

    let app = Router::new().nest("/api", api);
    let app = match &config.static_dir {
        Some(dir) => app.fallback_service(ServeDir::new(dir)),
        None => app.fallback(|| async { ApiError::not_found("no such resource") }),
    };
    app.layer(cors)
}

pub async fn serve(state: AppState, bind: SocketAddr) -> Result<()> {
    let listener = tokio::net::TcpListener::bind(bind).await.with_context(|| format!("binding {bind}"))?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}

fn local_id<'a>(state: &AppState, iri: &'a Iri) -> &'a str {
    iri.as_str().strip_prefix(state.loaded.options.base.as_str()).filter(|s| !s.is_empty()).unwrap_or(iri.as_str())
}

async fn benchmarks(State(state): State<Shared>) -> ApiResult {
    let corpus = &state.loaded.corpus;
    let matrix = construct_matrix(corpus);
    let mut counts: HashMap<(&str, SplitKind), u64> = HashMap::new();
    for s in corpus.samples() {
        *counts.entry((s.benchmark.name(), s.split)).or_insert(0) += 1;
    }
    let items: Vec<Value> = corpus
        .benchmarks()
        .map(|b| {
            let name = b.id.name();
            let splits: serde_json::Map<String, Value> = SplitKind::ALL
                .iter()
                .map(|s| (s.as_str().to_string(), json!(counts.get(&(name, *s)).copied().unwrap_or(0))))
                .collect();
            let row = matrix.get(name);
            json!({
                "id": name,
                "name": state.loaded.title(name),
                "iri": b.id.task_iri().as_str(),
                "questionTypes": b.question_types,
                "splits": splits,
                "constructs": row.map(|r| &r.constructs),
                "hasCategories": row.is_some_and(|r| r.has_categories),
            })
        })
        .collect();
    Ok(Json(Value::Array(items)))
}

#[derive(Debug, Default)]
struct SampleFilter {
    benchmark: Option<String>,
    split: Option<SplitKind>,
    construct: Option<ConstructKind>,
    category: Option<String>,
    q: Option<String>,
    offset: usize,
    limit: usize,
}

impl SampleFilter {
    fn parse(params: HashMap<String, String>, state: &AppState) -> Result<Self, ApiError> {
        let corpus = &state.loaded.corpus;
        let mut f = SampleFilter { limit: 25.min(state.config.page_cap), ..Default::default() };
        let mut names: Vec<_> = params.keys().cloned().collect();
        names.sort();
        for name in names {
            let value = &params[&name];
            match name.as_str() {
                "benchmark" => {
                    if corpus.benchmark(value).is_none() {
                        return Err(ApiError::bad_param("benchmark", format!("unknown benchmark {value:?}")));
                    }
                    f.benchmark = Some(value.clone());
                }
                "split" => {
                    f.split = Some(
                        SplitKind::parse(value)
                            .ok_or_else(|| ApiError::bad_param("split", format!("unknown split {value:?}")))?,
                    );
                }
                "construct" => {
                    f.construct = Some(
                        ConstructKind::parse(value)
                            .ok_or_else(|| ApiError::bad_param("construct", format!("unknown construct {value:?}")))?,
                    );
                }
                "category" => {
                    let known = corpus.samples().iter().any(|s| s.categories.iter().any(|c| &c.label == value));
                    if !known {
                        return Err(ApiError::bad_param("category", format!("unknown category {value:?}")));
                    }
                    f.category = Some(value.clone());
                }
                "q" => f.q = Some(value.to_lowercase()),
                "offset" => {
                    f.offset = value
                        .parse()
                        .map_err(|_| ApiError::bad_param("offset", "offset must be a non-negative integer"))?;
                }
                "limit" => {
                    let cap = state.config.page_cap;
                    f.limit = value.parse().ok().filter(|n| (1..=cap).contains(n)).ok_or_else(|| {
                        ApiError::bad_param("limit", format!("limit must be an integer in 1..={cap}"))
                    })?;
                }
                other => return Err(ApiError::bad_param(other, format!("unknown parameter {other:?}"))),
            }
        }
        Ok(f)
    }

    fn matches(&self, s: &CanonicalSample) -> bool {
        self.benchmark.as_deref().is_none_or(|b| s.benchmark.name() == b)
            && self.split.is_none_or(|sp| s.split == sp)
            && self.construct.is_none_or(|c| s.constructs().any(|k| k == c))
            && self.category.as_deref().is_none_or(|c| s.categories.iter().any(|k| k.label == c))
            && self.q.as_deref().is_none_or(|q| {
                s.inputs
                    .iter()
                    .map(|i| &i.text)
                    .chain(s.choices.iter().map(|c| &c.text))
                    .any(|t| t.to_lowercase().contains(q))
            })
    }
}

fn summary(state: &AppState, s: &CanonicalSample) -> Value {
    json!({
        "id": local_id(state, &s.id),
        "benchmark": s.benchmark.name(),
        "split": s.split,
        "firstInput": s.inputs.first().map(|i| i.text.as_str()),
        "choiceCount": s.choices.len(),
        "categories": s.categories.iter().map(|c| c.label.as_str()).collect::<BTreeSet<_>>(),
    })
}

async fn samples(
    State(state): State<Shared>,
    params: Result<Query<HashMap<String, String>>, axum::extract::rejection::QueryRejection>,
) -> ApiResult {
    let Query(params) = params.map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, "BAD_PARAMETER", e.body_text()))?;
    let filter = SampleFilter::parse(params, &state)?;
    let mut matching: Vec<&CanonicalSample> =
        state.loaded.corpus.samples().iter().filter(|s| filter.matches(s)).collect();
    matching.sort_by(|a, b| a.id.cmp(&b.id));
    let total = matching.len();
    if filter.offset > total {
        return Err(ApiError::bad_param("offset", format!("offset {} exceeds total {total}", filter.offset)));
    }
    let items: Vec<Value> =
        matching.iter().skip(filter.offset).take(filter.limit).map(|s| summary(&state, s)).collect();
    Ok(Json(json!({ "items": items, "offset": filter.offset, "limit": filter.limit, "total": total })))
}

async fn sample(State(state): State<Shared>, Path(id): Path<String>) -> ApiResult {
    let base = &state.loaded.options.base;
    let iri = Iri::parse(if id.contains(':') { id.clone() } else { format!("{base}{id}") })
        .map_err(|_| ApiError::not_found(format!("no sample {id:?}")))?;
    let s = state.loaded.corpus.sample(&iri).ok_or_else(|| ApiError::not_found(format!("no sample {id:?}")))?;
    let doc = to_jsonld(s, &state.loaded.options)
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "SERIALIZATION", e.to_string()))?;
    Ok(Json(doc.to_value()))
}

fn query_error(e: QueryError) -> ApiError {
    let detail = match e.position() {
        Some((line, column)) => json!({ "line": line, "column": column }),
        None => Value::Null,
    };
    let (status, detail) = match &e {
        QueryError::Aborted => (StatusCode::REQUEST_TIMEOUT, detail),
        QueryError::Unsupported { feature, line, column } => {
            (StatusCode::UNPROCESSABLE_ENTITY, json!({ "feature": feature, "line": line, "column": column }))
        }
        _ => (StatusCode::UNPROCESSABLE_ENTITY, detail),
    };
    ApiError::new(status, e.code(), e.to_string()).with_detail(detail)
}

async fn query(
    State(state): State<Shared>,
    Query(params): Query<HashMap<String, String>>,
    body: Result<Bytes, BytesRejection>,
) -> ApiResult {
    let body = body.map_err(|e| {
        let status = e.status();
        let code = if status == StatusCode::PAYLOAD_TOO_LARGE { "PAYLOAD_TOO_LARGE" } else { "BAD_BODY" };
        ApiError::new(status, code, e.body_text()).with_detail(json!({ "limit": state.config.max_body }))
    })?;
    if let Some(other) = params.keys().find(|k| k.as_str() != "task") {
        return Err(ApiError::bad_param(other, format!("unknown parameter {other:?}")));
    }
    let text = std::str::from_utf8(&body)
        .map_err(|_| ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "SYNTAX", "query is not valid UTF-8"))?;
    if text.trim().is_empty() {
        return Err(ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "EMPTY_QUERY", "query body is empty"));
    }
    let text = match params.get("task") {
        Some(name) => {
            let b = state
                .loaded
                .corpus
                .benchmark(name)
                .ok_or_else(|| ApiError::bad_param("task", format!("unknown benchmark {name:?}")))?;
            substitute_task_iri(text, &b.id.task_iri())
        }
        None => text.to_string(),
    };
    let ast = parse_query_with(&text, &state.loaded.options.vocab).map_err(query_error)?;
    let deadline = Instant::now() + state.config.query_timeout;
    let worker = Arc::clone(&state);
    let result =
        tokio::task::spawn_blocking(move || evaluate_with(&ast, &worker.store, &|| Instant::now() >= deadline))
            .await
            .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "INTERNAL", e.to_string()))?;
    let table = result.map_err(query_error)?;
    Ok(Json(table.to_results_json()))
}

async fn stats(State(state): State<Shared>, Path(name): Path<String>) -> ApiResult {
    let kind = StatKind::parse(&name).ok_or_else(|| {
        ApiError::not_found(format!("no statistic {name:?}"))
            .with_detail(json!({ "available": StatKind::ALL.map(StatKind::name) }))
    })?;
    Ok(Json(compute_stat(kind, &state.loaded).to_json()))
}
