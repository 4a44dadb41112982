//! Read-only JSON API over a loaded lattice, grouping, model and graph file.
//! The only state that changes is the occurrence store's access counter.
//!
//! Artifacts that fail to agree with the lattice are kept out of service:
//! their endpoints answer 409 instead of the server refusing to start.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use axum::extract::{Path as UrlPath, Query, State};
use axum::http::StatusCode;
use axum::response::{Html, IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use latclust_core::embed::{EmbeddingModel, OnDemandTargets};
use latclust_core::render::{edges_at_threshold, RenderMode};
use latclust_core::{GraphDatabase, Grouping, Lattice, PatternId};
use serde_json::{json, Value};
use tower_http::services::ServeDir;

use crate::cli::{load_graphs, load_lattice, load_model, CliError};
use crate::export::RenderDoc;
use crate::grouping_json::{self, GroupingDoc};
use crate::lattice_json::graph_edges;
use crate::model_json::ModelDoc;

/// An optional artifact and whether it fits the lattice.
#[derive(Debug)]
pub enum Artifact<T> {
    Missing,
    Incoherent(String),
    Ready(T),
}

impl<T> Artifact<T> {
    fn get(&self, what: &str) -> Result<&T, ApiError> {
        match self {
            Artifact::Ready(t) => Ok(t),
            Artifact::Missing => Err(ApiError(StatusCode::NOT_FOUND, format!("no {what} loaded"))),
            Artifact::Incoherent(why) => Err(ApiError(StatusCode::CONFLICT, format!("{what} does not fit the lattice: {why}"))),
        }
    }

    pub fn is_ready(&self) -> bool {
        matches!(self, Artifact::Ready(_))
    }
}

pub struct AppState {
    pub lattice: Lattice,
    pub grouping: Artifact<Grouping>,
    pub model: Artifact<EmbeddingModel>,
    pub graphs: Artifact<GraphDatabase>,
}

impl AppState {
    pub fn new(
        lattice: Lattice,
        grouping: Option<Grouping>,
        model: Option<EmbeddingModel>,
        graphs: Option<GraphDatabase>,
    ) -> Self {
        let grouping = match grouping {
            None => Artifact::Missing,
            Some(g) => match g.validate(&lattice) {
                Ok(()) => Artifact::Ready(g),
                Err(e) => Artifact::Incoherent(e.to_string()),
            },
        };
        let model = match (model, &grouping) {
            (None, _) => Artifact::Missing,
            (Some(m), Artifact::Ready(g)) if m.len() == g.len() => Artifact::Ready(m),
            (Some(m), Artifact::Ready(g)) => {
                Artifact::Incoherent(format!("{} points for {} groups", m.len(), g.len()))
            }
            (Some(_), _) => Artifact::Incoherent("no usable grouping to index its points".into()),
        };
        let graphs = match graphs {
            None => Artifact::Missing,
            Some(db) if db.len() as u64 == u64::from(lattice.universe()) || lattice.is_empty() => Artifact::Ready(db),
            Some(db) => Artifact::Incoherent(format!(
                "{} transactions but occurrences cover {}",
                db.len(),
                lattice.universe()
            )),
        };
        AppState { lattice, grouping, model, graphs }
    }

    /// Loads artifacts from disk; unreadable or malformed files are errors,
    /// incoherent ones are served as 409.
    pub fn load(
        lattice: &Path,
        grouping: Option<&Path>,
        model: Option<&Path>,
        graphs: Option<&Path>,
    ) -> Result<Self, CliError> {
        let lattice = load_lattice(lattice)?;
        let grouping = match grouping {
            Some(p) => Some(
                grouping_json::parse(&std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.into(), source })?)
                    .map_err(|source| CliError::Format { path: p.into(), source })?,
            ),
            None => None,
        };
        let model = model.map(load_model).transpose()?;
        let graphs = graphs.map(load_graphs).transpose()?;
        Ok(AppState::new(lattice, grouping, model, graphs))
    }
}

#[derive(Debug)]
pub struct ApiError(pub StatusCode, pub String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({ "error": self.1 }))).into_response()
    }
}

type Shared = Arc<AppState>;
type ApiResult = Result<Json<Value>, ApiError>;

fn bad_request(msg: impl Into<String>) -> ApiError {
    ApiError(StatusCode::BAD_REQUEST, msg.into())
}

fn pattern_index(s: &AppState, raw: &str) -> Result<usize, ApiError> {
    let id: u32 = raw.parse().map_err(|_| bad_request(format!("pattern id {raw:?} is not a number")))?;
    s.lattice
        .index_of(PatternId(id))
        .ok_or_else(|| ApiError(StatusCode::NOT_FOUND, format!("no pattern {id}")))
}

async fn summary(State(s): State<Shared>) -> ApiResult {
    let group_count = match &s.grouping {
        Artifact::Ready(g) => Some(g.len()),
        _ => None,
    };
    Ok(Json(json!({
        "pattern_count": s.lattice.len(),
        "minsupp": s.lattice.minsupp(),
        "group_count": group_count,
        "transactions": s.lattice.universe(),
    })))
}

async fn pattern(State(s): State<Shared>, UrlPath(raw): UrlPath<String>) -> ApiResult {
    let i = pattern_index(&s, &raw)?;
    let p = s.lattice.pattern(i);
    let ids = |idx: &[usize]| idx.iter().map(|&j| s.lattice.pattern(j).id.0).collect::<Vec<_>>();
    let group = match &s.grouping {
        Artifact::Ready(g) => g.group_of(p.id).map(|g| g.id.0),
        _ => None,
    };
    Ok(Json(json!({
        "id": p.id.0,
        "vertices": p.graph.labels(),
        "edges": graph_edges(&p.graph),
        "support": p.support,
        "parents": ids(s.lattice.parents(i)),
        "children": ids(s.lattice.children(i)),
        "group": group,
    })))
}

async fn occurrences(State(s): State<Shared>, UrlPath(raw): UrlPath<String>) -> ApiResult {
    let i = pattern_index(&s, &raw)?;
    let members = s.lattice.store().members(i).map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?;
    Ok(Json(json!(members)))
}

async fn groups(State(s): State<Shared>) -> ApiResult {
    let g = s.grouping.get("grouping")?;
    Ok(Json(serde_json::to_value(GroupingDoc::from_grouping(g)).expect("grouping serializes")))
}

async fn model(State(s): State<Shared>) -> ApiResult {
    let m = s.model.get("model")?;
    Ok(Json(serde_json::to_value(ModelDoc::from_model(m)).expect("model serializes")))
}

async fn model_edges(State(s): State<Shared>, Query(q): Query<BTreeMap<String, String>>) -> ApiResult {
    let mode: RenderMode = q
        .get("mode")
        .ok_or_else(|| bad_request("missing mode (close or far)"))?
        .parse()
        .map_err(|e: latclust_core::render::RenderError| bad_request(e.to_string()))?;
    let raw = q.get("threshold").ok_or_else(|| bad_request("missing threshold"))?;
    let threshold: f64 = raw.parse().map_err(|_| bad_request(format!("threshold {raw:?} is not a number")))?;
    let m = s.model.get("model")?;
    let g = s.grouping.get("grouping")?;
    let targets = OnDemandTargets { lattice: &s.lattice, grouping: g };
    let r = edges_at_threshold(m, &targets, mode, threshold).map_err(|e| bad_request(e.to_string()))?;
    Ok(Json(serde_json::to_value(RenderDoc::from_render(&r)).expect("render serializes")))
}

async fn transaction(State(s): State<Shared>, UrlPath(raw): UrlPath<String>) -> ApiResult {
    let index: usize = raw.parse().map_err(|_| bad_request(format!("transaction index {raw:?} is not a number")))?;
    let db = s.graphs.get("graph file")?;
    let g = db
        .transactions
        .get(index)
        .ok_or_else(|| ApiError(StatusCode::NOT_FOUND, format!("no transaction {index}")))?;
    let names = |table: &BTreeMap<u32, String>, labels: &mut dyn Iterator<Item = u32>| {
        labels.filter_map(|l| table.get(&l).map(|n| (l.to_string(), n.clone()))).collect::<BTreeMap<_, _>>()
    };
    Ok(Json(json!({
        "index": index,
        "vertices": g.labels(),
        "edges": graph_edges(g),
        "vertex_names": names(&db.vertex_labels, &mut g.labels().iter().copied()),
        "edge_names": names(&db.edge_labels, &mut g.edges().iter().map(|e| e.label)),
    })))
}

async fn access(State(s): State<Shared>) -> ApiResult {
    let c = s.lattice.store().counter().snapshot();
    Ok(Json(json!({ "decompressions": c.decompressions, "intersections": c.intersections })))
}

async fn not_found() -> ApiError {
    ApiError(StatusCode::NOT_FOUND, "no such endpoint".into())
}

const INDEX: &str = "<!doctype html>\n<html><head><meta charset=\"utf-8\"><title>latclust</title></head>\n<body>\n<h1>latclust</h1>\n<p>JSON API under <code>/api</code>: \n<a href=\"/api/lattice/summary\">summary</a>, \n<a href=\"/api/groups\">groups</a>, \n<a href=\"/api/model\">model</a>, \n<a href=\"/api/stats/access\">access counters</a>.</p>\n<p>Start the server with <code>--assets</code> to serve the browsing UI here.</p>\n</body></html>\n";

pub fn router(state: AppState, assets: Option<&Path>) -> Router {
    let api = Router::new()
        .route("/api/lattice/summary", get(summary))
        .route("/api/patterns/{id}", get(pattern))
        .route("/api/patterns/{id}/occurrences", get(occurrences))
        .route("/api/groups", get(groups))
        .route("/api/model", get(model))
        .route("/api/model/edges", get(model_edges))
        .route("/api/transactions/{index}", get(transaction))
        .route("/api/stats/access", get(access))
        .route("/api/{*rest}", get(not_found))
        .with_state(Arc::new(state));
    match assets {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.route("/", get(|| async { Html(INDEX) })),
    }
}
