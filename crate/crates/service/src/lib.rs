//! Read-mostly HTTP API over wear datasets and stateless what-if impact
//! evaluation.
//!
//! | Method | Path | |
//! |---|---|---|
//! | GET | `/api/datasets` | dataset descriptors |
//! | GET | `/api/datasets/{id}` | descriptor, class map and records |
//! | GET | `/api/datasets/{id}/profile` | process wear profile and per-image summaries |
//! | GET | `/api/datasets/{id}/images/{image_id}` | gt and pred masks, summary, colours |
//! | POST | `/api/lca/whatif` | impacts of one scenario against its baseline |
//! | GET | `/api/lca/scenarios` | registered case-study scenarios |
//! | POST | `/api/workspace/reload` | rescan the workspace directory |

mod whatif;
pub mod workspace;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, RwLock};

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Serialize;
use serde_json::{json, Value};
use tower_http::services::ServeDir;
use wearlca_core::analytics::summarize;
use wearlca_core::lca::CharacterizationTable;
use wearlca_core::wear::{ClassInfo, ManifestRecord, Role};
use wearlca_core::SegmentationMask;

pub use whatif::{evaluate_whatif, WhatIfError, WhatIfResponse};
use workspace::{AnalysisCache, Dataset, DatasetDescriptor, WorkspaceIndex};

pub struct ServiceConfig {
    /// Directory of datasets; `None` serves an empty workspace.
    pub workspace: Option<PathBuf>,
    /// Built UI bundle served at `/`.
    pub ui_dir: Option<PathBuf>,
    pub table: CharacterizationTable,
}

pub struct AppState {
    root: Option<PathBuf>,
    index: RwLock<Arc<WorkspaceIndex>>,
    cache: AnalysisCache,
    table: Arc<CharacterizationTable>,
}

impl AppState {
    pub fn new(workspace: Option<PathBuf>, table: CharacterizationTable) -> std::io::Result<Self> {
        let index = match &workspace {
            Some(root) => WorkspaceIndex::load(root)?,
            None => WorkspaceIndex::empty(),
        };
        Ok(Self {
            root: workspace,
            index: RwLock::new(Arc::new(index)),
            cache: AnalysisCache::default(),
            table: Arc::new(table),
        })
    }

    fn snapshot(&self) -> Arc<WorkspaceIndex> {
        self.index.read().expect("index lock").clone()
    }

    pub fn table(&self) -> &CharacterizationTable {
        &self.table
    }

    /// Rescans the workspace and swaps the index once the scan succeeded.
    pub fn reload(&self) -> std::io::Result<usize> {
        let fresh = match &self.root {
            Some(root) => WorkspaceIndex::load(root)?,
            None => WorkspaceIndex::empty(),
        };
        let live: Vec<String> = fresh
            .datasets
            .values()
            .filter_map(|d| d.descriptor.content_hash.clone())
            .collect();
        let n = fresh.datasets.len();
        *self.index.write().expect("index lock") = Arc::new(fresh);
        self.cache.retain(&live);
        Ok(n)
    }
}

pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    pub fn new(status: StatusCode, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }

    fn not_found(what: impl std::fmt::Display) -> Self {
        Self::new(StatusCode::NOT_FOUND, format!("{what} not found"))
    }

    fn internal(e: impl std::fmt::Display) -> Self {
        Self::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.message }))).into_response()
    }
}

type Shared = Arc<AppState>;

pub fn router(state: Shared, ui_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/datasets", get(list_datasets))
        .route("/api/datasets/{id}", get(get_dataset))
        .route("/api/datasets/{id}/profile", get(get_profile))
        .route("/api/datasets/{id}/images/{image_id}", get(get_image))
        .route("/api/lca/whatif", post(whatif::post_whatif))
        .route("/api/lca/scenarios", get(whatif::list_scenarios))
        .route("/api/workspace/reload", post(reload))
        .with_state(state);
    match ui_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

pub fn app(config: ServiceConfig) -> std::io::Result<Router> {
    let state = Arc::new(AppState::new(config.workspace, config.table)?);
    Ok(router(state, config.ui_dir))
}

pub async fn serve(config: ServiceConfig, addr: SocketAddr) -> std::io::Result<()> {
    let app = app(config)?;
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, app).await
}

async fn list_datasets(State(state): State<Shared>) -> Json<Vec<DatasetDescriptor>> {
    Json(state.snapshot().descriptors())
}

fn dataset<'a>(index: &'a WorkspaceIndex, id: &str) -> Result<&'a Dataset, ApiError> {
    index
        .datasets
        .get(id)
        .ok_or_else(|| ApiError::not_found(format!("dataset {id:?}")))
}

#[derive(Serialize)]
struct RecordView<'a> {
    image_id: &'a str,
    role: Role,
    has_pred: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    patch_offset: Option<(u32, u32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    track_id: Option<&'a str>,
}

async fn get_dataset(State(state): State<Shared>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let index = state.snapshot();
    let d = dataset(&index, &id)?;
    let mut body = json!({ "descriptor": d.descriptor });
    if let Some(m) = &d.manifest {
        let records: Vec<RecordView> = m
            .records
            .iter()
            .map(|r| RecordView {
                image_id: &r.image_id,
                role: r.role,
                has_pred: r.pred.is_some(),
                patch_offset: r.patch_offset,
                track_id: r.track_id.as_deref(),
            })
            .collect();
        body["class_map"] = json!(m.class_map());
        body["records"] = json!(records);
    }
    Ok(Json(body))
}

async fn get_profile(State(state): State<Shared>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let st = state.clone();
    tokio::task::spawn_blocking(move || {
        let index = st.snapshot();
        let d = dataset(&index, &id)?;
        let (Some(m), Some(hash)) = (&d.manifest, &d.descriptor.content_hash) else {
            return Err(ApiError::internal(d.descriptor.error.clone().unwrap_or_default()));
        };
        let analysis = st.cache.get_or_compute(hash, m).map_err(ApiError::internal)?;
        Ok(Json(json!({
            "dataset_id": id,
            "profile": analysis.profile,
            "summaries": analysis.summaries,
        })))
    })
    .await
    .map_err(ApiError::internal)?
}

#[derive(Serialize)]
struct MaskLayer {
    width: u32,
    height: u32,
    /// Class ids, one array per row.
    labels: Vec<Vec<u8>>,
}

impl From<&SegmentationMask> for MaskLayer {
    fn from(m: &SegmentationMask) -> Self {
        let w = (m.width() as usize).max(1);
        Self {
            width: m.width(),
            height: m.height(),
            labels: m.labels().chunks(w).map(<[u8]>::to_vec).collect(),
        }
    }
}

#[derive(Serialize)]
struct ImagePayload<'a> {
    dataset_id: &'a str,
    image_id: &'a str,
    role: Role,
    /// Raw microscope image path relative to the dataset, if recorded.
    image: Option<String>,
    gt: MaskLayer,
    pred: Option<MaskLayer>,
    summary: wearlca_core::analytics::WearSummary,
    classes: &'a [ClassInfo],
    #[serde(skip_serializing_if = "Option::is_none")]
    patch_offset: Option<(u32, u32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    track_id: Option<&'a str>,
}

async fn get_image(
    State(state): State<Shared>,
    Path((id, image_id)): Path<(String, String)>,
) -> Result<Json<Value>, ApiError> {
    let st = state.clone();
    tokio::task::spawn_blocking(move || {
        let index = st.snapshot();
        let d = dataset(&index, &id)?;
        let m = d
            .manifest
            .as_ref()
            .ok_or_else(|| ApiError::internal(d.descriptor.error.clone().unwrap_or_default()))?;
        let r: &ManifestRecord = m
            .record(&image_id)
            .ok_or_else(|| ApiError::not_found(format!("image {image_id:?} in dataset {id:?}")))?;
        let gt = m.load_gt(r).map_err(ApiError::internal)?;
        let pred = m.load_pred(r).map_err(ApiError::internal)?;
        let class_map = m.class_map();
        let payload = ImagePayload {
            dataset_id: &id,
            image_id: &r.image_id,
            role: r.role,
            image: r.image.as_ref().map(|p| p.to_string_lossy().into_owned()),
            summary: summarize(r.image_id.clone(), pred.as_ref().unwrap_or(&gt)),
            gt: MaskLayer::from(&gt),
            pred: pred.as_ref().map(MaskLayer::from),
            classes: class_map.classes(),
            patch_offset: r.patch_offset,
            track_id: r.track_id.as_deref(),
        };
        Ok(Json(json!(payload)))
    })
    .await
    .map_err(ApiError::internal)?
}

async fn reload(State(state): State<Shared>) -> Result<Json<Value>, ApiError> {
    let st = state.clone();
    let n = tokio::task::spawn_blocking(move || st.reload())
        .await
        .map_err(ApiError::internal)?
        .map_err(ApiError::internal)?;
    Ok(Json(json!({ "datasets": n })))
}
