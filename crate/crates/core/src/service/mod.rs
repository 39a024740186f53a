//! HTTP JSON API for the semi-automatic generalization wizard.
//!
//! Sessions live in memory behind a per-session mutex. With a log directory
//! configured, each session also appends its decisions to `<id>.jsonl` and
//! is rebuilt from that file on startup.

mod session;

pub use session::{AcceptedGroup, GroupSource, LogEvent, SessionError, SessionResult, SessionState, SupportRow, WizardSession};

use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use tokio::sync::{Mutex, RwLock};
use tower_http::cors::{AllowOrigin, Any, CorsLayer};

use crate::context::{read_csv, read_cxt, write_cxt, ContextDocument};
use crate::generalize::Mode;
use crate::lattice::{enumerate_concepts_with, LatticeDocument, DEFAULT_CONCEPT_CEILING};
use crate::ratio::parse_fraction;

pub const LISTEN_ENV: &str = "GENCONCEPT_LISTEN";
pub const DEFAULT_LISTEN: &str = "127.0.0.1:8080";

#[derive(Clone, Debug)]
pub struct ServiceConfig {
    pub log_dir: Option<PathBuf>,
    pub ceiling: usize,
    /// `None` allows any origin.
    pub allow_origin: Option<String>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            log_dir: None,
            ceiling: DEFAULT_CONCEPT_CEILING,
            allow_origin: None,
        }
    }
}

type Shared = Arc<Mutex<WizardSession>>;

pub struct SessionStore {
    sessions: RwLock<HashMap<String, Shared>>,
    config: ServiceConfig,
}

impl SessionStore {
    /// Creates the store and replays every log found in the log directory.
    pub fn open(config: ServiceConfig) -> SessionResult<Self> {
        let mut sessions = HashMap::new();
        if let Some(dir) = &config.log_dir {
            fs::create_dir_all(dir).map_err(io_error)?;
            for entry in fs::read_dir(dir).map_err(io_error)? {
                let path = entry.map_err(io_error)?.path();
                if path.extension().and_then(|e| e.to_str()) != Some("jsonl") {
                    continue;
                }
                let text = fs::read_to_string(&path).map_err(io_error)?;
                let events = text
                    .lines()
                    .filter(|l| !l.trim().is_empty())
                    .map(serde_json::from_str)
                    .collect::<Result<Vec<LogEvent>, _>>()
                    .map_err(|e| SessionError::Internal(format!("{}: {e}", path.display())))?;
                let s = WizardSession::replay(&events, config.ceiling)?;
                sessions.insert(s.id().to_string(), Arc::new(Mutex::new(s)));
            }
        }
        Ok(SessionStore {
            sessions: RwLock::new(sessions),
            config,
        })
    }

    pub async fn len(&self) -> usize {
        self.sessions.read().await.len()
    }

    pub async fn is_empty(&self) -> bool {
        self.len().await == 0
    }

    async fn get(&self, id: &str) -> SessionResult<Shared> {
        self.sessions
            .read()
            .await
            .get(id)
            .cloned()
            .ok_or_else(|| SessionError::NotFound(format!("no session {id}")))
    }

    fn log_path(&self, id: &str) -> Option<PathBuf> {
        self.config.log_dir.as_ref().map(|d| d.join(format!("{id}.jsonl")))
    }

    /// Appends the events from `from` onwards to the session's log file.
    fn persist(&self, s: &WizardSession, from: usize) -> SessionResult<()> {
        let Some(path) = self.log_path(s.id()) else {
            return Ok(());
        };
        let mut file = OpenOptions::new().create(true).append(true).open(path).map_err(io_error)?;
        for e in &s.log()[from..] {
            let line = serde_json::to_string(e).map_err(|e| SessionError::Internal(e.to_string()))?;
            writeln!(file, "{line}").map_err(io_error)?;
        }
        Ok(())
    }
}

fn io_error(e: std::io::Error) -> SessionError {
    SessionError::Internal(e.to_string())
}

impl IntoResponse for SessionError {
    fn into_response(self) -> Response {
        let status = match self {
            SessionError::BadInput(_) => StatusCode::BAD_REQUEST,
            SessionError::NotFound(_) => StatusCode::NOT_FOUND,
            SessionError::Conflict(_) => StatusCode::CONFLICT,
            SessionError::Threshold(_) => StatusCode::UNPROCESSABLE_ENTITY,
            SessionError::Ceiling(_) => StatusCode::SERVICE_UNAVAILABLE,
            SessionError::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        let body = serde_json::json!({
            "format_version": 1,
            "status": status.as_u16(),
            "error": self.to_string(),
        });
        (status, Json(body)).into_response()
    }
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum PayloadFormat {
    Cxt,
    Csv,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CreateRequest {
    format: PayloadFormat,
    payload: String,
    minsupp: String,
    mode: Mode,
    #[serde(default)]
    name: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupRequest {
    name: String,
    members: Vec<String>,
}

#[derive(Debug, Deserialize)]
struct AcceptQuery {
    name: Option<String>,
}

#[derive(Debug, Deserialize)]
struct ExportQuery {
    #[serde(default = "default_export")]
    format: String,
}

fn default_export() -> String {
    "cxt".into()
}

#[derive(Debug, Deserialize)]
struct LatticeQuery {
    #[serde(default = "default_which")]
    which: String,
}

fn default_which() -> String {
    "after".into()
}

fn body<T>(payload: Result<Json<T>, JsonRejection>) -> SessionResult<T> {
    payload
        .map(|Json(t)| t)
        .map_err(|e| SessionError::BadInput(e.body_text()))
}

type Store = Arc<SessionStore>;

async fn create_session(
    State(store): State<Store>,
    payload: Result<Json<CreateRequest>, JsonRejection>,
) -> SessionResult<Json<SessionState>> {
    let req = body(payload)?;
    let mut ctx = match req.format {
        PayloadFormat::Cxt => read_cxt(&req.payload)?,
        PayloadFormat::Csv => read_csv(&req.payload)?,
    };
    if let Some(name) = req.name {
        ctx = ctx.with_name(name);
    }
    let minsupp = parse_fraction(&req.minsupp)?;
    let id = uuid::Uuid::new_v4().simple().to_string();
    let session = WizardSession::create(&id, ctx, minsupp, req.mode, store.config.ceiling)?;
    let state = session.state()?;
    store.persist(&session, 0)?;
    store.sessions.write().await.insert(id, Arc::new(Mutex::new(session)));
    Ok(Json(state))
}

async fn get_session(State(store): State<Store>, Path(id): Path<String>) -> SessionResult<Json<SessionState>> {
    let shared = store.get(&id).await?;
    let s = shared.lock().await;
    Ok(Json(s.state()?))
}

async fn delete_session(State(store): State<Store>, Path(id): Path<String>) -> SessionResult<StatusCode> {
    let shared = store
        .sessions
        .write()
        .await
        .remove(&id)
        .ok_or_else(|| SessionError::NotFound(format!("no session {id}")))?;
    // wait for in-flight mutations before dropping the log
    let _guard = shared.lock().await;
    if let Some(path) = store.log_path(&id) {
        if path.exists() {
            fs::remove_file(path).map_err(io_error)?;
        }
    }
    Ok(StatusCode::NO_CONTENT)
}

async fn mutate<F>(store: &SessionStore, id: &str, f: F) -> SessionResult<Json<SessionState>>
where
    F: FnOnce(&mut WizardSession) -> SessionResult<()>,
{
    let shared = store.get(id).await?;
    let mut s = shared.lock().await;
    let before = s.log().len();
    f(&mut s)?;
    store.persist(&s, before)?;
    Ok(Json(s.state()?))
}

async fn accept_proposal(
    State(store): State<Store>,
    Path((id, fp)): Path<(String, String)>,
    Query(q): Query<AcceptQuery>,
) -> SessionResult<Json<SessionState>> {
    mutate(&store, &id, |s| s.accept(&fp, q.name.as_deref()).map(drop)).await
}

async fn reject_proposal(
    State(store): State<Store>,
    Path((id, fp)): Path<(String, String)>,
) -> SessionResult<Json<SessionState>> {
    mutate(&store, &id, |s| s.reject(&fp).map(drop)).await
}

async fn add_group(
    State(store): State<Store>,
    Path(id): Path<String>,
    payload: Result<Json<GroupRequest>, JsonRejection>,
) -> SessionResult<Json<SessionState>> {
    let req = body(payload)?;
    mutate(&store, &id, |s| s.add_group(&req.name, &req.members)).await
}

async fn export(
    State(store): State<Store>,
    Path(id): Path<String>,
    Query(q): Query<ExportQuery>,
) -> SessionResult<Response> {
    let shared = store.get(&id).await?;
    let ctx = shared.lock().await.generalized()?;
    match q.format.as_str() {
        "cxt" => Ok(([(header::CONTENT_TYPE, "text/plain; charset=utf-8")], write_cxt(&ctx)).into_response()),
        "json" => Ok(Json(ContextDocument::from_context(&ctx)).into_response()),
        other => Err(SessionError::BadInput(format!("unknown export format {other:?}"))),
    }
}

async fn lattice(
    State(store): State<Store>,
    Path(id): Path<String>,
    Query(q): Query<LatticeQuery>,
) -> SessionResult<Json<LatticeDocument>> {
    let shared = store.get(&id).await?;
    let s = shared.lock().await;
    let ctx = match q.which.as_str() {
        "before" => s.base().clone(),
        "after" => s.generalized()?,
        other => return Err(SessionError::BadInput(format!("unknown lattice {other:?}"))),
    };
    let lat = enumerate_concepts_with(&ctx, s.ceiling())?;
    Ok(Json(LatticeDocument::from_lattice(&lat)))
}

pub fn router(store: Arc<SessionStore>) -> Router {
    let origin = match &store.config.allow_origin {
        Some(o) => match HeaderValue::from_str(o) {
            Ok(v) => AllowOrigin::exact(v),
            Err(_) => AllowOrigin::any(),
        },
        None => AllowOrigin::any(),
    };
    let cors = CorsLayer::new().allow_origin(origin).allow_methods(Any).allow_headers(Any);
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session).delete(delete_session))
        .route("/sessions/{id}/proposals/{fp}/accept", post(accept_proposal))
        .route("/sessions/{id}/proposals/{fp}/reject", post(reject_proposal))
        .route("/sessions/{id}/groups", post(add_group))
        .route("/sessions/{id}/export", get(export))
        .route("/sessions/{id}/lattice", get(lattice))
        .layer(cors)
        .with_state(store)
}

/// Binds `listen` and serves until Ctrl-C.
pub async fn serve(listen: &str, config: ServiceConfig) -> crate::Result<()> {
    let store = SessionStore::open(config).map_err(|e| crate::Error::Argument(e.to_string()))?;
    let listener = tokio::net::TcpListener::bind(listen).await?;
    eprintln!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(Arc::new(store)))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
