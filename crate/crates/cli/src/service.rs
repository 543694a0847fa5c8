//! Stateless scoring service.

use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};

use npgen::reward::{self, RewardBreakdown};
use npgen::{io, Instance};

use crate::{CliError, CliResult, EXIT_IO};

/// Either a full instance or an id resolved against `corpus` (a JSONL path)
/// or the preloaded cache.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScoreRequest {
    #[serde(default)]
    pub instance: Option<Instance>,
    #[serde(default)]
    pub instance_id: Option<String>,
    #[serde(default)]
    pub corpus: Option<String>,
    pub completion: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ScoreResponse {
    pub instance_id: String,
    #[serde(flatten)]
    pub breakdown: RewardBreakdown,
}

#[derive(Clone, Default)]
pub struct AppState {
    cache: Arc<HashMap<String, Instance>>,
}

impl AppState {
    pub fn new(instances: Vec<Instance>) -> Self {
        AppState {
            cache: Arc::new(instances.into_iter().map(|i| (i.instance_id.clone(), i)).collect()),
        }
    }
}

fn error(status: StatusCode, detail: impl Into<String>) -> Response {
    (status, Json(serde_json::json!({ "error": detail.into() }))).into_response()
}

async fn health() -> &'static str {
    "ok"
}

type Rejection = (StatusCode, String);

fn resolve(state: &AppState, req: ScoreRequest) -> Result<(Instance, String), Rejection> {
    match (req.instance, req.instance_id) {
        (Some(inst), _) => {
            inst.check_integrity()
                .map_err(|e| (StatusCode::BAD_REQUEST, e.to_string()))?;
            Ok((inst, req.completion))
        }
        (None, Some(id)) => {
            let found = match req.corpus {
                Some(path) => {
                    let instances: Vec<Instance> = io::read_jsonl(Path::new(&path))
                        .map_err(|e| (StatusCode::NOT_FOUND, e.to_string()))?;
                    instances.into_iter().find(|i| i.instance_id == id)
                }
                None => state.cache.get(&id).cloned(),
            };
            found
                .map(|inst| (inst, req.completion))
                .ok_or_else(|| (StatusCode::NOT_FOUND, format!("instance {id} not in corpus")))
        }
        (None, None) => Err((StatusCode::BAD_REQUEST, "request needs `instance` or `instance_id`".into())),
    }
}

async fn score(State(state): State<AppState>, body: Bytes) -> Response {
    let req: ScoreRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return error(StatusCode::BAD_REQUEST, e.to_string()),
    };
    let work = tokio::task::spawn_blocking(move || {
        let (inst, completion) = resolve(&state, req)?;
        Ok::<_, Rejection>(ScoreResponse {
            instance_id: inst.instance_id.clone(),
            breakdown: reward::score(&inst, &completion),
        })
    });
    match work.await {
        Ok(Ok(resp)) => Json(resp).into_response(),
        Ok(Err((status, detail))) => error(status, detail),
        Err(e) => error(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()),
    }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/score", post(score))
        .with_state(state)
}

pub fn serve_blocking(host: &str, port: u16, corpus: Option<&Path>) -> CliResult<String> {
    let state = match corpus {
        Some(path) => AppState::new(crate::commands::load_instances(path)?),
        None => AppState::default(),
    };
    let addr = format!("{host}:{port}");
    let runtime = tokio::runtime::Runtime::new().map_err(|e| CliError {
        code: EXIT_IO,
        message: e.to_string(),
    })?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(&addr).await.map_err(|e| CliError {
            code: EXIT_IO,
            message: format!("{addr}: {e}"),
        })?;
        eprintln!("listening on {addr}");
        axum::serve(listener, router(state)).await.map_err(|e| CliError {
            code: EXIT_IO,
            message: e.to_string(),
        })
    })?;
    Ok(String::new())
}
