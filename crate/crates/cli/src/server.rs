//! HTTP front end of the explorer sessions.

use std::sync::Arc;

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::json;
use torfold::explorer::presets;
use torfold::{CreateRequest, ExplorerError, SessionStore, SiteId};

#[derive(Debug, Deserialize)]
pub struct MutateBody {
    pub orbit: SiteId,
}

pub struct ApiError(ExplorerError);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let message = self.0.to_string();
        let (status, body) = match self.0 {
            ExplorerError::UnknownSession(_) => (StatusCode::NOT_FOUND, json!({"error": message})),
            ExplorerError::Inadmissible(violations) => (
                StatusCode::UNPROCESSABLE_ENTITY,
                json!({"error": message, "violations": violations}),
            ),
            ExplorerError::Violation {
                witness,
                violations,
            } => (
                StatusCode::CONFLICT,
                json!({"error": message, "witness": witness, "violations": violations}),
            ),
            ExplorerError::FrozenOrbit(_)
            | ExplorerError::UnknownOrbit(_)
            | ExplorerError::EmptyHistory
            | ExplorerError::Preset(_) => (StatusCode::BAD_REQUEST, json!({"error": message})),
            ExplorerError::Cluster(_) => (StatusCode::INTERNAL_SERVER_ERROR, json!({"error": message})),
        };
        (status, Json(body)).into_response()
    }
}

type Store = State<Arc<SessionStore>>;

async fn create(State(store): Store, Json(req): Json<CreateRequest>) -> Result<Response, ApiError> {
    let view = store.create(req).map_err(ApiError)?;
    log::info!("created session {}", view.id);
    Ok((StatusCode::CREATED, Json(view)).into_response())
}

async fn show(State(store): Store, Path(id): Path<String>) -> Result<Response, ApiError> {
    Ok(Json(store.view(&id).map_err(ApiError)?).into_response())
}

async fn mutate(
    State(store): Store,
    Path(id): Path<String>,
    Json(body): Json<MutateBody>,
) -> Result<Response, ApiError> {
    Ok(Json(store.mutate(&id, body.orbit).map_err(ApiError)?).into_response())
}

async fn undo(State(store): Store, Path(id): Path<String>) -> Result<Response, ApiError> {
    Ok(Json(store.undo(&id).map_err(ApiError)?).into_response())
}

async fn fold(State(store): Store, Path(id): Path<String>) -> Result<Response, ApiError> {
    Ok(Json(store.fold(&id).map_err(ApiError)?).into_response())
}

async fn list_presets() -> Response {
    Json(presets()).into_response()
}

pub fn router(store: Arc<SessionStore>) -> Router {
    Router::new()
        .route("/presets", get(list_presets))
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(show))
        .route("/sessions/{id}/mutate", post(mutate))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/fold", get(fold))
        .with_state(store)
}

/// Blocks serving on `127.0.0.1:port`.
pub fn serve(port: u16) -> std::io::Result<()> {
    let rt = tokio::runtime::Runtime::new()?;
    rt.block_on(async {
        let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
        log::info!("listening on {}", listener.local_addr()?);
        axum::serve(listener, router(Arc::new(SessionStore::new()))).await
    })
}
