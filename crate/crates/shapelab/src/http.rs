//! JSON-over-HTTP routes in front of a [`Service`].

use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value as JsonValue};
use shapelab_core::Event;
use tower_http::cors::{AllowOrigin, CorsLayer};

use crate::service::{Service, ServiceError};

pub const DEFAULT_PORT: u16 = 8642;

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let (status, body) = match &self {
            ServiceError::NotFound(_) => (StatusCode::NOT_FOUND, json!({ "error": self.to_string() })),
            ServiceError::BadRequest(_) => (StatusCode::BAD_REQUEST, json!({ "error": self.to_string() })),
            ServiceError::Unprocessable(ds) => {
                (StatusCode::UNPROCESSABLE_ENTITY, json!({ "error": self.to_string(), "diagnostics": ds }))
            }
        };
        (status, Json(body)).into_response()
    }
}

fn parse_body<T: DeserializeOwned>(body: &[u8]) -> Result<T, ServiceError> {
    serde_json::from_slice(body).map_err(|e| ServiceError::BadRequest(format!("malformed request body: {e}")))
}

/// Evaluation may take a while; keep it off the async workers.
async fn blocking<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> T {
    tokio::task::spawn_blocking(f).await.expect("request worker panicked")
}

#[derive(Deserialize)]
struct CompileRequest {
    source: String,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct SessionRequest {
    program_id: String,
}

/// `{"event": {...}}`, or the event object on its own.
fn parse_event(body: &[u8]) -> Result<Event, ServiceError> {
    let v: JsonValue = parse_body(body)?;
    let inner = match v.get("event") {
        Some(e) => e.clone(),
        None => v,
    };
    serde_json::from_value(inner).map_err(|e| ServiceError::BadRequest(format!("malformed event: {e}")))
}

async fn compile_route(State(svc): State<Arc<Service>>, body: Bytes) -> Result<Response, ServiceError> {
    let req: CompileRequest = parse_body(&body)?;
    let result = blocking(move || svc.compile(&req.source)).await;
    let status = if result.ok { StatusCode::OK } else { StatusCode::UNPROCESSABLE_ENTITY };
    Ok((status, Json(result)).into_response())
}

async fn create_session(State(svc): State<Arc<Service>>, body: Bytes) -> Result<Response, ServiceError> {
    let req: SessionRequest = parse_body(&body)?;
    let created = blocking(move || svc.create_session(&req.program_id)).await?;
    Ok((StatusCode::CREATED, Json(created)).into_response())
}

async fn post_event(
    State(svc): State<Arc<Service>>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Response, ServiceError> {
    let event = parse_event(&body)?;
    let result = blocking(move || svc.post_event(&id, &event)).await?;
    Ok(Json(result).into_response())
}

async fn get_session(State(svc): State<Arc<Service>>, Path(id): Path<String>) -> Result<Response, ServiceError> {
    let state = blocking(move || svc.get_session(&id)).await?;
    Ok(Json(state).into_response())
}

async fn delete_session(State(svc): State<Arc<Service>>, Path(id): Path<String>) -> Result<Response, ServiceError> {
    svc.delete_session(&id)?;
    Ok(Json(json!({ "deleted": id })).into_response())
}

async fn not_found() -> ServiceError {
    ServiceError::NotFound("route".into())
}

/// All routes; `allow_origin` enables CORS for one origin, or any with `*`.
pub fn router(svc: Arc<Service>, allow_origin: Option<&str>) -> anyhow::Result<Router> {
    let mut app = Router::new()
        .route("/compile", post(compile_route))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session).delete(delete_session))
        .route("/sessions/{id}/events", post(post_event))
        .fallback(not_found)
        .with_state(svc);
    if let Some(origin) = allow_origin {
        let allow = if origin == "*" { AllowOrigin::any() } else { AllowOrigin::exact(HeaderValue::from_str(origin)?) };
        app = app.layer(
            CorsLayer::new()
                .allow_origin(allow)
                .allow_methods([Method::GET, Method::POST, Method::DELETE])
                .allow_headers([axum::http::header::CONTENT_TYPE]),
        );
    }
    Ok(app)
}

pub async fn serve(svc: Arc<Service>, host: &str, port: u16, allow_origin: Option<&str>) -> anyhow::Result<()> {
    let app = router(svc.clone(), allow_origin)?;
    let listener = tokio::net::TcpListener::bind((host, port)).await?;
    tracing::info!("listening on http://{}", listener.local_addr()?);
    let sweeper = tokio::spawn(async move {
        let mut every = tokio::time::interval(std::time::Duration::from_secs(60));
        loop {
            every.tick().await;
            svc.evict_idle();
        }
    });
    let result = axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await;
    sweeper.abort();
    Ok(result?)
}
