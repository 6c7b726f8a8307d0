//! HTTP front end for the store.
//!
//! Paths and parameter names are fixed:
//!
//! - `POST   /api/data/event`                — append an event
//! - `POST   /api/data/informationelement`   — upsert a document
//! - `GET    /api/data/event/{id}`           — fetch one event
//! - `GET    /api/data/informationelement/{id}`
//! - `GET    /api/data/events?type&actor&sessionId&elemId&contentHash`
//! - `GET    /api/data/informationelements?contentHash&type&tag`
//! - `GET    /api/eventsearch?query=...` (+ event filters)
//! - `GET    /api/search?query=...` (+ element filters)
//! - `DELETE /api/data/event/{id}`
//! - `DELETE /api/data/informationelement/{id}`
//!
//! Every call requires HTTP Basic credentials.

use std::sync::Arc;

use axum::body::Body;
use axum::extract::{Path, RawQuery, State};
use axum::http::{Request, StatusCode};
use axum::middleware::{self, Next};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use base64::Engine;
use tokio::net::TcpListener;

use peyedf_core::wire::{DimeEvent, InformationElement};

use crate::error::StoreError;
use crate::query::{ElementFilter, EventFilter};
use crate::store::Store;

pub const DEFAULT_PORT: u16 = 8080;
pub const DEFAULT_USERNAME: &str = "Test1";
pub const DEFAULT_PASSWORD: &str = "123456";

#[derive(Debug, Clone)]
pub struct Credentials {
    pub username: String,
    pub password: String,
}

impl Default for Credentials {
    fn default() -> Self {
        Credentials {
            username: DEFAULT_USERNAME.into(),
            password: DEFAULT_PASSWORD.into(),
        }
    }
}

#[derive(Clone)]
struct AppState {
    store: Arc<Store>,
    credentials: Arc<Credentials>,
}

struct ApiError(StoreError);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status =
            StatusCode::from_u16(self.0.status_code()).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        let body = Json(serde_json::json!({ "error": self.0.to_string() }));
        let mut response = (status, body).into_response();
        if status == StatusCode::UNAUTHORIZED {
            response.headers_mut().insert(
                axum::http::header::WWW_AUTHENTICATE,
                axum::http::HeaderValue::from_static("Basic realm=\"dime\""),
            );
        }
        response
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        ApiError(e)
    }
}

async fn require_basic_auth(
    State(state): State<AppState>,
    request: Request<Body>,
    next: Next,
) -> Result<Response, ApiError> {
    let authorized = request
        .headers()
        .get(axum::http::header::AUTHORIZATION)
        .and_then(|v| v.to_str().ok())
        .and_then(|v| v.strip_prefix("Basic "))
        .and_then(|b64| base64::engine::general_purpose::STANDARD.decode(b64).ok())
        .and_then(|bytes| String::from_utf8(bytes).ok())
        .map(|userpass| {
            userpass
                == format!(
                    "{}:{}",
                    state.credentials.username, state.credentials.password
                )
        })
        .unwrap_or(false);
    if !authorized {
        return Err(ApiError(StoreError::Unauthorized));
    }
    Ok(next.run(request).await)
}

fn parse_pairs(raw: Option<String>) -> Vec<(String, String)> {
    let Some(raw) = raw else {
        return Vec::new();
    };
    url_decode_pairs(&raw)
}

/// Minimal application/x-www-form-urlencoded query parsing.
fn url_decode_pairs(raw: &str) -> Vec<(String, String)> {
    raw.split('&')
        .filter(|part| !part.is_empty())
        .map(|part| {
            let (k, v) = part.split_once('=').unwrap_or((part, ""));
            (percent_decode(k), percent_decode(v))
        })
        .collect()
}

fn percent_decode(s: &str) -> String {
    let bytes = s.as_bytes();
    let mut out = Vec::with_capacity(bytes.len());
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'%' if i + 3 <= bytes.len() => {
                let hi = (bytes[i + 1] as char).to_digit(16);
                let lo = (bytes[i + 2] as char).to_digit(16);
                if let (Some(hi), Some(lo)) = (hi, lo) {
                    out.push((hi * 16 + lo) as u8);
                    i += 3;
                } else {
                    out.push(bytes[i]);
                    i += 1;
                }
            }
            b'+' => {
                out.push(b' ');
                i += 1;
            }
            other => {
                out.push(other);
                i += 1;
            }
        }
    }
    String::from_utf8_lossy(&out).into_owned()
}

async fn post_event(
    State(state): State<AppState>,
    Json(event): Json<serde_json::Value>,
) -> Result<Json<DimeEvent>, ApiError> {
    let event: DimeEvent = serde_json::from_value(event)
        .map_err(|e| StoreError::bad_request(format!("invalid event payload: {e}")))?;
    Ok(Json(state.store.post_event(&event)?))
}

async fn post_element(
    State(state): State<AppState>,
    Json(element): Json<serde_json::Value>,
) -> Result<Json<InformationElement>, ApiError> {
    let element: InformationElement = serde_json::from_value(element)
        .map_err(|e| StoreError::bad_request(format!("invalid element payload: {e}")))?;
    Ok(Json(state.store.post_element(&element)?))
}

async fn get_event(
    State(state): State<AppState>,
    Path(id): Path<i64>,
) -> Result<Json<DimeEvent>, ApiError> {
    Ok(Json(state.store.get_event(id)?))
}

async fn get_element(
    State(state): State<AppState>,
    Path(id): Path<i64>,
) -> Result<Json<InformationElement>, ApiError> {
    Ok(Json(state.store.get_element(id)?))
}

async fn delete_event(
    State(state): State<AppState>,
    Path(id): Path<i64>,
) -> Result<Json<serde_json::Value>, ApiError> {
    state.store.delete_event(id)?;
    Ok(Json(serde_json::json!({ "deleted": id })))
}

async fn delete_element(
    State(state): State<AppState>,
    Path(id): Path<i64>,
) -> Result<Json<serde_json::Value>, ApiError> {
    state.store.delete_element(id)?;
    Ok(Json(serde_json::json!({ "deleted": id })))
}

async fn list_events(
    State(state): State<AppState>,
    RawQuery(raw): RawQuery,
) -> Result<Json<Vec<DimeEvent>>, ApiError> {
    let (filter, _) = EventFilter::from_pairs(&parse_pairs(raw), false)?;
    Ok(Json(state.store.query_events(&filter)?))
}

async fn list_elements(
    State(state): State<AppState>,
    RawQuery(raw): RawQuery,
) -> Result<Json<Vec<InformationElement>>, ApiError> {
    let (filter, _) = ElementFilter::from_pairs(&parse_pairs(raw), false)?;
    Ok(Json(state.store.query_elements(&filter)?))
}

async fn event_search(
    State(state): State<AppState>,
    RawQuery(raw): RawQuery,
) -> Result<Json<Vec<DimeEvent>>, ApiError> {
    let (filter, query) = EventFilter::from_pairs(&parse_pairs(raw), true)?;
    let query = query.ok_or_else(|| StoreError::bad_request("missing query parameter"))?;
    Ok(Json(state.store.event_search(&query, &filter)?))
}

async fn element_search(
    State(state): State<AppState>,
    RawQuery(raw): RawQuery,
) -> Result<Json<Vec<InformationElement>>, ApiError> {
    let (filter, query) = ElementFilter::from_pairs(&parse_pairs(raw), true)?;
    let query = query.ok_or_else(|| StoreError::bad_request("missing query parameter"))?;
    Ok(Json(state.store.element_search(&query, &filter)?))
}

pub fn router(store: Arc<Store>, credentials: Credentials) -> Router {
    let state = AppState {
        store,
        credentials: Arc::new(credentials),
    };
    Router::new()
        .route("/api/data/event", post(post_event))
        .route("/api/data/event/{id}", get(get_event).delete(delete_event))
        .route("/api/data/events", get(list_events))
        .route("/api/data/informationelement", post(post_element))
        .route(
            "/api/data/informationelement/{id}",
            get(get_element).delete(delete_element),
        )
        .route("/api/data/informationelements", get(list_elements))
        .route("/api/eventsearch", get(event_search))
        .route("/api/search", get(element_search))
        .layer(middleware::from_fn_with_state(
            state.clone(),
            require_basic_auth,
        ))
        .with_state(state)
}

/// Bind and serve until `shutdown` resolves. Reports the bound address (the
/// requested port may be 0 for an ephemeral one) through `on_ready`.
pub async fn serve(
    store: Arc<Store>,
    credentials: Credentials,
    addr: std::net::SocketAddr,
    on_ready: impl FnOnce(std::net::SocketAddr),
    shutdown: impl std::future::Future<Output = ()> + Send + 'static,
) -> Result<(), StoreError> {
    let listener = TcpListener::bind(addr)
        .await
        .map_err(|e| StoreError::Http(format!("cannot bind {addr}: {e}")))?;
    let local = listener
        .local_addr()
        .map_err(|e| StoreError::Http(e.to_string()))?;
    on_ready(local);
    axum::serve(listener, router(store, credentials))
        .with_graceful_shutdown(shutdown)
        .await
        .map_err(|e| StoreError::Http(e.to_string()))
}
