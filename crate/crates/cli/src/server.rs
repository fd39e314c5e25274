//! HTTP front end for [`QueryService`].

use std::collections::BTreeMap;
use std::sync::Arc;

use anyhow::{Context, Result};
use axum::extract::{Query, State};
use axum::http::{StatusCode, Uri};
use axum::response::IntoResponse;
use axum::{Json, Router};
use hotelrec_core::{QueryService, ServiceState};

pub fn router(service: Arc<QueryService>) -> Router {
    Router::new().fallback(dispatch).with_state(service)
}

async fn dispatch(
    State(service): State<Arc<QueryService>>,
    uri: Uri,
    Query(params): Query<BTreeMap<String, String>>,
) -> impl IntoResponse {
    let route = uri.path().to_string();
    let response = tokio::task::spawn_blocking(move || service.handle(&route, &params))
        .await
        .expect("query handler panicked");
    let status = StatusCode::from_u16(response.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
    (status, Json(response.body))
}

pub async fn serve(state: ServiceState, default_limit: usize, host: &str, port: u16) -> Result<()> {
    let service = Arc::new(QueryService::new(state, default_limit));
    let listener = tokio::net::TcpListener::bind((host, port))
        .await
        .with_context(|| format!("binding {host}:{port}"))?;
    // the first stdout line announces the bound address (useful with --port 0)
    println!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(service))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
