//! HTTP service for quantum card games, sandbox circuits and riddles.
//!
//! All routes live under `/v1`. Bodies are JSON in the same encoding the
//! core crate uses for snapshots; qudit and player indices in moves are
//! 0-based, while `.qcirc` text and measurement requests use 1-based qudits.
//!
//! | route | |
//! |---|---|
//! | `POST /v1/games` | create a game from a config, returns one token per player |
//! | `GET /v1/games/{id}` | the caller's view (own hand, others' hand sizes) |
//! | `GET /v1/games/{id}/legal_moves` | moves open to the caller |
//! | `POST /v1/games/{id}/moves` | play one move |
//! | `POST /v1/games/{id}/evaluate` | measure a completed round |
//! | `GET /v1/games/{id}/log` | config plus event log, replayable |
//! | `POST /v1/sandbox` | evaluate a `.qcirc` circuit, optional shots |
//! | `GET /v1/riddles` | built-in riddles |
//! | `POST /v1/riddles/{id}/attempt` | check a card sequence |
//! | `POST /v1/riddles/{id}/hint` | next card of a shortest solution |
//!
//! Game routes take `Authorization: Bearer <token>`. Errors are
//! `{"code", "message"}` plus `field` or `line` where known.

pub mod error;
mod games;
mod riddles;
mod sandbox;
pub mod sessions;
pub mod view;

use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use qcards_core::circuit_io::encode;
use serde::Serialize;
use tokio::net::TcpListener;

pub use error::ApiError;
pub use sandbox::MAX_SHOTS;
pub use sessions::Sessions;

/// JSON response in the canonical encoding.
pub(crate) fn canonical<T: Serialize>(value: &T) -> Response {
    canonical_with_status(StatusCode::OK, value)
}

pub(crate) fn canonical_with_status<T: Serialize>(status: StatusCode, value: &T) -> Response {
    (
        status,
        [(header::CONTENT_TYPE, "application/json")],
        encode(value),
    )
        .into_response()
}

pub fn router(sessions: Sessions) -> Router {
    Router::new()
        .route("/v1/games", post(games::create))
        .route("/v1/games/{id}", get(games::get_state))
        .route("/v1/games/{id}/legal_moves", get(games::get_legal_moves))
        .route("/v1/games/{id}/moves", post(games::play))
        .route("/v1/games/{id}/evaluate", post(games::evaluate))
        .route("/v1/games/{id}/log", get(games::get_log))
        .route("/v1/sandbox", post(sandbox::evaluate))
        .route("/v1/riddles", get(riddles::list))
        .route("/v1/riddles/{id}/attempt", post(riddles::attempt))
        .route("/v1/riddles/{id}/hint", post(riddles::hint))
        .with_state(sessions)
}

/// Serves on `listener` until Ctrl-C.
pub async fn serve(listener: TcpListener) -> std::io::Result<()> {
    axum::serve(listener, router(Sessions::default()))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
