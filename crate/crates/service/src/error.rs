use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use qcards_core::circuit_io::SnapshotError;
use qcards_core::{GameError, ParseError, RiddleError};
use serde::Serialize;

/// Error body: a stable `code`, a human `message` and, where it applies, the
/// offending field path or input line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: StatusCode,
    pub code: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code,
            message: message.into(),
            field: None,
            line: None,
        }
    }

    pub fn unauthorized() -> Self {
        Self::new(
            StatusCode::UNAUTHORIZED,
            "unauthorized",
            "missing or invalid player token",
        )
    }

    pub fn unknown_game(id: &str) -> Self {
        Self::new(StatusCode::NOT_FOUND, "unknown_game", format!("no game `{id}`"))
    }

    pub fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "bad_request", message)
    }
}

impl From<SnapshotError> for ApiError {
    fn from(e: SnapshotError) -> Self {
        ApiError {
            field: Some(e.path.clone()),
            ..Self::bad_request(e.message)
        }
    }
}

impl From<GameError> for ApiError {
    fn from(e: GameError) -> Self {
        let status = match e {
            GameError::InvalidConfig { .. } | GameError::UnknownPlayer(_) => StatusCode::BAD_REQUEST,
            GameError::NotYourTurn { .. } | GameError::WrongPhase { .. } => StatusCode::CONFLICT,
            GameError::CardNotHeld(_) | GameError::IllegalMove(_) | GameError::Engine(_) => {
                StatusCode::UNPROCESSABLE_ENTITY
            }
        };
        let field = match &e {
            GameError::InvalidConfig { field, .. } => Some(field.clone()),
            _ => None,
        };
        ApiError {
            field,
            ..Self::new(status, e.code(), e.to_string())
        }
    }
}

impl From<RiddleError> for ApiError {
    fn from(e: RiddleError) -> Self {
        let status = match e {
            RiddleError::UnknownRiddle(_) => StatusCode::NOT_FOUND,
            _ => StatusCode::UNPROCESSABLE_ENTITY,
        };
        Self::new(status, e.code(), e.to_string())
    }
}

impl From<ParseError> for ApiError {
    fn from(e: ParseError) -> Self {
        ApiError {
            line: Some(e.line),
            ..Self::new(StatusCode::BAD_REQUEST, "parse_error", e.to_string())
        }
    }
}

impl From<qcards_core::Error> for ApiError {
    fn from(e: qcards_core::Error) -> Self {
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, "engine_error", e.to_string())
    }
}

impl From<qcards_core::QuditError> for ApiError {
    fn from(e: qcards_core::QuditError) -> Self {
        qcards_core::Error::from(e).into()
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, crate::canonical(&self)).into_response()
    }
}
