use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{HeaderMap, StatusCode};
use axum::response::Response;
use qcards_core::circuit_io::decode;
use qcards_core::game::Score;
use qcards_core::{end_round, format_state, legal_moves, score, GameConfig, GameEvent, Move, Phase};
use serde::Serialize;

use crate::error::ApiError;
use crate::sessions::{bearer_token, random_hex, Session, SessionRef, Sessions};
use crate::view::player_view;
use crate::{canonical, canonical_with_status};

#[derive(Serialize)]
struct Created<'a> {
    game_id: &'a str,
    config: &'a GameConfig,
    players: Vec<PlayerToken<'a>>,
}

#[derive(Serialize)]
struct PlayerToken<'a> {
    player: usize,
    token: &'a str,
}

/// `POST /v1/games`: body is a game config; `seed` may be omitted.
pub async fn create(State(sessions): State<Sessions>, body: Bytes) -> Result<Response, ApiError> {
    let text = std::str::from_utf8(&body).map_err(|_| ApiError::bad_request("body is not UTF-8"))?;
    let mut doc: serde_json::Value =
        serde_json::from_str(text).map_err(|e| ApiError::bad_request(e.to_string()))?;
    if let Some(obj) = doc.as_object_mut() {
        obj.entry("seed").or_insert_with(|| rand::random::<u64>().into());
    }
    let config: GameConfig = decode(&doc.to_string())?;
    let session = Session::new(random_hex(8), config)?;
    let created = Created {
        game_id: &session.game_id,
        config: &session.log.config,
        players: session
            .tokens
            .iter()
            .enumerate()
            .map(|(player, token)| PlayerToken { player, token })
            .collect(),
    };
    let response = canonical_with_status(StatusCode::CREATED, &created);
    sessions.insert(session);
    Ok(response)
}

fn lock(session: &SessionRef) -> std::sync::MutexGuard<'_, Session> {
    session.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
}

/// Looks up the session and the player behind the request's bearer token.
fn authorize(sessions: &Sessions, id: &str, headers: &HeaderMap) -> Result<(SessionRef, usize), ApiError> {
    let session = sessions.get(id)?;
    let token = bearer_token(headers).ok_or_else(ApiError::unauthorized)?;
    let player = lock(&session)
        .player_for(token)
        .ok_or_else(ApiError::unauthorized)?;
    Ok((session, player))
}

/// `GET /v1/games/{id}`
pub async fn get_state(
    State(sessions): State<Sessions>,
    Path(id): Path<String>,
    headers: HeaderMap,
) -> Result<Response, ApiError> {
    let (session, player) = authorize(&sessions, &id, &headers)?;
    let s = lock(&session);
    Ok(canonical(&player_view(&s, player)?))
}

#[derive(Serialize)]
struct Moves {
    moves: Vec<Move>,
}

/// `GET /v1/games/{id}/legal_moves`
pub async fn get_legal_moves(
    State(sessions): State<Sessions>,
    Path(id): Path<String>,
    headers: HeaderMap,
) -> Result<Response, ApiError> {
    let (session, player) = authorize(&sessions, &id, &headers)?;
    let s = lock(&session);
    Ok(canonical(&Moves {
        moves: legal_moves(&s.state, player)?,
    }))
}

/// `POST /v1/games/{id}/moves`: body is one move; the mover is the token's
/// player.
pub async fn play(
    State(sessions): State<Sessions>,
    Path(id): Path<String>,
    headers: HeaderMap,
    body: Bytes,
) -> Result<Response, ApiError> {
    let (session, player) = authorize(&sessions, &id, &headers)?;
    let text = std::str::from_utf8(&body).map_err(|_| ApiError::bad_request("body is not UTF-8"))?;
    let mv: Move = decode(text)?;
    let mut s = lock(&session);
    s.apply(GameEvent::Play { player, mv })?;
    Ok(canonical(&player_view(&s, player)?))
}

#[derive(Serialize)]
struct Evaluation {
    round: u32,
    state: String,
    outcome: Vec<u8>,
    carry_values: Vec<u8>,
    phase: Phase,
    #[serde(skip_serializing_if = "Option::is_none")]
    score: Option<Score>,
}

/// `POST /v1/games/{id}/evaluate`: any player may end a completed round.
pub async fn evaluate(
    State(sessions): State<Sessions>,
    Path(id): Path<String>,
    headers: HeaderMap,
) -> Result<Response, ApiError> {
    let (session, _) = authorize(&sessions, &id, &headers)?;
    let mut s = lock(&session);
    let round = s.state.round_number();
    let (pre, outcome, next) = end_round(&s.state)?;
    s.state = next;
    s.log.events.push(GameEvent::EndRound);
    let g = &s.state;
    Ok(canonical(&Evaluation {
        round,
        state: format_state(&pre),
        outcome: outcome.0,
        carry_values: g.carry_values(),
        phase: g.phase(),
        score: (g.phase() == Phase::Finished).then(|| score(g)).transpose()?,
    }))
}

/// `GET /v1/games/{id}/log`: the config and every applied event.
pub async fn get_log(
    State(sessions): State<Sessions>,
    Path(id): Path<String>,
    headers: HeaderMap,
) -> Result<Response, ApiError> {
    let (session, _) = authorize(&sessions, &id, &headers)?;
    let s = lock(&session);
    Ok(canonical(&s.log))
}
