use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock};
use std::time::{SystemTime, UNIX_EPOCH};

use axum::http::HeaderMap;
use qcards_core::game::{apply_event, EventLog};
use qcards_core::{new_game, GameConfig, GameError, GameEvent, GameState};
use rand::Rng;

use crate::error::ApiError;

/// One running game: its state, the event log that rebuilds it and one
/// opaque token per player.
#[derive(Debug)]
pub struct Session {
    pub game_id: String,
    pub created_at: u64,
    pub tokens: Vec<String>,
    pub state: GameState,
    pub log: EventLog,
}

impl Session {
    pub fn new(game_id: String, config: GameConfig) -> Result<Self, GameError> {
        let state = new_game(config.clone())?;
        let tokens = (0..config.num_players).map(|_| random_hex(16)).collect();
        let created_at = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Ok(Session {
            game_id,
            created_at,
            tokens,
            state,
            log: EventLog {
                config,
                events: Vec::new(),
            },
        })
    }

    pub fn player_for(&self, token: &str) -> Option<usize> {
        self.tokens.iter().position(|t| t == token)
    }

    /// Applies `event` and records it; on error nothing changes.
    pub fn apply(&mut self, event: GameEvent) -> Result<(), GameError> {
        self.state = apply_event(&self.state, &event)?;
        self.log.events.push(event);
        Ok(())
    }
}

pub fn random_hex(bytes: usize) -> String {
    let mut rng = rand::rng();
    (0..bytes).map(|_| format!("{:02x}", rng.random::<u8>())).collect()
}

pub fn bearer_token(headers: &HeaderMap) -> Option<&str> {
    headers
        .get(axum::http::header::AUTHORIZATION)?
        .to_str()
        .ok()?
        .strip_prefix("Bearer ")
        .map(str::trim)
}

pub type SessionRef = Arc<Mutex<Session>>;

/// All sessions of one service instance. Each session has its own lock, so
/// mutations of one game are serialized while different games proceed in
/// parallel.
#[derive(Clone, Debug, Default)]
pub struct Sessions {
    inner: Arc<RwLock<HashMap<String, SessionRef>>>,
}

impl Sessions {
    pub fn insert(&self, session: Session) {
        let id = session.game_id.clone();
        self.inner
            .write()
            .expect("session map lock")
            .insert(id, Arc::new(Mutex::new(session)));
    }

    pub fn get(&self, id: &str) -> Result<SessionRef, ApiError> {
        self.inner
            .read()
            .expect("session map lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::unknown_game(id))
    }
}
