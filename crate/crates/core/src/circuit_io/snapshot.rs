//! Canonical JSON encoding.
//!
//! Struct fields serialize in declaration order and no hash maps are
//! involved, so equal values always produce identical bytes.

use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

use crate::game::GameState;

/// Decoding failure with the JSON path of the offending field.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{path}: {message}")]
pub struct SnapshotError {
    pub path: String,
    pub message: String,
}

/// Pretty-printed canonical JSON with a trailing newline.
pub fn encode<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("in-memory values always serialize");
    s.push('\n');
    s
}

pub fn decode<T: DeserializeOwned>(text: &str) -> Result<T, SnapshotError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        SnapshotError {
            path: if path.is_empty() { ".".into() } else { path },
            message: e.into_inner().to_string(),
        }
    })?;
    de.end().map_err(|e| SnapshotError {
        path: ".".into(),
        message: e.to_string(),
    })?;
    Ok(value)
}

pub fn serialize_game(g: &GameState) -> String {
    encode(g)
}

/// Parses a snapshot and checks it describes a reachable game.
pub fn deserialize_game(text: &str) -> Result<GameState, SnapshotError> {
    let g: GameState = decode(text)?;
    g.check_consistency()
        .map_err(|(path, message)| SnapshotError { path, message })?;
    Ok(g)
}
