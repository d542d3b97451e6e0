use qcards_core::game::{PlayedGate, RoundRecord, Score};
use qcards_core::{format_state, score, Card, GameConfig, GameError, Phase};
use serde::Serialize;

use crate::sessions::Session;

/// What one player may see of a game.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlayerView {
    pub game_id: String,
    pub created_at: u64,
    pub you: usize,
    pub config: GameConfig,
    pub phase: Phase,
    pub round_number: u32,
    pub turn: usize,
    pub hand: Vec<Card>,
    pub players: Vec<PublicPlayer>,
    pub deck_size: usize,
    pub round_circuit: Vec<PlayedGate>,
    pub steals: Vec<StealView>,
    pub rounds: Vec<RoundRecord>,
    /// Formatted pre-measurement state; only present when the game reveals it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub score: Option<Score>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PublicPlayer {
    pub id: usize,
    pub hand_size: usize,
    pub carry_value: u8,
}

/// A STEAL as seen by one player: the card is shown only to thief and victim.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StealView {
    pub round: u32,
    pub thief: usize,
    pub victim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub card: Option<Card>,
    pub fizzled: bool,
}

pub fn player_view(s: &Session, you: usize) -> Result<PlayerView, GameError> {
    let g = &s.state;
    let state = if g.config().reveals_state() && g.phase() != Phase::Finished {
        Some(format_state(&g.pre_measurement_state()?))
    } else {
        None
    };
    let score = match g.phase() {
        Phase::Finished => Some(score(g)?),
        _ => None,
    };
    Ok(PlayerView {
        game_id: s.game_id.clone(),
        created_at: s.created_at,
        you,
        config: g.config().clone(),
        phase: g.phase(),
        round_number: g.round_number(),
        turn: g.turn(),
        hand: g.players()[you].hand.clone(),
        players: g
            .players()
            .iter()
            .map(|p| PublicPlayer {
                id: p.id,
                hand_size: p.hand.len(),
                carry_value: p.carry_value,
            })
            .collect(),
        deck_size: g.deck().len(),
        round_circuit: g.round_circuit().to_vec(),
        steals: g
            .steals()
            .iter()
            .map(|r| StealView {
                round: r.round,
                thief: r.thief,
                victim: r.victim,
                card: r.card.filter(|_| you == r.thief || you == r.victim),
                fizzled: r.card.is_none(),
            })
            .collect(),
        rounds: g.rounds().to_vec(),
        state,
        score,
    })
}
