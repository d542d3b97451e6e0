//! Turn-based game state machine.
//!
//! A game is a sequence of rounds. In each round players take turns in
//! seating order playing one card per turn; gate cards are appended to the
//! round circuit, `STEAL` moves a random card from a victim's hand into the
//! thief's. Once every hand is empty the round is evaluated: the circuit runs
//! on `|carry_1, ..., carry_n>`, the result is measured once and each
//! player's digit becomes their carry value for the next round.
//!
//! All operations return a new [`GameState`]; the input is never modified.

mod rng;

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gates::{card_set, run_ops, Card, CardSet, GateKind, GateOp, Version};
use crate::qudit::{basis_state, measure_all, Dim, Outcome, StateVector};

pub use rng::GameRng;

pub const MIN_PLAYERS: usize = 2;
pub const MAX_PLAYERS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Style {
    Competitive,
    Cooperative,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeckOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gate_copies_per_player: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steal_copies_per_player: Option<u32>,
}

fn default_rounds() -> u32 {
    3
}

fn default_hand_size() -> usize {
    5
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameConfig {
    pub version: Version,
    pub style: Style,
    pub num_players: usize,
    #[serde(default = "default_rounds")]
    pub num_rounds: u32,
    #[serde(default = "default_hand_size")]
    pub hand_size: usize,
    pub seed: u64,
    #[serde(default)]
    pub deck: DeckOverrides,
    /// Show pre-measurement amplitudes mid-round. `None` means hidden in
    /// competitive play and shown in cooperative play.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reveal_state: Option<bool>,
}

impl GameConfig {
    /// Defaults: 3 rounds, hand size 5, stock deck.
    pub fn new(version: Version, style: Style, num_players: usize, seed: u64) -> Self {
        GameConfig {
            version,
            style,
            num_players,
            num_rounds: default_rounds(),
            hand_size: default_hand_size(),
            seed,
            deck: DeckOverrides::default(),
            reveal_state: None,
        }
    }

    pub fn dim(&self) -> Dim {
        self.version.dim()
    }

    pub fn reveals_state(&self) -> bool {
        self.reveal_state
            .unwrap_or(self.style == Style::Cooperative)
    }

    pub fn card_set(&self) -> CardSet {
        let mut set = card_set(self.version);
        if let Some(n) = self.deck.gate_copies_per_player {
            set.gate_copies_per_player = n;
        }
        if let Some(n) = self.deck.steal_copies_per_player {
            set.steal_copies_per_player = n;
        }
        set
    }

    pub fn validate(&self) -> Result<(), GameError> {
        let invalid = |field: &str, message: String| GameError::InvalidConfig {
            field: field.to_string(),
            message,
        };
        if !(MIN_PLAYERS..=MAX_PLAYERS).contains(&self.num_players) {
            return Err(invalid(
                "num_players",
                format!(
                    "{} players requested, expected {MIN_PLAYERS} to {MAX_PLAYERS}",
                    self.num_players
                ),
            ));
        }
        if self.num_rounds == 0 {
            return Err(invalid("num_rounds", "at least one round is required".into()));
        }
        if self.hand_size == 0 {
            return Err(invalid("hand_size", "hand size must be at least 1".into()));
        }
        let deck = self.card_set().deck(self.num_players).len();
        let needed = self.num_players * self.hand_size * self.num_rounds as usize;
        if needed > deck {
            return Err(invalid(
                "deck",
                format!("deck holds {deck} cards but {needed} are dealt over the game"),
            ));
        }
        Ok(())
    }
}

/// A card play. JSON form: `{"card":"CX","targets":[0,1]}` or
/// `{"card":"STEAL","victim":2}`; indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MoveRepr", into = "MoveRepr")]
pub enum Move {
    Gate(GateOp),
    Steal { victim: usize },
}

#[derive(Serialize, Deserialize)]
struct MoveRepr {
    card: Card,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    targets: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    victim: Option<usize>,
}

impl TryFrom<MoveRepr> for Move {
    type Error = String;
    fn try_from(r: MoveRepr) -> Result<Self, Self::Error> {
        match r.card {
            Card::Steal => {
                if !r.targets.is_empty() {
                    return Err("STEAL takes a victim, not targets".into());
                }
                let victim = r.victim.ok_or("STEAL requires a victim")?;
                Ok(Move::Steal { victim })
            }
            Card::Gate(gate) => {
                if r.victim.is_some() {
                    return Err(format!("{gate} takes targets, not a victim"));
                }
                if r.targets.len() != gate.arity() {
                    return Err(format!(
                        "{gate} takes {} target(s), got {}",
                        gate.arity(),
                        r.targets.len()
                    ));
                }
                Ok(Move::Gate(GateOp {
                    gate,
                    targets: r.targets,
                }))
            }
        }
    }
}

impl From<Move> for MoveRepr {
    fn from(m: Move) -> Self {
        match m {
            Move::Gate(op) => MoveRepr {
                card: Card::Gate(op.gate),
                targets: op.targets,
                victim: None,
            },
            Move::Steal { victim } => MoveRepr {
                card: Card::Steal,
                targets: Vec::new(),
                victim: Some(victim),
            },
        }
    }
}

impl Move {
    pub fn gate(gate: GateKind, targets: &[usize]) -> Self {
        Move::Gate(GateOp {
            gate,
            targets: targets.to_vec(),
        })
    }

    pub fn card(&self) -> Card {
        match self {
            Move::Gate(op) => Card::Gate(op.gate),
            Move::Steal { .. } => Card::Steal,
        }
    }

    /// (card token, indices): the order used when listing moves.
    pub fn sort_key(&self) -> (&'static str, Vec<usize>) {
        match self {
            Move::Gate(op) => (op.gate.token(), op.targets.clone()),
            Move::Steal { victim } => ("STEAL", vec![*victim]),
        }
    }
}

impl fmt::Display for Move {
    /// 1-based, e.g. `CX 1 2` or `STEAL 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Gate(op) => write!(f, "{op}"),
            Move::Steal { victim } => write!(f, "STEAL {}", victim + 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    InRound,
    BetweenRounds,
    Finished,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::InRound => "in_round",
            Phase::BetweenRounds => "between_rounds",
            Phase::Finished => "finished",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayerState {
    pub id: usize,
    pub hand: Vec<Card>,
    pub carry_value: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayedGate {
    pub player: usize,
    pub op: GateOp,
}

/// A resolved STEAL. `card` is `None` when nobody had a card to take.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StealRecord {
    pub round: u32,
    pub thief: usize,
    pub victim: usize,
    pub card: Option<Card>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round: u32,
    pub initial: Vec<u8>,
    pub circuit: Vec<PlayedGate>,
    pub outcome: Outcome,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GameError {
    #[error("invalid config `{field}`: {message}")]
    InvalidConfig { field: String, message: String },
    #[error("not your turn: player {} is to move", turn + 1)]
    NotYourTurn { player: usize, turn: usize },
    #[error("unknown player {0}")]
    UnknownPlayer(usize),
    #[error("card {0} is not in your hand")]
    CardNotHeld(Card),
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("operation needs phase {expected}, game is in {actual}")]
    WrongPhase { expected: Phase, actual: Phase },
    #[error(transparent)]
    Engine(#[from] crate::Error),
}

impl GameError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            GameError::InvalidConfig { .. } => "invalid_config",
            GameError::NotYourTurn { .. } => "not_your_turn",
            GameError::UnknownPlayer(_) => "unknown_player",
            GameError::CardNotHeld(_) => "card_not_held",
            GameError::IllegalMove(_) => "illegal_move",
            GameError::WrongPhase { .. } => "wrong_phase",
            GameError::Engine(_) => "engine_error",
        }
    }
}

/// Complete game snapshot. Field order is the canonical serialization order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameState {
    pub(crate) config: GameConfig,
    pub(crate) phase: Phase,
    pub(crate) round_number: u32,
    pub(crate) turn: usize,
    pub(crate) players: Vec<PlayerState>,
    pub(crate) deck: Vec<Card>,
    pub(crate) discard: Vec<Card>,
    pub(crate) round_circuit: Vec<PlayedGate>,
    pub(crate) steals: Vec<StealRecord>,
    pub(crate) rounds: Vec<RoundRecord>,
    pub(crate) rng: GameRng,
}

impl GameState {
    pub fn config(&self) -> &GameConfig {
        &self.config
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    /// 1-based round counter.
    pub fn round_number(&self) -> u32 {
        self.round_number
    }

    pub fn turn(&self) -> usize {
        self.turn
    }

    pub fn players(&self) -> &[PlayerState] {
        &self.players
    }

    pub fn deck(&self) -> &[Card] {
        &self.deck
    }

    pub fn discard(&self) -> &[Card] {
        &self.discard
    }

    pub fn round_circuit(&self) -> &[PlayedGate] {
        &self.round_circuit
    }

    pub fn steals(&self) -> &[StealRecord] {
        &self.steals
    }

    pub fn rounds(&self) -> &[RoundRecord] {
        &self.rounds
    }

    pub fn rng(&self) -> &GameRng {
        &self.rng
    }

    pub fn carry_values(&self) -> Vec<u8> {
        self.players.iter().map(|p| p.carry_value).collect()
    }

    /// Every card in the game (deck, hands, current circuit, discard), sorted.
    pub fn all_cards(&self) -> Vec<Card> {
        let mut cards: Vec<Card> = self.deck.clone();
        cards.extend(self.players.iter().flat_map(|p| p.hand.iter().copied()));
        cards.extend(self.round_circuit.iter().map(|g| Card::Gate(g.op.gate)));
        cards.extend(self.discard.iter().copied());
        cards.sort();
        cards
    }

    /// The current round's circuit applied to the carry values, unmeasured.
    pub fn pre_measurement_state(&self) -> Result<StateVector, GameError> {
        let start = basis_state(self.config.dim(), &self.carry_values()).map_err(crate::Error::from)?;
        let ops: Vec<GateOp> = self.round_circuit.iter().map(|g| g.op.clone()).collect();
        Ok(run_ops(&start, &ops)?)
    }

    fn player(&self, id: usize) -> Result<&PlayerState, GameError> {
        self.players.get(id).ok_or(GameError::UnknownPlayer(id))
    }

    fn deal(&mut self) {
        for _ in 0..self.config.hand_size {
            for p in &mut self.players {
                if let Some(card) = self.deck.pop() {
                    p.hand.push(card);
                }
            }
        }
    }

    fn next_turn_after(&self, player: usize) -> Option<usize> {
        let n = self.players.len();
        (1..=n)
            .map(|k| (player + k) % n)
            .find(|&p| !self.players[p].hand.is_empty())
    }

    /// Structural checks used when loading a snapshot. Returns the offending
    /// field path on failure.
    pub fn check_consistency(&self) -> Result<(), (String, String)> {
        let fail = |path: &str, msg: &str| Err((path.to_string(), msg.to_string()));
        if self.config.validate().is_err() {
            return fail("config", "invalid game configuration");
        }
        if self.players.len() != self.config.num_players {
            return fail("players", "player count does not match config.num_players");
        }
        let d = self.config.dim().get();
        let set = self.config.card_set();
        for (i, p) in self.players.iter().enumerate() {
            if p.id != i {
                return fail(&format!("players[{i}].id"), "player ids must be 0..n in order");
            }
            if p.carry_value >= d {
                return fail(&format!("players[{i}].carry_value"), "carry value out of range");
            }
            if let Some(c) = p.hand.iter().find(|c| !set.contains(**c)) {
                return fail(
                    &format!("players[{i}].hand"),
                    &format!("card {c} is not part of this version"),
                );
            }
        }
        if self.turn >= self.players.len() {
            return fail("turn", "turn points at a missing player");
        }
        if self.round_number == 0 || self.round_number > self.config.num_rounds {
            return fail("round_number", "round number out of range");
        }
        let n = self.players.len();
        for (i, g) in self.round_circuit.iter().enumerate() {
            let ok = g.player < n
                && g.op.targets.len() == g.op.gate.arity()
                && g.op.targets.iter().all(|&t| t < n)
                && !(g.op.targets.len() == 2 && g.op.targets[0] == g.op.targets[1])
                && g.op.gate.valid_for(self.config.dim());
            if !ok {
                return fail(&format!("round_circuit[{i}]"), "invalid gate play");
            }
        }
        let mut initial = set.deck(n);
        initial.sort();
        if self.all_cards() != initial {
            return fail("deck", "cards do not add up to the initial deck");
        }
        match self.phase {
            Phase::InRound if self.players[self.turn].hand.is_empty() => {
                fail("turn", "player to move has no cards")
            }
            Phase::BetweenRounds | Phase::Finished
                if self.players.iter().any(|p| !p.hand.is_empty()) =>
            {
                fail("phase", "hands must be empty outside a round")
            }
            _ => Ok(()),
        }
    }
}

/// Shuffles the deck, deals the first hands and seats player 0 to move.
pub fn new_game(config: GameConfig) -> Result<GameState, GameError> {
    config.validate()?;
    let mut rng = GameRng::new(config.seed);
    let mut deck = config.card_set().deck(config.num_players);
    deck.shuffle(&mut rng);
    let players = (0..config.num_players)
        .map(|id| PlayerState {
            id,
            hand: Vec::new(),
            carry_value: 0,
        })
        .collect();
    let mut g = GameState {
        config,
        phase: Phase::InRound,
        round_number: 1,
        turn: 0,
        players,
        deck,
        discard: Vec::new(),
        round_circuit: Vec::new(),
        steals: Vec::new(),
        rounds: Vec::new(),
        rng,
    };
    g.deal();
    Ok(g)
}

fn expect_phase(g: &GameState, expected: Phase) -> Result<(), GameError> {
    if g.phase != expected {
        return Err(GameError::WrongPhase {
            expected,
            actual: g.phase,
        });
    }
    Ok(())
}

fn check_turn(g: &GameState, player: usize) -> Result<(), GameError> {
    g.player(player)?;
    expect_phase(g, Phase::InRound)?;
    if g.turn != player {
        return Err(GameError::NotYourTurn {
            player,
            turn: g.turn,
        });
    }
    Ok(())
}

/// Players `player` may rob: everyone else holding a card, or, if nobody
/// else holds one, everyone else (the steal then takes nothing).
fn steal_victims(g: &GameState, player: usize) -> Vec<usize> {
    let others: Vec<usize> = (0..g.players.len()).filter(|&p| p != player).collect();
    let holding: Vec<usize> = others
        .iter()
        .copied()
        .filter(|&p| !g.players[p].hand.is_empty())
        .collect();
    if holding.is_empty() {
        others
    } else {
        holding
    }
}

fn gate_targets(gate: GateKind, n: usize) -> Vec<Vec<usize>> {
    match gate.arity() {
        1 => (0..n).map(|q| vec![q]).collect(),
        _ => (0..n)
            .flat_map(|c| (0..n).filter(move |&t| t != c).map(move |t| vec![c, t]))
            .collect(),
    }
}

/// Every move `player` can make now, ordered by (card token, indices).
pub fn legal_moves(g: &GameState, player: usize) -> Result<Vec<Move>, GameError> {
    check_turn(g, player)?;
    let mut cards = g.players[player].hand.clone();
    cards.sort();
    cards.dedup();
    let n = g.players.len();
    let mut moves = Vec::new();
    for card in cards {
        match card {
            Card::Gate(gate) => moves.extend(
                gate_targets(gate, n)
                    .into_iter()
                    .map(|targets| Move::Gate(GateOp { gate, targets })),
            ),
            Card::Steal => moves.extend(
                steal_victims(g, player)
                    .into_iter()
                    .map(|victim| Move::Steal { victim }),
            ),
        }
    }
    moves.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(moves)
}

/// Plays one card for `player` and advances the turn.
pub fn play_card(g: &GameState, player: usize, mv: &Move) -> Result<GameState, GameError> {
    check_turn(g, player)?;
    let card = mv.card();
    let pos = g.players[player]
        .hand
        .iter()
        .position(|&c| c == card)
        .ok_or(GameError::CardNotHeld(card))?;
    let n = g.players.len();

    match mv {
        Move::Gate(op) => {
            if op.targets.len() != op.gate.arity() {
                return Err(GameError::IllegalMove(format!(
                    "{} takes {} target(s)",
                    op.gate,
                    op.gate.arity()
                )));
            }
            if let Some(&t) = op.targets.iter().find(|&&t| t >= n) {
                return Err(GameError::IllegalMove(format!("no qudit {}", t + 1)));
            }
            if op.targets.len() == 2 && op.targets[0] == op.targets[1] {
                return Err(GameError::IllegalMove("CX control equals target".into()));
            }
        }
        Move::Steal { victim } => {
            if *victim >= n {
                return Err(GameError::IllegalMove(format!("no player {}", victim + 1)));
            }
            if *victim == player {
                return Err(GameError::IllegalMove("cannot steal from yourself".into()));
            }
            if !steal_victims(g, player).contains(victim) {
                return Err(GameError::IllegalMove(format!(
                    "player {} has no cards to steal",
                    victim + 1
                )));
            }
        }
    }

    let mut next = g.clone();
    next.players[player].hand.remove(pos);
    match mv {
        Move::Gate(op) => next.round_circuit.push(PlayedGate {
            player,
            op: op.clone(),
        }),
        Move::Steal { victim } => {
            next.discard.push(Card::Steal);
            let victim_hand = &next.players[*victim].hand;
            let stolen = if victim_hand.is_empty() {
                None
            } else {
                let k = next.rng.random_range(0..victim_hand.len());
                Some(next.players[*victim].hand.remove(k))
            };
            if let Some(c) = stolen {
                next.players[player].hand.push(c);
            }
            next.steals.push(StealRecord {
                round: next.round_number,
                thief: player,
                victim: *victim,
                card: stolen,
            });
        }
    }

    match next.next_turn_after(player) {
        Some(p) => next.turn = p,
        None => {
            next.phase = Phase::BetweenRounds;
            next.turn = 0;
        }
    }
    Ok(next)
}

/// Evaluates a finished round: returns the pre-measurement state, the single
/// sampled outcome, and the game with carry values updated and either the
/// next hands dealt or the game finished.
pub fn end_round(g: &GameState) -> Result<(StateVector, Outcome, GameState), GameError> {
    expect_phase(g, Phase::BetweenRounds)?;
    let pre = g.pre_measurement_state()?;
    let mut next = g.clone();
    let (outcome, _) = measure_all(&pre, &mut next.rng);
    let initial = next.carry_values();
    for (p, &v) in next.players.iter_mut().zip(outcome.values()) {
        p.carry_value = v;
    }
    let circuit = std::mem::take(&mut next.round_circuit);
    next.discard
        .extend(circuit.iter().map(|c| Card::Gate(c.op.gate)));
    next.rounds.push(RoundRecord {
        round: next.round_number,
        initial,
        circuit,
        outcome: outcome.clone(),
    });
    if next.round_number >= next.config.num_rounds {
        next.phase = Phase::Finished;
    } else {
        next.round_number += 1;
        next.deal();
        next.phase = Phase::InRound;
        next.turn = 0;
        if next.players[0].hand.is_empty() {
            // only reachable with a short custom deck
            match next.next_turn_after(0) {
                Some(p) => next.turn = p,
                None => next.phase = Phase::BetweenRounds,
            }
        }
    }
    Ok((pre, outcome, next))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "style", rename_all = "snake_case")]
pub enum ScoreResult {
    /// Winners are the players holding the highest value; more than one
    /// means a shared win.
    Competitive { winners: Vec<usize>, shared: bool },
    /// Group score out of `num_players · (d − 1)`.
    Cooperative { total: u32, max: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Score {
    pub values: Vec<u8>,
    pub result: ScoreResult,
}

/// Scores carry values under a play style.
pub fn score_values(values: &[u8], style: Style, dim: Dim) -> Score {
    let result = match style {
        Style::Competitive => {
            let best = values.iter().copied().max().unwrap_or(0);
            let winners: Vec<usize> = values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v == best)
                .map(|(i, _)| i)
                .collect();
            ScoreResult::Competitive {
                shared: winners.len() > 1,
                winners,
            }
        }
        Style::Cooperative => ScoreResult::Cooperative {
            total: values.iter().map(|&v| v as u32).sum(),
            max: values.len() as u32 * (dim.get() as u32 - 1),
        },
    };
    Score {
        values: values.to_vec(),
        result,
    }
}

/// Final score; only valid once the game is finished.
pub fn score(g: &GameState) -> Result<Score, GameError> {
    expect_phase(g, Phase::Finished)?;
    Ok(score_values(&g.carry_values(), g.config.style, g.config.dim()))
}

/// One mutation of a game, as recorded in a session's event log.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum GameEvent {
    Play {
        player: usize,
        #[serde(rename = "move")]
        mv: Move,
    },
    EndRound,
}

/// Applies one event.
pub fn apply_event(g: &GameState, event: &GameEvent) -> Result<GameState, GameError> {
    match event {
        GameEvent::Play { player, mv } => play_card(g, *player, mv),
        GameEvent::EndRound => end_round(g).map(|(_, _, next)| next),
    }
}

/// Config plus the ordered events applied to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventLog {
    pub config: GameConfig,
    pub events: Vec<GameEvent>,
}

impl EventLog {
    pub fn replay(&self) -> Result<GameState, GameError> {
        replay(&self.config, &self.events)
    }
}

/// Rebuilds a game from its config and event log.
pub fn replay(config: &GameConfig, events: &[GameEvent]) -> Result<GameState, GameError> {
    events
        .iter()
        .try_fold(new_game(config.clone())?, |g, e| apply_event(&g, e))
}
