//! Qudit statevector engine and rules for a high-dimensional quantum card game.
//!
//! Players hold gate cards (`X1`, `X2`, `Y`, `Z`, `H1`, `H2`, `CX`) and a
//! `STEAL` action. Every played gate acts on a shared register with one
//! qubit (easy/2d) or qutrit (3d) per player; at the end of each round the
//! register is measured once and each player's digit carries into the next
//! round.
//!
//! * [`qudit`]: statevector, gate application, Born-rule measurement.
//! * [`gates`]: card unitaries and per-version card sets.
//! * [`game`]: the turn-based game state machine and scoring.
//! * [`riddle`]: single-player riddles and a shortest-solution search.
//! * [`circuit_io`]: `.qcirc` circuits, `.riddle` files, state display and
//!   game snapshots.

pub mod circuit_io;
pub mod game;
pub mod gates;
pub mod qudit;
pub mod riddle;

pub use circuit_io::{format_state, parse_circuit, print_circuit, CircuitDoc, ParseError};
pub use game::{
    end_round, legal_moves, new_game, play_card, score, GameConfig, GameError, GameEvent,
    GameState, Move, Phase, Style,
};
pub use gates::{card_set, gate_matrix, Card, CardSet, GateKind, GateMatrix, GateOp, Version};
pub use qudit::{
    apply_gate, basis_state, equal_up_to_global_phase, measure_all, measure_subset,
    probabilities, sample, Dim, Histogram, Outcome, QuditError, StateVector, C64,
};
pub use riddle::{builtin_riddles, check_solution, solve, Goal, Riddle, RiddleError};

use thiserror::Error;

/// Failure while building or evaluating a circuit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Qudit(#[from] QuditError),
    #[error(transparent)]
    Gate(#[from] gates::GateError),
}
