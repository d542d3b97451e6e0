//! Single-player riddles: reach a goal state or outcome pattern from a
//! fixed start using a limited multiset of cards.

mod builtin;
mod solver;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gates::{run_ops, GateKind, GateOp};
use crate::qudit::{
    basis_state, equal_up_to_global_phase, marginal, Dim, Outcome, StateVector, STATE_EQ_TOL,
};

pub use builtin::builtin_riddles;
pub use solver::{solve, solve_from, MAX_SEARCH_DEPTH};

/// Probabilities within this of their target count as exact.
pub const PREDICATE_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Difficulty {
    Easy,
    Medium,
    Hard,
}

impl fmt::Display for Difficulty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Difficulty::Easy => "easy",
            Difficulty::Medium => "medium",
            Difficulty::Hard => "hard",
        })
    }
}

/// Named condition on the exact outcome distribution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum OutcomePredicate {
    /// Every basis outcome equally likely.
    Uniform,
    /// Every qudit always reads qudit 1's value plus `shift` (mod d), and
    /// qudit 1 itself is uniformly random. `shift = 0` is "all always equal".
    Correlated { shift: u8 },
    /// Qudit `qudit` (0-based) always reads `value`.
    QuditAlways { qudit: usize, value: u8 },
}

impl OutcomePredicate {
    pub fn holds(&self, state: &StateVector) -> bool {
        let d = state.dim().get();
        let probs = state.probability_vector();
        match *self {
            OutcomePredicate::Uniform => {
                let p = 1.0 / probs.len() as f64;
                probs.iter().all(|&q| (q - p).abs() <= PREDICATE_TOL)
            }
            OutcomePredicate::Correlated { shift } => {
                let patterned = probs.iter().enumerate().all(|(i, &p)| {
                    if p <= PREDICATE_TOL {
                        return true;
                    }
                    let o = Outcome::from_index(state.dim(), state.num_qudits(), i);
                    let first = o.values()[0];
                    o.values()
                        .iter()
                        .skip(1)
                        .all(|&v| v == (first + shift) % d)
                });
                let first = marginal(state, &[0]).expect("qudit 0 exists");
                let even = first
                    .iter()
                    .all(|&p| (p - 1.0 / d as f64).abs() <= PREDICATE_TOL);
                patterned && even
            }
            OutcomePredicate::QuditAlways { qudit, value } => {
                qudit < state.num_qudits()
                    && value < d
                    && (marginal(state, &[qudit]).expect("index checked")[value as usize] - 1.0)
                        .abs()
                        <= PREDICATE_TOL
            }
        }
    }
}

impl fmt::Display for OutcomePredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutcomePredicate::Uniform => f.write_str("every outcome equally likely"),
            OutcomePredicate::Correlated { shift: 0 } => {
                f.write_str("all qudits always equal, each value equally likely")
            }
            OutcomePredicate::Correlated { shift } => write!(
                f,
                "every other qudit always reads qudit 1 + {shift}, each value equally likely"
            ),
            OutcomePredicate::QuditAlways { qudit, value } => {
                write!(f, "qudit {} always measures {value}", qudit + 1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Goal {
    /// Matched up to global phase.
    TargetState(StateVector),
    Outcome(OutcomePredicate),
}

impl Goal {
    pub fn is_met(&self, state: &StateVector) -> bool {
        match self {
            Goal::TargetState(target) => {
                equal_up_to_global_phase(state, target, STATE_EQ_TOL).unwrap_or(false)
            }
            Goal::Outcome(p) => p.holds(state),
        }
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Goal::TargetState(s) => {
                let rows = crate::circuit_io::format_state(s);
                write!(f, "reach the state {}", rows.trim_end().replace('\n', " + "))
            }
            Goal::Outcome(p) => p.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Riddle {
    pub id: u32,
    pub dim: Dim,
    pub num_qudits: usize,
    pub initial: Vec<u8>,
    /// Multiset: each entry is one available card.
    pub allowed: Vec<GateKind>,
    pub goal: Goal,
    pub max_cards: usize,
    pub difficulty: Difficulty,
    pub explanation: String,
}

impl Riddle {
    pub fn initial_state(&self) -> Result<StateVector, RiddleError> {
        Ok(basis_state(self.dim, &self.initial).map_err(crate::Error::from)?)
    }

    /// Count of each allowed card, keyed by kind.
    pub fn allowed_counts(&self) -> Vec<(GateKind, usize)> {
        let mut kinds: Vec<GateKind> = self.allowed.clone();
        kinds.sort_by_key(|k| k.token());
        kinds.dedup();
        kinds
            .into_iter()
            .map(|k| (k, self.allowed.iter().filter(|&&a| a == k).count()))
            .collect()
    }

    pub fn validate(&self) -> Result<(), RiddleError> {
        let bad = |m: &str| Err(RiddleError::Invalid(m.to_string()));
        if self.max_cards == 0 {
            return bad("max_cards must be at least 1");
        }
        if self.initial.len() != self.num_qudits {
            return bad("initial values must list one digit per qudit");
        }
        self.initial_state()?;
        if let Some(k) = self.allowed.iter().find(|k| !k.valid_for(self.dim)) {
            return Err(RiddleError::Invalid(format!("{k} is not defined for d={}", self.dim)));
        }
        if self.allowed.contains(&GateKind::CX) && self.num_qudits < 2 {
            return bad("CX needs at least two qudits");
        }
        match &self.goal {
            Goal::TargetState(s) if s.dim() != self.dim || s.num_qudits() != self.num_qudits => {
                bad("goal state shape does not match the riddle")
            }
            Goal::Outcome(OutcomePredicate::QuditAlways { qudit, value })
                if *qudit >= self.num_qudits || *value >= self.dim.get() =>
            {
                bad("predicate refers to a missing qudit or value")
            }
            Goal::Outcome(OutcomePredicate::Correlated { shift }) if *shift >= self.dim.get() => {
                bad("shift out of range")
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RiddleError {
    #[error("card {0} is not allowed here (or used more often than available)")]
    DisallowedCard(GateKind),
    #[error("solution uses {got} cards, at most {max} allowed")]
    TooManyCards { max: usize, got: usize },
    #[error("invalid target for `{0}`")]
    InvalidTarget(String),
    #[error("invalid riddle: {0}")]
    Invalid(String),
    #[error("no riddle with id {0}")]
    UnknownRiddle(u32),
    #[error(transparent)]
    Engine(#[from] crate::Error),
}

impl RiddleError {
    pub fn code(&self) -> &'static str {
        match self {
            RiddleError::DisallowedCard(_) => "disallowed_card",
            RiddleError::TooManyCards { .. } => "too_many_cards",
            RiddleError::InvalidTarget(_) => "invalid_target",
            RiddleError::Invalid(_) => "invalid_riddle",
            RiddleError::UnknownRiddle(_) => "unknown_riddle",
            RiddleError::Engine(_) => "engine_error",
        }
    }
}

pub type Solution = Vec<GateOp>;

/// Checks that `moves` only spends available cards on valid targets.
pub(crate) fn check_moves(r: &Riddle, moves: &[GateOp]) -> Result<(), RiddleError> {
    if moves.len() > r.max_cards {
        return Err(RiddleError::TooManyCards {
            max: r.max_cards,
            got: moves.len(),
        });
    }
    let mut remaining = r.allowed.clone();
    for op in moves {
        let i = remaining
            .iter()
            .position(|&k| k == op.gate)
            .ok_or(RiddleError::DisallowedCard(op.gate))?;
        remaining.swap_remove(i);
        let distinct = op.targets.len() < 2 || op.targets[0] != op.targets[1];
        if op.targets.len() != op.gate.arity()
            || op.targets.iter().any(|&t| t >= r.num_qudits)
            || !distinct
        {
            return Err(RiddleError::InvalidTarget(op.to_string()));
        }
    }
    Ok(())
}

/// Runs `s` from the riddle's start and tests the goal exactly (no sampling).
pub fn check_solution(r: &Riddle, s: &[GateOp]) -> Result<(bool, StateVector), RiddleError> {
    check_moves(r, s)?;
    let end = run_ops(&r.initial_state()?, s)?;
    Ok((r.goal.is_met(&end), end))
}

/// Looks up a built-in riddle by id.
pub fn builtin_riddle(id: u32) -> Result<Riddle, RiddleError> {
    builtin_riddles()
        .into_iter()
        .find(|r| r.id == id)
        .ok_or(RiddleError::UnknownRiddle(id))
}

#[cfg(test)]
mod tests;
