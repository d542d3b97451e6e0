//! `.riddle` files: one TOML document per riddle.
//!
//! ```toml
//! id = 7
//! dim = 2
//! qudits = 2
//! initial = [0, 0]
//! allowed = ["H1", "CX", "X1"]
//! max_cards = 3
//! difficulty = "medium"
//! explanation = "..."
//!
//! [goal]
//! type = "correlated"   # or target_state, basis, uniform, qudit_always
//! shift = 1
//! ```
//!
//! Qudit numbers in files are 1-based. `target_state` amplitudes are
//! `[re, im]` pairs in basis order and are renormalized if their norm is
//! within 1e-6 of one.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gates::GateKind;
use crate::qudit::{basis_state, Dim, StateVector, C64};
use crate::riddle::{Difficulty, Goal, OutcomePredicate, Riddle};

const AUTHOR_NORM_TOL: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RiddleFileError {
    #[error("riddle file syntax: {0}")]
    Syntax(String),
    #[error("riddle file field `{field}`: {message}")]
    Field { field: &'static str, message: String },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RiddleDoc {
    id: u32,
    dim: u8,
    qudits: usize,
    initial: Vec<u8>,
    allowed: Vec<GateKind>,
    max_cards: usize,
    difficulty: Difficulty,
    explanation: String,
    goal: GoalDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum GoalDoc {
    TargetState { amplitudes: Vec<[f64; 2]> },
    Basis { values: Vec<u8> },
    Uniform,
    Correlated { shift: u8 },
    QuditAlways { qudit: usize, value: u8 },
}

fn field(field: &'static str, message: impl ToString) -> RiddleFileError {
    RiddleFileError::Field {
        field,
        message: message.to_string(),
    }
}

pub fn parse_riddle(text: &str) -> Result<Riddle, RiddleFileError> {
    let doc: RiddleDoc = toml::from_str(text).map_err(|e| RiddleFileError::Syntax(e.to_string()))?;
    let dim = Dim::new(doc.dim).map_err(|e| field("dim", e))?;
    let goal = match doc.goal {
        GoalDoc::TargetState { amplitudes } => {
            let amps: Vec<C64> = amplitudes.iter().map(|[re, im]| C64::new(*re, *im)).collect();
            let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > AUTHOR_NORM_TOL {
                return Err(field("goal.amplitudes", format!("norm {norm} is not 1")));
            }
            let amps = amps.into_iter().map(|a| a / norm).collect();
            Goal::TargetState(
                StateVector::from_amplitudes(dim, doc.qudits, amps)
                    .map_err(|e| field("goal.amplitudes", e))?,
            )
        }
        GoalDoc::Basis { values } => {
            Goal::TargetState(basis_state(dim, &values).map_err(|e| field("goal.values", e))?)
        }
        GoalDoc::Uniform => Goal::Outcome(OutcomePredicate::Uniform),
        GoalDoc::Correlated { shift } => Goal::Outcome(OutcomePredicate::Correlated { shift }),
        GoalDoc::QuditAlways { qudit, value } => {
            if qudit == 0 {
                return Err(field("goal.qudit", "qudits are numbered from 1"));
            }
            Goal::Outcome(OutcomePredicate::QuditAlways {
                qudit: qudit - 1,
                value,
            })
        }
    };
    let riddle = Riddle {
        id: doc.id,
        dim,
        num_qudits: doc.qudits,
        initial: doc.initial,
        allowed: doc.allowed,
        goal,
        max_cards: doc.max_cards,
        difficulty: doc.difficulty,
        explanation: doc.explanation,
    };
    riddle.validate().map_err(|e| field("riddle", e))?;
    Ok(riddle)
}

pub fn print_riddle(r: &Riddle) -> String {
    let goal = match &r.goal {
        Goal::TargetState(s) => GoalDoc::TargetState {
            amplitudes: s.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
        },
        Goal::Outcome(OutcomePredicate::Uniform) => GoalDoc::Uniform,
        Goal::Outcome(OutcomePredicate::Correlated { shift }) => GoalDoc::Correlated { shift: *shift },
        Goal::Outcome(OutcomePredicate::QuditAlways { qudit, value }) => GoalDoc::QuditAlways {
            qudit: qudit + 1,
            value: *value,
        },
    };
    let doc = RiddleDoc {
        id: r.id,
        dim: r.dim.get(),
        qudits: r.num_qudits,
        initial: r.initial.clone(),
        allowed: r.allowed.clone(),
        max_cards: r.max_cards,
        difficulty: r.difficulty,
        explanation: r.explanation.clone(),
        goal,
    };
    toml::to_string(&doc).expect("riddle documents always serialize")
}
