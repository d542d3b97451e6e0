use axum::body::Bytes;
use axum::extract::Path;
use axum::response::Response;
use qcards_core::circuit_io::decode;
use qcards_core::riddle::{builtin_riddle, solve_from, Difficulty, MAX_SEARCH_DEPTH};
use qcards_core::{builtin_riddles, check_solution, format_state, Dim, GateKind, GateOp, Riddle};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::canonical;
use crate::error::ApiError;
use crate::sandbox::{measure_qudits, PartialMeasurement};

#[derive(Serialize)]
struct RiddleSummary {
    id: u32,
    difficulty: Difficulty,
    dim: Dim,
    num_qudits: usize,
    initial: Vec<u8>,
    allowed: Vec<GateKind>,
    max_cards: usize,
    goal: String,
}

impl From<&Riddle> for RiddleSummary {
    fn from(r: &Riddle) -> Self {
        RiddleSummary {
            id: r.id,
            difficulty: r.difficulty,
            dim: r.dim,
            num_qudits: r.num_qudits,
            initial: r.initial.clone(),
            allowed: r.allowed.clone(),
            max_cards: r.max_cards,
            goal: r.goal.to_string(),
        }
    }
}

/// `GET /v1/riddles`
pub async fn list() -> Response {
    let rows: Vec<RiddleSummary> = builtin_riddles().iter().map(RiddleSummary::from).collect();
    canonical(&rows)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureRequest {
    /// 1-based.
    qudits: Vec<usize>,
    #[serde(default)]
    seed: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AttemptRequest {
    moves: Vec<GateOp>,
    #[serde(default)]
    measure: Option<MeasureRequest>,
}

#[derive(Serialize)]
struct AttemptResponse {
    solved: bool,
    state: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    explanation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    measurement: Option<PartialMeasurement>,
}

fn body_text(body: &Bytes) -> Result<&str, ApiError> {
    std::str::from_utf8(body).map_err(|_| ApiError::bad_request("body is not UTF-8"))
}

/// `POST /v1/riddles/{id}/attempt`
pub async fn attempt(Path(id): Path<u32>, body: Bytes) -> Result<Response, ApiError> {
    let riddle = builtin_riddle(id)?;
    let req: AttemptRequest = decode(body_text(&body)?)?;
    let (solved, end) = check_solution(&riddle, &req.moves)?;
    let measurement = req
        .measure
        .map(|m| measure_qudits(&end, &m.qudits, &mut ChaCha8Rng::seed_from_u64(m.seed)))
        .transpose()?;
    Ok(canonical(&AttemptResponse {
        solved,
        state: format_state(&end),
        explanation: solved.then(|| riddle.explanation.clone()),
        measurement,
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HintRequest {
    #[serde(default)]
    moves: Vec<GateOp>,
}

#[derive(Serialize)]
struct HintResponse {
    /// Next card of a shortest continuation; absent when the prefix is
    /// already a solution or cannot be completed.
    #[serde(skip_serializing_if = "Option::is_none")]
    next: Option<GateOp>,
    /// Cards still needed after the prefix, when it can be completed.
    #[serde(skip_serializing_if = "Option::is_none")]
    remaining: Option<usize>,
    solvable: bool,
}

/// `POST /v1/riddles/{id}/hint`: body lists the cards played so far.
pub async fn hint(Path(id): Path<u32>, body: Bytes) -> Result<Response, ApiError> {
    let riddle = builtin_riddle(id)?;
    let req: HintRequest = if body.is_empty() {
        HintRequest { moves: Vec::new() }
    } else {
        decode(body_text(&body)?)?
    };
    let rest = solve_from(&riddle, &req.moves, MAX_SEARCH_DEPTH)?;
    Ok(canonical(&HintResponse {
        next: rest.as_ref().and_then(|r| r.first().cloned()),
        remaining: rest.as_ref().map(Vec::len),
        solvable: rest.is_some(),
    }))
}
