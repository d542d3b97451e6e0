use axum::body::Bytes;
use axum::response::Response;
use qcards_core::circuit_io::decode;
use qcards_core::{format_state, measure_subset, parse_circuit, probabilities, sample, Histogram, Outcome, StateVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::canonical;
use crate::error::ApiError;

pub const MAX_SHOTS: u64 = 1_000_000;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SandboxRequest {
    /// `.qcirc` text.
    circuit: String,
    #[serde(default)]
    shots: Option<u64>,
    #[serde(default)]
    seed: Option<u64>,
    /// 1-based qudits to measure once after the circuit.
    #[serde(default)]
    measure: Option<Vec<usize>>,
}

#[derive(Serialize)]
pub struct ProbabilityRow {
    pub outcome: Outcome,
    pub probability: f64,
}

#[derive(Serialize)]
pub struct PartialMeasurement {
    /// 1-based, as requested.
    pub qudits: Vec<usize>,
    pub values: Vec<u8>,
    pub state: String,
}

#[derive(Serialize)]
struct SandboxResponse {
    seed: u64,
    state: String,
    probabilities: Vec<ProbabilityRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    histogram: Option<Histogram>,
    #[serde(skip_serializing_if = "Option::is_none")]
    measurement: Option<PartialMeasurement>,
}

pub fn probability_rows(state: &StateVector) -> Vec<ProbabilityRow> {
    probabilities(state)
        .into_iter()
        .map(|(outcome, probability)| ProbabilityRow {
            outcome,
            probability,
        })
        .collect()
}

/// Measures the 1-based `qudits` of `state` once.
pub fn measure_qudits(
    state: &StateVector,
    qudits: &[usize],
    rng: &mut ChaCha8Rng,
) -> Result<PartialMeasurement, ApiError> {
    if qudits.contains(&0) {
        return Err(ApiError::bad_request("qudits are numbered from 1"));
    }
    let indices: Vec<usize> = qudits.iter().map(|q| q - 1).collect();
    let (values, collapsed) = measure_subset(state, &indices, rng)?;
    Ok(PartialMeasurement {
        qudits: qudits.to_vec(),
        values,
        state: format_state(&collapsed),
    })
}

/// `POST /v1/sandbox`: evaluates a circuit without any game session. The
/// histogram and the partial measurement draw from one seeded stream,
/// histogram first.
pub async fn evaluate(body: Bytes) -> Result<Response, ApiError> {
    let text = std::str::from_utf8(&body).map_err(|_| ApiError::bad_request("body is not UTF-8"))?;
    let req: SandboxRequest = decode(text)?;
    let doc = parse_circuit(&req.circuit)?;
    let state = doc.evaluate()?;
    let seed = req.seed.unwrap_or_else(rand::random);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let histogram = match req.shots {
        Some(shots) if shots > MAX_SHOTS => {
            return Err(ApiError::bad_request(format!("at most {MAX_SHOTS} shots")));
        }
        Some(shots) => Some(sample(&state, shots, &mut rng)?),
        None => None,
    };
    let measurement = req
        .measure
        .map(|qudits| measure_qudits(&state, &qudits, &mut rng))
        .transpose()?;
    Ok(canonical(&SandboxResponse {
        seed,
        state: format_state(&state),
        probabilities: probability_rows(&state),
        histogram,
        measurement,
    }))
}
