use std::path::Path;

use qcards_core::circuit_io::decode;
use qcards_core::game::{EventLog, ScoreResult};
use qcards_core::{score, Outcome, Phase};
use serde_json::json;

use crate::error::{read_file, CliError};

/// Replays a saved event log and reports each round and the final score.
pub fn run(file: &Path, json: bool) -> Result<String, CliError> {
    let log: EventLog = decode(&read_file(file)?)
        .map_err(|e| CliError::input("parse_error", format!("{}: {e}", file.display())))?;
    let g = log
        .replay()
        .map_err(|e| CliError::input(e.code(), format!("{}: {e}", file.display())))?;
    let score = match g.phase() {
        Phase::Finished => Some(score(&g).expect("finished game scores")),
        _ => None,
    };
    if json {
        let rounds: Vec<_> = g
            .rounds()
            .iter()
            .map(|r| json!({"round": r.round, "initial": r.initial, "outcome": r.outcome}))
            .collect();
        return Ok(crate::json_text(&json!({
            "phase": g.phase(),
            "rounds": rounds,
            "carry_values": g.carry_values(),
            "score": score,
        })));
    }
    let mut out = String::new();
    for r in g.rounds() {
        out.push_str(&format!(
            "round {}: {} -> {}\n",
            r.round,
            Outcome(r.initial.clone()),
            r.outcome
        ));
    }
    let carries: Vec<String> = g.carry_values().iter().map(u8::to_string).collect();
    out.push_str(&format!("carry values: {}\n", carries.join(" ")));
    match score.map(|s| s.result) {
        None => out.push_str(&format!("game not finished (phase {})\n", g.phase())),
        Some(ScoreResult::Competitive { winners, shared }) => {
            let names: Vec<String> = winners.iter().map(|w| (w + 1).to_string()).collect();
            if shared {
                out.push_str(&format!("shared win: players {}\n", names.join(", ")));
            } else {
                out.push_str(&format!("winner: player {}\n", names[0]));
            }
        }
        Some(ScoreResult::Cooperative { total, max }) => {
            out.push_str(&format!("group score: {total} of {max}\n"));
        }
    }
    Ok(out)
}
