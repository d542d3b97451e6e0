use std::path::Path;

use qcards_core::circuit_io::{parse_riddle, print_riddle};
use qcards_core::riddle::{builtin_riddle, MAX_SEARCH_DEPTH};
use qcards_core::{builtin_riddles, check_solution, format_state, solve, GateKind, GateOp, Riddle};
use serde_json::json;

use crate::error::{read_file, CliError};

/// A built-in riddle id, or else a path to a `.riddle` file.
pub fn load(riddle: &str) -> Result<Riddle, CliError> {
    if let Ok(id) = riddle.parse::<u32>() {
        return builtin_riddle(id).map_err(|e| CliError::input(e.code(), e.to_string()));
    }
    let path = Path::new(riddle);
    parse_riddle(&read_file(path)?)
        .map_err(|e| CliError::input("parse_error", format!("{}: {e}", path.display())))
}

/// Reads moves such as `H1 1 CX 1 2`, either as separate words or quoted
/// groups, with 1-based qudits.
pub fn parse_moves(words: &[String]) -> Result<Vec<GateOp>, CliError> {
    let tokens: Vec<&str> = words.iter().flat_map(|w| w.split_whitespace()).collect();
    let bad = |m: String| CliError::input("bad_move", m);
    let mut ops = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let gate: GateKind = tokens[i]
            .parse()
            .map_err(|_| bad(format!("unknown card `{}`", tokens[i])))?;
        let args = tokens
            .get(i + 1..i + 1 + gate.arity())
            .ok_or_else(|| bad(format!("{gate} needs {} qudit number(s)", gate.arity())))?;
        let targets = args
            .iter()
            .map(|a| match a.parse::<usize>() {
                Ok(q) if q >= 1 => Ok(q - 1),
                _ => Err(bad(format!("`{a}` is not a qudit number (1-based)"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        ops.push(GateOp { gate, targets });
        i += 1 + gate.arity();
    }
    Ok(ops)
}

fn lines(ops: &[GateOp]) -> String {
    ops.iter().map(|op| format!("{op}\n")).collect()
}

pub fn list(json: bool) -> String {
    let riddles = builtin_riddles();
    if json {
        let rows: Vec<_> = riddles
            .iter()
            .map(|r| {
                json!({
                    "id": r.id,
                    "difficulty": r.difficulty,
                    "dim": r.dim,
                    "num_qudits": r.num_qudits,
                    "initial": r.initial,
                    "allowed": r.allowed,
                    "max_cards": r.max_cards,
                    "goal": r.goal.to_string(),
                })
            })
            .collect();
        return crate::json_text(&rows);
    }
    let mut out = String::new();
    for r in &riddles {
        let cards: Vec<&str> = r.allowed.iter().map(|k| k.token()).collect();
        out.push_str(&format!(
            "{}  {:<6}  d={}  qudits={}  max={}  cards={}  goal: {}\n",
            r.id,
            r.difficulty.to_string(),
            r.dim,
            r.num_qudits,
            r.max_cards,
            cards.join(","),
            r.goal
        ));
    }
    out
}

pub fn show(riddle: &str) -> Result<String, CliError> {
    Ok(print_riddle(&load(riddle)?))
}

pub fn attempt(riddle: &str, moves: &[String], json: bool) -> Result<String, CliError> {
    let r = load(riddle)?;
    let ops = parse_moves(moves)?;
    let (solved, end) =
        check_solution(&r, &ops).map_err(|e| CliError::input(e.code(), e.to_string()))?;
    if json {
        let mut out = json!({"solved": solved, "state": format_state(&end)});
        if solved {
            out["explanation"] = r.explanation.clone().into();
        }
        return Ok(crate::json_text(&out));
    }
    let mut out = String::from(if solved { "solved\n" } else { "not solved\n" });
    out.push_str("final state:\n");
    out.push_str(&format_state(&end));
    if solved {
        out.push('\n');
        out.push_str(&r.explanation);
        out.push('\n');
    } else {
        out.push_str(&format!("goal: {}\n", r.goal));
    }
    Ok(out)
}

pub fn solve_cmd(riddle: &str, max_depth: Option<usize>, json: bool) -> Result<String, CliError> {
    let r = load(riddle)?;
    let depth = max_depth.unwrap_or(MAX_SEARCH_DEPTH);
    let solution = solve(&r, depth)
        .map_err(|e| CliError::input(e.code(), e.to_string()))?
        .ok_or_else(|| {
            CliError::runtime(
                "no_solution",
                format!("riddle {} has no solution within {} cards", r.id, depth.min(r.max_cards)),
            )
        })?;
    if json {
        let display: Vec<String> = solution.iter().map(ToString::to_string).collect();
        return Ok(crate::json_text(&json!({"solution": solution, "display": display})));
    }
    Ok(lines(&solution))
}
