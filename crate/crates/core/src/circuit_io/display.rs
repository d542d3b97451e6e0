//! Human-readable amplitude listing, e.g. `(0.7071,0.0000) |0,0>`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::qudit::{Outcome, StateVector, C64, PROB_FLOOR};

/// Fixed-point with four decimals; values that round to zero print unsigned.
fn fixed4(x: f64) -> String {
    let s = format!("{x:.4}");
    if s == "-0.0000" {
        "0.0000".to_string()
    } else {
        s
    }
}

/// One line per amplitude with `|a|² > 1e-12`, ascending by basis index.
pub fn format_state(state: &StateVector) -> String {
    let mut out = String::new();
    for (i, a) in state.amplitudes().iter().enumerate() {
        if a.norm_sqr() <= PROB_FLOOR {
            continue;
        }
        let label = Outcome::from_index(state.dim(), state.num_qudits(), i);
        writeln!(out, "({},{}) {}", fixed4(a.re), fixed4(a.im), label).unwrap();
    }
    out
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: malformed amplitude row `{text}`")]
pub struct StateLineError {
    pub line: usize,
    pub text: String,
}

/// Reads back the rows produced by [`format_state`].
pub fn parse_state_lines(text: &str) -> Result<Vec<(C64, Outcome)>, StateLineError> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let bad = || StateLineError {
            line: i + 1,
            text: raw.to_string(),
        };
        let (amp, ket) = line.split_once(' ').ok_or_else(bad)?;
        let (re, im) = amp
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .and_then(|s| s.split_once(','))
            .ok_or_else(bad)?;
        let re: f64 = re.parse().map_err(|_| bad())?;
        let im: f64 = im.parse().map_err(|_| bad())?;
        let digits = ket
            .trim()
            .strip_prefix('|')
            .and_then(|s| s.strip_suffix('>'))
            .ok_or_else(bad)?
            .split(',')
            .map(|d| d.parse::<u8>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        rows.push((C64::new(re, im), Outcome(digits)));
    }
    Ok(rows)
}
