use std::path::Path;

use qcards_core::{format_state, measure_all, measure_subset, parse_circuit, probabilities, sample};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{read_file, CliError};

pub struct SimulateArgs<'a> {
    pub file: &'a Path,
    pub shots: Option<u64>,
    pub seed: Option<u64>,
    /// `Some(vec![])` measures every qudit, otherwise the listed 1-based ones.
    pub measure: Option<Vec<usize>>,
    pub json: bool,
}

/// Evaluates a `.qcirc` file. Shots are drawn before the single measurement,
/// both from one stream seeded with `seed`.
pub fn run(args: SimulateArgs<'_>) -> Result<String, CliError> {
    let text = read_file(args.file)?;
    let doc = parse_circuit(&text)
        .map_err(|e| CliError::input("parse_error", format!("{}: {e}", args.file.display())))?;
    let state = doc
        .evaluate()
        .map_err(|e| CliError::runtime("engine_error", e.to_string()))?;
    let seed = args.seed.unwrap_or_else(rand::random);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let histogram = match args.shots {
        Some(0) => return Err(CliError::input("bad_shots", "--shots must be at least 1")),
        Some(n) => Some(sample(&state, n, &mut rng).expect("shots checked")),
        None => None,
    };
    let n = state.num_qudits();
    let measurement = match &args.measure {
        None => None,
        Some(qudits) if qudits.is_empty() => {
            let (outcome, _) = measure_all(&state, &mut rng);
            Some(((1..=n).collect::<Vec<_>>(), outcome.0, None))
        }
        Some(qudits) => {
            if let Some(&q) = qudits.iter().find(|&&q| q == 0 || q > n) {
                return Err(CliError::input("bad_qudit", format!("qudit {q} out of range 1..={n}")));
            }
            let indices: Vec<usize> = qudits.iter().map(|q| q - 1).collect();
            let (values, after) = measure_subset(&state, &indices, &mut rng)
                .map_err(|e| CliError::input("bad_qudit", e.to_string()))?;
            Some((qudits.clone(), values, Some(after)))
        }
    };

    if args.json {
        let mut out = json!({
            "seed": seed,
            "state": format_state(&state),
            "probabilities": probabilities(&state)
                .into_iter()
                .map(|(o, p)| json!({"outcome": o, "probability": p}))
                .collect::<Vec<_>>(),
        });
        if let Some(h) = &histogram {
            out["histogram"] = serde_json::to_value(h).expect("histogram serializes");
        }
        if let Some((qudits, values, after)) = &measurement {
            let mut m = json!({"qudits": qudits, "values": values});
            if let Some(after) = after {
                m["state"] = Value::String(format_state(after));
            }
            out["measurement"] = m;
        }
        return Ok(crate::json_text(&out));
    }

    let mut out = format_state(&state);
    if let Some(h) = &histogram {
        out.push_str(&format!("\nhistogram: {} shots, seed {seed}\n", h.shots));
        for (o, c) in &h.counts {
            out.push_str(&format!("{o}  {c}  {:.4}\n", *c as f64 / h.shots as f64));
        }
    }
    if let Some((qudits, values, after)) = &measurement {
        match after {
            None => out.push_str(&format!(
                "\noutcome: {} (seed {seed})\n",
                qcards_core::Outcome(values.clone())
            )),
            Some(after) => {
                let pairs: Vec<String> = qudits
                    .iter()
                    .zip(values)
                    .map(|(q, v)| format!("qudit {q} = {v}"))
                    .collect();
                out.push_str(&format!("\noutcome: {} (seed {seed})\n", pairs.join(", ")));
                out.push_str(&format_state(after));
            }
        }
    }
    Ok(out)
}
