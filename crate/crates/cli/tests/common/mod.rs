#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use qcards_core::circuit_io::encode;
use qcards_core::game::EventLog;
use qcards_core::{legal_moves, new_game, GameConfig, GameEvent, Phase};

pub fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

pub fn qcards(args: &[&str]) -> Output {
    qcards_env(args, &[])
}

pub fn qcards_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qcards"));
    cmd.args(args).env_remove("QCARDS_SEED");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("qcards runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// A whole game played by always taking move `step * stride`.
pub fn scripted_log(config: GameConfig, stride: usize) -> EventLog {
    let mut g = new_game(config.clone()).unwrap();
    let mut events = Vec::new();
    let mut step = 0;
    while g.phase() != Phase::Finished {
        let e = if g.phase() == Phase::BetweenRounds {
            GameEvent::EndRound
        } else {
            let moves = legal_moves(&g, g.turn()).unwrap();
            GameEvent::Play {
                player: g.turn(),
                mv: moves[(step * stride) % moves.len()].clone(),
            }
        };
        g = qcards_core::game::apply_event(&g, &e).unwrap();
        events.push(e);
        step += 1;
    }
    EventLog { config, events }
}

pub fn write_log(dir: &tempfile::TempDir, log: &EventLog) -> String {
    let path = dir.path().join("game.json");
    std::fs::write(&path, encode(log)).unwrap();
    path.display().to_string()
}
