mod common;

use std::io::{Read, Write};
use std::net::{TcpListener, TcpStream};
use std::time::Duration;

use common::{data, qcards, qcards_env, scripted_log, stderr, stdout, write_log};
use qcards_core::{score, GameConfig, Style, Version};
use serde_json::Value;

#[test]
fn simulate_prints_the_state() {
    let o = qcards(&["simulate", &data("interference.qcirc")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "(1.0000,0.0000) |1>\n");
}

#[test]
fn simulate_bell_histogram_has_only_matching_rows() {
    let o = qcards(&["simulate", &data("bell.qcirc"), "--shots", "1000", "--seed", "1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().filter(|l| l.starts_with('|')).collect();
    assert_eq!(rows.len(), 2, "{out}");
    assert!(rows[0].starts_with("|0,0>") && rows[1].starts_with("|1,1>"));
    let total: u64 = rows.iter().map(|r| r.split_whitespace().nth(1).unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 1000);
}

#[test]
fn same_seed_same_bytes() {
    let args = ["simulate", &data("four_players.qcirc"), "--shots", "500", "--measure", "--seed", "42"];
    let a = qcards(&args);
    let b = qcards(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_comes_from_the_environment_unless_flagged() {
    let base = ["simulate", &data("bell3.qcirc"), "--shots", "300"];
    let flagged = qcards(&[&base[..], &["--seed", "5"]].concat());
    let from_env = qcards_env(&base, &[("QCARDS_SEED", "5")]);
    assert_eq!(flagged.stdout, from_env.stdout);
    let overridden = qcards_env(&[&base[..], &["--seed", "6"]].concat(), &[("QCARDS_SEED", "5")]);
    assert_eq!(overridden.stdout, qcards(&[&base[..], &["--seed", "6"]].concat()).stdout);
    assert_ne!(overridden.stdout, flagged.stdout);
}

#[test]
fn four_player_round_measures_into_three_outcomes() {
    for seed in 0..20 {
        let o = qcards(&["simulate", &data("four_players.qcirc"), "--measure", "--seed", &seed.to_string()]);
        let out = stdout(&o);
        let outcome = out.lines().find(|l| l.starts_with("outcome:")).unwrap();
        assert!(
            ["|2,1,1,1>", "|2,1,2,2>", "|2,1,0,0>"].iter().any(|o| outcome.contains(o)),
            "{outcome}"
        );
    }
}

#[test]
fn partial_measurement_collapses_the_partner() {
    let o = qcards(&["simulate", &data("bell3.qcirc"), "--measure=2", "--seed", "9"]);
    let out = stdout(&o);
    let line = out.lines().find(|l| l.starts_with("outcome: qudit 2 = ")).unwrap();
    let v = &line["outcome: qudit 2 = ".len()..]["x".len() - 1..][..1];
    assert!(out.ends_with(&format!("(1.0000,0.0000) |{v},{v}>\n")), "{out}");

    let o = qcards(&["simulate", &data("bell3.qcirc"), "--measure=3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn simulate_json_matches_the_sandbox_shape() {
    let o = qcards(&["--json", "simulate", &data("bell.qcirc"), "--shots", "100", "--seed", "3"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"], 3);
    assert_eq!(v["state"], "(0.7071,0.0000) |0,0>\n(0.7071,0.0000) |1,1>\n");
    assert_eq!(v["histogram"]["shots"], 100);
    assert_eq!(v["probabilities"].as_array().unwrap().len(), 2);
}

#[test]
fn parse_errors_name_token_and_line() {
    let o = qcards(&["simulate", &data("unknown_token.qcirc")]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 4") && err.contains("HX"), "{err}");
    assert!(o.stdout.is_empty());

    let o = qcards(&["--json", "simulate", &data("unknown_token.qcirc")]);
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["code"], "parse_error");
}

#[test]
fn missing_file_is_an_input_error() {
    let o = qcards(&["simulate", "/nonexistent/x.qcirc"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cannot read"));
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    assert_eq!(qcards(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(qcards(&["simulate"]).status.code(), Some(1));
    assert_eq!(qcards(&["simulate", "x", "--shots", "many"]).status.code(), Some(1));
    let help = qcards(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("simulate"));
    assert_eq!(qcards(&["--version"]).status.code(), Some(0));
}

#[test]
fn riddle_list_has_six_rows() {
    let o = qcards(&["riddle", "list"]);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 6);
    for (i, l) in lines.iter().enumerate() {
        assert!(l.starts_with(&format!("{} ", i + 1)));
        assert!(["easy", "medium", "hard"].iter().any(|d| l.contains(d)));
    }
    let v: Value = serde_json::from_slice(&qcards(&["--json", "riddle", "list"]).stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 6);
}

#[test]
fn riddle_solve_prints_shortest_solutions() {
    assert_eq!(stdout(&qcards(&["riddle", "solve", "3"])), "H1 1\nCX 1 2\n");
    assert_eq!(stdout(&qcards(&["riddle", "solve", "2"])), "H1 1\nZ 1\nH1 1\n");
    let o = qcards(&["riddle", "solve", "5", "--max-depth", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("no solution"));
    assert_eq!(qcards(&["riddle", "solve", "42"]).status.code(), Some(2));
}

#[test]
fn riddle_attempt_reports_success_and_failure() {
    let o = qcards(&["riddle", "attempt", "2", "H1", "1", "Z", "1", "H1", "1"]);
    let out = stdout(&o);
    assert!(out.starts_with("solved\nfinal state:\n(1.0000,0.0000) |1>\n"), "{out}");
    assert!(out.contains("Hadamard"));

    let o = qcards(&["riddle", "attempt", "3", "H1 1", "CX 1 2"]);
    assert!(stdout(&o).starts_with("solved\n"));

    let o = qcards(&["riddle", "attempt", "2", "Z", "1", "H1", "1", "H1", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("not solved\n"));

    let o = qcards(&["riddle", "attempt", "2", "X1", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qcards(&["riddle", "attempt", "3", "CX", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn riddle_files_work_like_builtins() {
    let file = data("shifted_pair.riddle");
    let solution = stdout(&qcards(&["riddle", "solve", &file]));
    assert_eq!(solution, "H1 1\nCX 1 2\nX1 2\n");
    let words: Vec<&str> = solution.split_whitespace().collect();
    let o = qcards(&[&["riddle", "attempt", file.as_str()][..], &words].concat());
    assert!(stdout(&o).starts_with("solved\n"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r4.riddle");
    std::fs::write(&path, stdout(&qcards(&["riddle", "show", "4"]))).unwrap();
    assert_eq!(
        stdout(&qcards(&["riddle", "solve", path.to_str().unwrap()])),
        stdout(&qcards(&["riddle", "solve", "4"]))
    );
}

#[test]
fn replay_prints_the_scoreboard() {
    let cfg = GameConfig::new(Version::ThreeD, Style::Competitive, 3, 77);
    let log = scripted_log(cfg, 5);
    let expected = score(&log.replay().unwrap()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = write_log(&dir, &log);

    let out = stdout(&qcards(&["replay", &path]));
    assert_eq!(out.lines().filter(|l| l.starts_with("round ")).count(), 3);
    let carries: Vec<String> = expected.values.iter().map(u8::to_string).collect();
    assert!(out.contains(&format!("carry values: {}\n", carries.join(" "))), "{out}");

    let v: Value = serde_json::from_slice(&qcards(&["--json", "replay", &path]).stdout).unwrap();
    assert_eq!(v["score"], serde_json::to_value(&expected).unwrap());
    assert_eq!(v["phase"], "finished");
}

#[test]
fn replay_cooperative_reports_group_score() {
    let cfg = GameConfig::new(Version::Easy, Style::Cooperative, 2, 3);
    let dir = tempfile::tempdir().unwrap();
    let path = write_log(&dir, &scripted_log(cfg, 2));
    let out = stdout(&qcards(&["replay", &path]));
    assert!(out.lines().last().unwrap().starts_with("group score: "), "{out}");
    assert!(out.trim_end().ends_with("of 2"));
}

#[test]
fn replay_rejects_broken_logs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"config\": {\"version\": \"3d\"}").unwrap();
    let o = qcards(&["replay", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn serve_on_an_occupied_port_fails_cleanly() {
    let taken = TcpListener::bind("127.0.0.1:0").unwrap();
    let port = taken.local_addr().unwrap().port().to_string();
    let o = qcards(&["serve", "--port", &port]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("cannot listen"), "{}", stderr(&o));
}

#[test]
fn serve_answers_http() {
    let port = TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    let mut child = std::process::Command::new(env!("CARGO_BIN_EXE_qcards"))
        .args(["serve", "--port", &port.to_string()])
        .stderr(std::process::Stdio::null())
        .spawn()
        .unwrap();
    let mut response = String::new();
    for _ in 0..100 {
        if let Ok(mut s) = TcpStream::connect(("127.0.0.1", port)) {
            s.write_all(b"GET /v1/riddles HTTP/1.1\r\nHost: x\r\nConnection: close\r\n\r\n").unwrap();
            s.read_to_string(&mut response).unwrap();
            break;
        }
        std::thread::sleep(Duration::from_millis(50));
    }
    child.kill().unwrap();
    child.wait().unwrap();
    assert!(response.starts_with("HTTP/1.1 200"), "{response}");
    assert!(response.contains("\"difficulty\""));
}
