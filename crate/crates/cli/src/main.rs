//! `qcards`: evaluate circuits, work on riddles, replay games and run the
//! HTTP service.
//!
//! Exit codes: 0 success, 1 usage error, 2 input or parse error, 3 runtime
//! error.

mod error;
mod replay;
mod riddle;
mod simulate;

use std::io::Write;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use error::CliError;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "qcards", version, about = "High-dimensional quantum card game tools")]
struct Cli {
    /// Print structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a .qcirc circuit and print its state before measurement.
    Simulate {
        file: PathBuf,
        /// Sample this many measurements and print a histogram.
        #[arg(long)]
        shots: Option<u64>,
        /// Seed for sampling and measurement.
        #[arg(long, env = "QCARDS_SEED")]
        seed: Option<u64>,
        /// Measure once: all qudits, or `--measure=1,3` for only those.
        #[arg(long, num_args = 0.., require_equals = true, value_delimiter = ',')]
        measure: Option<Vec<usize>>,
    },
    /// List, attempt or solve riddles.
    Riddle {
        #[command(subcommand)]
        command: RiddleCommand,
    },
    /// Replay a game event log and print the scoreboard.
    Replay { log: PathBuf },
    /// Run the HTTP service until interrupted.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        bind: std::net::IpAddr,
    },
}

#[derive(Subcommand)]
enum RiddleCommand {
    /// The built-in riddles.
    List,
    /// Print a riddle as a .riddle file.
    Show {
        /// Built-in riddle id or .riddle file.
        riddle: String,
    },
    /// Check a card sequence, e.g. `attempt 2 H1 1 Z 1 H1 1`.
    Attempt {
        /// Built-in riddle id or .riddle file.
        riddle: String,
        /// Cards with 1-based qudit numbers.
        moves: Vec<String>,
    },
    /// Print a shortest solution.
    Solve {
        /// Built-in riddle id or .riddle file.
        riddle: String,
        #[arg(long)]
        max_depth: Option<usize>,
    },
}

pub(crate) fn json_text<T: Serialize>(value: &T) -> String {
    qcards_core::circuit_io::encode(value)
}

fn serve(bind: std::net::IpAddr, port: u16) -> Result<String, CliError> {
    let addr = SocketAddr::new(bind, port);
    let rt = tokio::runtime::Runtime::new()
        .map_err(|e| CliError::runtime("runtime_error", e.to_string()))?;
    rt.block_on(async {
        let listener = tokio::net::TcpListener::bind(addr)
            .await
            .map_err(|e| CliError::runtime("bind_error", format!("cannot listen on {addr}: {e}")))?;
        eprintln!("qcards service listening on http://{addr}/v1");
        qcards_service::serve(listener)
            .await
            .map_err(|e| CliError::runtime("serve_error", e.to_string()))
    })?;
    Ok(String::new())
}

fn run(cli: Cli) -> Result<String, CliError> {
    let json = cli.json;
    match cli.command {
        Command::Simulate {
            file,
            shots,
            seed,
            measure,
        } => simulate::run(simulate::SimulateArgs {
            file: &file,
            shots,
            seed,
            measure,
            json,
        }),
        Command::Riddle { command } => match command {
            RiddleCommand::List => Ok(riddle::list(json)),
            RiddleCommand::Show { riddle } => riddle::show(&riddle),
            RiddleCommand::Attempt { riddle, moves } => riddle::attempt(&riddle, &moves, json),
            RiddleCommand::Solve { riddle, max_depth } => riddle::solve_cmd(&riddle, max_depth, json),
        },
        Command::Replay { log } => replay::run(&log, json),
        Command::Serve { port, bind } => serve(bind, port),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            if json {
                eprint!("{}", json_text(&serde_json::json!({"code": e.code(), "message": e.message()})));
            } else {
                eprintln!("qcards: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
