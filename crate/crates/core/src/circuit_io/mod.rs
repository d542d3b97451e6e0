//! Text formats: `.qcirc` circuits, `.riddle` files, amplitude listings and
//! canonical JSON documents for game snapshots and API bodies.

mod circuit;
mod display;
mod riddle_file;
mod snapshot;

pub use circuit::{parse_circuit, print_circuit, CircuitDoc, ParseError, ParseErrorKind};
pub use display::{format_state, parse_state_lines, StateLineError};
pub use riddle_file::{parse_riddle, print_riddle, RiddleFileError};
pub use snapshot::{decode, deserialize_game, encode, serialize_game, SnapshotError};
