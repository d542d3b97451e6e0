//! `.qcirc` line format.
//!
//! ```text
//! # interference
//! dim 2
//! qudits 1
//! init 0
//! H1 1
//! Z 1
//! H1 1
//! ```
//!
//! Header lines (`dim`, `qudits`, optional `init`) come first; gate lines use
//! 1-based qudit indices, `CX <control> <target>` for the controlled shift.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::gates::{run_ops, GateKind, GateOp};
use crate::qudit::{basis_state, Dim, StateVector, MAX_QUDITS};

/// A parsed circuit: register shape, initial digits and the gate sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitDoc {
    pub dim: Dim,
    pub num_qudits: usize,
    pub init: Vec<u8>,
    /// 0-based targets.
    pub ops: Vec<GateOp>,
}

impl CircuitDoc {
    pub fn initial_state(&self) -> Result<StateVector, crate::Error> {
        Ok(basis_state(self.dim, &self.init)?)
    }

    /// Final state before any measurement.
    pub fn evaluate(&self) -> Result<StateVector, crate::Error> {
        run_ops(&self.initial_state()?, &self.ops)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("qudit index {index} out of range 1..={num_qudits}")]
    IndexOutOfRange { index: usize, num_qudits: usize },
    #[error("digit {digit} out of range for d={dim}")]
    DigitOutOfRange { digit: u8, dim: u8 },
    #[error("CX control equals target")]
    ControlEqualsTarget,
    #[error("missing `{0}` header")]
    MissingHeader(&'static str),
    #[error("duplicate `{0}` header")]
    DuplicateHeader(&'static str),
    #[error("`{0}` header after gate lines")]
    HeaderAfterGates(&'static str),
    #[error("`{directive}` expects {expected} argument(s), got {got}")]
    WrongArgCount {
        directive: String,
        expected: usize,
        got: usize,
    },
    #[error("`{0}` is not a number")]
    InvalidNumber(String),
    #[error("unsupported dimension {0}: expected 2 or 3")]
    UnsupportedDim(String),
    #[error("qudit count {0} out of range 1..={MAX_QUDITS}")]
    BadQuditCount(usize),
    #[error("{0} is not defined for this dimension")]
    InvalidForDim(GateKind),
}

/// Parse failure with the 1-based line it occurred on.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn number<T: std::str::FromStr>(line: usize, s: &str) -> Result<T, ParseError> {
    s.parse()
        .map_err(|_| err(line, ParseErrorKind::InvalidNumber(s.to_string())))
}

fn expect_args(line: usize, directive: &str, args: &[&str], n: usize) -> Result<(), ParseError> {
    if args.len() != n {
        return Err(err(
            line,
            ParseErrorKind::WrongArgCount {
                directive: directive.to_string(),
                expected: n,
                got: args.len(),
            },
        ));
    }
    Ok(())
}

pub fn parse_circuit(text: &str) -> Result<CircuitDoc, ParseError> {
    let mut dim: Option<Dim> = None;
    let mut num_qudits: Option<usize> = None;
    let mut init: Option<Vec<u8>> = None;
    let mut ops = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let head = words.next().expect("non-empty line has a first word");
        let args: Vec<&str> = words.collect();

        match head {
            "dim" | "qudits" | "init" => {
                let name: &'static str = match head {
                    "dim" => "dim",
                    "qudits" => "qudits",
                    _ => "init",
                };
                if !ops.is_empty() {
                    return Err(err(line, ParseErrorKind::HeaderAfterGates(name)));
                }
                match name {
                    "dim" => {
                        if dim.is_some() {
                            return Err(err(line, ParseErrorKind::DuplicateHeader("dim")));
                        }
                        expect_args(line, "dim", &args, 1)?;
                        let d = args[0]
                            .parse::<u8>()
                            .ok()
                            .and_then(|d| Dim::new(d).ok())
                            .ok_or_else(|| {
                                err(line, ParseErrorKind::UnsupportedDim(args[0].to_string()))
                            })?;
                        dim = Some(d);
                    }
                    "qudits" => {
                        if num_qudits.is_some() {
                            return Err(err(line, ParseErrorKind::DuplicateHeader("qudits")));
                        }
                        expect_args(line, "qudits", &args, 1)?;
                        let n: usize = number(line, args[0])?;
                        if n == 0 || n > MAX_QUDITS {
                            return Err(err(line, ParseErrorKind::BadQuditCount(n)));
                        }
                        num_qudits = Some(n);
                    }
                    _ => {
                        if init.is_some() {
                            return Err(err(line, ParseErrorKind::DuplicateHeader("init")));
                        }
                        let d = dim.ok_or_else(|| err(line, ParseErrorKind::MissingHeader("dim")))?;
                        let n = num_qudits
                            .ok_or_else(|| err(line, ParseErrorKind::MissingHeader("qudits")))?;
                        expect_args(line, "init", &args, n)?;
                        let mut digits = Vec::with_capacity(n);
                        for a in &args {
                            let v: u8 = number(line, a)?;
                            if v >= d.get() {
                                return Err(err(
                                    line,
                                    ParseErrorKind::DigitOutOfRange {
                                        digit: v,
                                        dim: d.get(),
                                    },
                                ));
                            }
                            digits.push(v);
                        }
                        init = Some(digits);
                    }
                }
            }
            token => {
                let gate: GateKind = token
                    .parse()
                    .map_err(|_| err(line, ParseErrorKind::UnknownToken(token.to_string())))?;
                let d = dim.ok_or_else(|| err(line, ParseErrorKind::MissingHeader("dim")))?;
                let n =
                    num_qudits.ok_or_else(|| err(line, ParseErrorKind::MissingHeader("qudits")))?;
                if !gate.valid_for(d) {
                    return Err(err(line, ParseErrorKind::InvalidForDim(gate)));
                }
                expect_args(line, token, &args, gate.arity())?;
                let mut targets = Vec::with_capacity(args.len());
                for a in &args {
                    let q: usize = number(line, a)?;
                    if q == 0 || q > n {
                        return Err(err(
                            line,
                            ParseErrorKind::IndexOutOfRange {
                                index: q,
                                num_qudits: n,
                            },
                        ));
                    }
                    targets.push(q - 1);
                }
                if targets.len() == 2 && targets[0] == targets[1] {
                    return Err(err(line, ParseErrorKind::ControlEqualsTarget));
                }
                ops.push(GateOp { gate, targets });
            }
        }
    }

    let eof = last_line + 1;
    let dim = dim.ok_or_else(|| err(eof, ParseErrorKind::MissingHeader("dim")))?;
    let num_qudits = num_qudits.ok_or_else(|| err(eof, ParseErrorKind::MissingHeader("qudits")))?;
    Ok(CircuitDoc {
        dim,
        num_qudits,
        init: init.unwrap_or_else(|| vec![0; num_qudits]),
        ops,
    })
}

/// Prints a document in the canonical form accepted by [`parse_circuit`].
pub fn print_circuit(doc: &CircuitDoc) -> String {
    let mut out = String::new();
    writeln!(out, "dim {}", doc.dim).unwrap();
    writeln!(out, "qudits {}", doc.num_qudits).unwrap();
    out.push_str("init");
    for v in &doc.init {
        write!(out, " {v}").unwrap();
    }
    out.push('\n');
    for op in &doc.ops {
        writeln!(out, "{op}").unwrap();
    }
    out
}

impl fmt::Display for CircuitDoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_circuit(self))
    }
}
