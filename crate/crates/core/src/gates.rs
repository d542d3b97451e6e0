//! Card unitaries and the per-version card sets.
//!
//! With `ω = e^{2πi/d}` the gates are:
//!
//! | card | action |
//! |------|--------|
//! | `X1` | `|k> -> |k+1 mod d>` |
//! | `X2` | `|k> -> |k+2 mod d>` (d = 3 only) |
//! | `Z`  | `diag(ω^0, ..., ω^{d-1})` |
//! | `Y`  | `i·X1·Z` at d = 2 (Pauli Y), `X1·Z` at d = 3 |
//! | `H1` | Fourier matrix `F[j,k] = ω^{jk}/√d` |
//! | `H2` | `F†` (d = 3 only) |
//! | `CX` | `|c,t> -> |c, t+c mod d>`, control first |
//!
//! Instructors comparing against the printed truth tables: these reproduce
//! `H1·H1|0> = |0>`, `H1·Z·H1|0> = |1>` and the Bell-pair construction
//! at d = 2, and generalize them to d = 3.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qudit::{Dim, StateVector, C64};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GateError {
    #[error("{kind} is not defined for d={dim}")]
    InvalidForDim { kind: GateKind, dim: u8 },
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("a {size}x{size} matrix is not a one- or two-qudit gate for d={dim}")]
    BadSize { size: usize, dim: u8 },
    #[error("unknown card token `{0}`")]
    UnknownToken(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    X1,
    X2,
    Y,
    Z,
    H1,
    H2,
    CX,
}

impl GateKind {
    pub const ALL: [GateKind; 7] = [
        GateKind::X1,
        GateKind::X2,
        GateKind::Y,
        GateKind::Z,
        GateKind::H1,
        GateKind::H2,
        GateKind::CX,
    ];

    pub fn token(self) -> &'static str {
        match self {
            GateKind::X1 => "X1",
            GateKind::X2 => "X2",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::H1 => "H1",
            GateKind::H2 => "H2",
            GateKind::CX => "CX",
        }
    }

    /// Number of qudits the gate acts on.
    pub fn arity(self) -> usize {
        match self {
            GateKind::CX => 2,
            _ => 1,
        }
    }

    pub fn valid_for(self, dim: Dim) -> bool {
        !matches!(self, GateKind::X2 | GateKind::H2) || dim == Dim::QUTRIT
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for GateKind {
    type Err = GateError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GateKind::ALL
            .into_iter()
            .find(|k| k.token() == s)
            .ok_or_else(|| GateError::UnknownToken(s.to_string()))
    }
}

/// A card in a player's hand: a gate or the STEAL action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Card {
    Gate(GateKind),
    Steal,
}

impl Card {
    pub fn token(self) -> &'static str {
        match self {
            Card::Gate(k) => k.token(),
            Card::Steal => "STEAL",
        }
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Card {
    type Err = GateError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "STEAL" {
            Ok(Card::Steal)
        } else {
            s.parse().map(Card::Gate)
        }
    }
}

impl TryFrom<String> for Card {
    type Error = GateError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Card> for String {
    fn from(c: Card) -> String {
        c.token().to_string()
    }
}

/// Square unitary acting on one or two qudits, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct GateMatrix {
    dim: Dim,
    arity: usize,
    entries: Vec<C64>,
}

impl GateMatrix {
    pub fn identity(dim: Dim, arity: usize) -> Self {
        let n = dim.pow(arity);
        let mut entries = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            entries[i * n + i] = C64::new(1.0, 0.0);
        }
        GateMatrix {
            dim,
            arity,
            entries,
        }
    }

    /// Builds a matrix from rows. The size must be `d` or `d²`.
    pub fn from_rows(dim: Dim, rows: Vec<Vec<C64>>) -> Result<Self, GateError> {
        let size = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != size {
                return Err(GateError::NotSquare {
                    row,
                    len: r.len(),
                    expected: size,
                });
            }
        }
        let arity = if size == dim.size() {
            1
        } else if size == dim.pow(2) {
            2
        } else {
            return Err(GateError::BadSize {
                size,
                dim: dim.get(),
            });
        };
        Ok(GateMatrix {
            dim,
            arity,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    fn from_fn(dim: Dim, arity: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let n = dim.pow(arity);
        let entries = (0..n * n).map(|i| f(i / n, i % n)).collect();
        GateMatrix {
            dim,
            arity,
            entries,
        }
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Side length `d^arity`.
    pub fn size(&self) -> usize {
        self.dim.pow(self.arity)
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[row * self.size() + col]
    }

    pub fn row(&self, row: usize) -> &[C64] {
        let n = self.size();
        &self.entries[row * n..(row + 1) * n]
    }

    /// Matrix product `self · rhs` (apply `rhs` first).
    pub fn mul(&self, rhs: &GateMatrix) -> GateMatrix {
        assert_eq!(self.dim, rhs.dim);
        assert_eq!(self.arity, rhs.arity);
        let n = self.size();
        GateMatrix::from_fn(self.dim, self.arity, |r, c| {
            (0..n).map(|k| self.get(r, k) * rhs.get(k, c)).sum()
        })
    }

    pub fn adjoint(&self) -> GateMatrix {
        GateMatrix::from_fn(self.dim, self.arity, |r, c| self.get(c, r).conj())
    }

    pub fn scaled(&self, s: C64) -> GateMatrix {
        GateMatrix {
            dim: self.dim,
            arity: self.arity,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    /// Largest entry-wise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &GateMatrix) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖G†G − I‖_max ≤ tol`.
    pub fn verify_unitary(&self, tol: f64) -> bool {
        let gram = self.adjoint().mul(self);
        gram.max_abs_diff(&GateMatrix::identity(self.dim, self.arity)) <= tol
    }

    /// Each row and column holds exactly one entry of modulus one, the rest zero.
    pub fn is_permutation(&self, tol: f64) -> bool {
        let n = self.size();
        let line_ok = |vals: Vec<C64>| {
            let ones = vals.iter().filter(|v| (v.norm() - 1.0).abs() <= tol).count();
            let zeros = vals.iter().filter(|v| v.norm() <= tol).count();
            ones == 1 && zeros == n - 1
        };
        (0..n).all(|r| line_ok((0..n).map(|c| self.get(r, c)).collect()))
            && (0..n).all(|c| line_ok((0..n).map(|r| self.get(r, c)).collect()))
    }
}

fn omega_pow(d: usize, k: usize) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * (k % d) as f64 / d as f64)
}

fn shift(dim: Dim, by: usize) -> GateMatrix {
    let d = dim.size();
    GateMatrix::from_fn(dim, 1, |r, c| {
        if r == (c + by) % d {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

fn clock(dim: Dim) -> GateMatrix {
    let d = dim.size();
    GateMatrix::from_fn(dim, 1, |r, c| {
        if r == c {
            omega_pow(d, r)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

fn fourier(dim: Dim) -> GateMatrix {
    let d = dim.size();
    let norm = 1.0 / (d as f64).sqrt();
    GateMatrix::from_fn(dim, 1, |r, c| omega_pow(d, r * c) * norm)
}

fn controlled_shift(dim: Dim) -> GateMatrix {
    let d = dim.size();
    GateMatrix::from_fn(dim, 2, |r, c| {
        let (rc, rt) = (r / d, r % d);
        let (cc, ct) = (c / d, c % d);
        if rc == cc && rt == (ct + cc) % d {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Canonical matrix for a card at dimension `dim`.
pub fn gate_matrix(kind: GateKind, dim: Dim) -> Result<GateMatrix, GateError> {
    if !kind.valid_for(dim) {
        return Err(GateError::InvalidForDim {
            kind,
            dim: dim.get(),
        });
    }
    Ok(match kind {
        GateKind::X1 => shift(dim, 1),
        GateKind::X2 => shift(dim, 2),
        GateKind::Z => clock(dim),
        GateKind::Y => {
            let xz = shift(dim, 1).mul(&clock(dim));
            if dim == Dim::QUBIT {
                xz.scaled(C64::new(0.0, 1.0))
            } else {
                xz
            }
        }
        GateKind::H1 => fourier(dim),
        GateKind::H2 => fourier(dim).adjoint(),
        GateKind::CX => controlled_shift(dim),
    })
}

/// Game version: which cards are dealt and at which dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Version {
    #[serde(rename = "easy")]
    Easy,
    #[serde(rename = "2d")]
    TwoD,
    #[serde(rename = "3d")]
    ThreeD,
}

impl Version {
    pub fn dim(self) -> Dim {
        match self {
            Version::Easy | Version::TwoD => Dim::QUBIT,
            Version::ThreeD => Dim::QUTRIT,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Version::Easy => "easy",
            Version::TwoD => "2d",
            Version::ThreeD => "3d",
        }
    }
}

impl FromStr for Version {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "easy" => Ok(Version::Easy),
            "2d" => Ok(Version::TwoD),
            "3d" => Ok(Version::ThreeD),
            other => Err(format!("unknown version `{other}` (expected easy, 2d or 3d)")),
        }
    }
}

/// Cards available in a version and how many of each go into the deck per player.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CardSet {
    pub version: Version,
    pub dim: Dim,
    pub gates: Vec<GateKind>,
    pub actions: Vec<Card>,
    pub gate_copies_per_player: u32,
    pub steal_copies_per_player: u32,
}

impl CardSet {
    pub fn contains(&self, card: Card) -> bool {
        match card {
            Card::Gate(k) => self.gates.contains(&k),
            action => self.actions.contains(&action),
        }
    }

    /// Full deck (unshuffled) for `num_players`, in card-set order.
    pub fn deck(&self, num_players: usize) -> Vec<Card> {
        let mut deck = Vec::new();
        for &g in &self.gates {
            let copies = self.gate_copies_per_player as usize * num_players;
            deck.extend(std::iter::repeat_n(Card::Gate(g), copies));
        }
        for &a in &self.actions {
            let copies = self.steal_copies_per_player as usize * num_players;
            deck.extend(std::iter::repeat_n(a, copies));
        }
        deck
    }
}

/// Default card set for a version.
///
/// The easy deck carries five copies of each gate per player so that the
/// default three rounds of five cards never exhaust it; the other versions
/// carry four.
pub fn card_set(version: Version) -> CardSet {
    use GateKind::*;
    let (gates, copies) = match version {
        Version::Easy => (vec![X1, H1, CX], 5),
        Version::TwoD => (vec![X1, Y, Z, H1, CX], 4),
        Version::ThreeD => (vec![X1, X2, Y, Z, H1, H2, CX], 4),
    };
    CardSet {
        version,
        dim: version.dim(),
        gates,
        actions: vec![Card::Steal],
        gate_copies_per_player: copies,
        steal_copies_per_player: 1,
    }
}

/// A gate card applied to specific qudits (0-based, control first for CX).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GateOp {
    pub gate: GateKind,
    pub targets: Vec<usize>,
}

impl GateOp {
    pub fn single(gate: GateKind, qudit: usize) -> Self {
        GateOp {
            gate,
            targets: vec![qudit],
        }
    }

    pub fn controlled(gate: GateKind, control: usize, target: usize) -> Self {
        GateOp {
            gate,
            targets: vec![control, target],
        }
    }
}

impl fmt::Display for GateOp {
    /// DSL form with 1-based indices, e.g. `CX 1 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.gate.token())?;
        for t in &self.targets {
            write!(f, " {}", t + 1)?;
        }
        Ok(())
    }
}

/// Applies `ops` in order.
pub fn run_ops(state: &StateVector, ops: &[GateOp]) -> Result<StateVector, crate::Error> {
    let mut state = state.clone();
    for op in ops {
        let g = gate_matrix(op.gate, state.dim())?;
        state = crate::qudit::apply_gate(&state, &g, &op.targets)?;
    }
    Ok(state)
}
