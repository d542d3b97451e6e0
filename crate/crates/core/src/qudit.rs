//! Dense statevector over `n` qudits of dimension 2 or 3.
//!
//! Basis index `i` encodes the label `(v1, ..., vn)` big-endian in base `d`:
//! qudit 1 (player 1) is the most significant digit, so `|2,1,1,1>` at
//! `d = 3` lives at index `2*27 + 1*9 + 1*3 + 1 = 67`.
//!
//! Every operation takes its inputs by reference and returns a new value.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gates::GateMatrix;

pub type C64 = Complex64;

/// Largest register the engine accepts (3^8 = 6561 amplitudes).
pub const MAX_QUDITS: usize = 8;

/// Tolerance for unit norm and unitarity checks.
pub const NORM_TOL: f64 = 1e-10;

/// Default tolerance for state equality.
pub const STATE_EQ_TOL: f64 = 1e-9;

/// Probabilities below this are treated as zero when listing outcomes.
pub const PROB_FLOOR: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuditError {
    #[error("unsupported dimension {0}: expected 2 or 3")]
    UnsupportedDim(u8),
    #[error("at least one qudit is required")]
    NoQudits,
    #[error("{0} qudits requested, at most {MAX_QUDITS} are supported")]
    TooManyQudits(usize),
    #[error("digit {digit} at position {position} is out of range for d={dim}")]
    DigitOutOfRange { position: usize, digit: u8, dim: u8 },
    #[error("qudit index {index} is out of range for {num_qudits} qudits")]
    IndexOutOfRange { index: usize, num_qudits: usize },
    #[error("qudit {0} listed more than once")]
    DuplicateIndex(usize),
    #[error("empty qudit index list")]
    EmptyIndices,
    #[error("gate is defined for d={gate} but the state has d={state}")]
    DimensionMismatch { gate: u8, state: u8 },
    #[error("gate acts on {arity} qudit(s) but {given} target(s) were given")]
    ArityMismatch { arity: usize, given: usize },
    #[error("expected {expected} amplitudes, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("amplitudes have norm {0}, expected 1")]
    NotNormalized(f64),
    #[error("amplitude {0} is not finite")]
    NonFinite(usize),
    #[error("shots must be at least 1")]
    ZeroShots,
    #[error("states have different shapes: d={0}, n={1} vs d={2}, n={3}")]
    ShapeMismatch(u8, usize, u8, usize),
}

/// Local dimension of every qudit in a register: 2 (qubit) or 3 (qutrit).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Dim(u8);

impl Dim {
    pub const QUBIT: Dim = Dim(2);
    pub const QUTRIT: Dim = Dim(3);

    pub fn new(d: u8) -> Result<Self, QuditError> {
        match d {
            2 | 3 => Ok(Dim(d)),
            other => Err(QuditError::UnsupportedDim(other)),
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn size(self) -> usize {
        self.0 as usize
    }

    /// `d^n`.
    pub fn pow(self, n: usize) -> usize {
        self.size().pow(n as u32)
    }
}

impl TryFrom<u8> for Dim {
    type Error = QuditError;
    fn try_from(d: u8) -> Result<Self, Self::Error> {
        Dim::new(d)
    }
}

impl From<Dim> for u8 {
    fn from(d: Dim) -> u8 {
        d.0
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One definite value per qudit, in player order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Outcome(pub Vec<u8>);

impl Outcome {
    pub fn values(&self) -> &[u8] {
        &self.0
    }

    /// Decodes a basis index into its digits.
    pub fn from_index(dim: Dim, num_qudits: usize, mut index: usize) -> Self {
        let d = dim.size();
        let mut digits = vec![0u8; num_qudits];
        for slot in digits.iter_mut().rev() {
            *slot = (index % d) as u8;
            index /= d;
        }
        Outcome(digits)
    }

    pub fn to_index(&self, dim: Dim) -> usize {
        encode(dim, &self.0)
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("|")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(">")
    }
}

fn encode(dim: Dim, digits: &[u8]) -> usize {
    digits
        .iter()
        .fold(0usize, |acc, &v| acc * dim.size() + v as usize)
}

/// Unit-norm complex amplitudes over `dim^num_qudits` basis states.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawState")]
pub struct StateVector {
    dim: Dim,
    num_qudits: usize,
    amps: Vec<C64>,
}

#[derive(Deserialize)]
struct RawState {
    dim: Dim,
    num_qudits: usize,
    amps: Vec<C64>,
}

impl TryFrom<RawState> for StateVector {
    type Error = QuditError;
    fn try_from(raw: RawState) -> Result<Self, Self::Error> {
        StateVector::from_amplitudes(raw.dim, raw.num_qudits, raw.amps)
    }
}

fn check_register(num_qudits: usize) -> Result<(), QuditError> {
    if num_qudits == 0 {
        return Err(QuditError::NoQudits);
    }
    if num_qudits > MAX_QUDITS {
        return Err(QuditError::TooManyQudits(num_qudits));
    }
    Ok(())
}

/// Product basis state `|v1,...,vn>`.
pub fn basis_state(dim: Dim, values: &[u8]) -> Result<StateVector, QuditError> {
    check_register(values.len())?;
    for (position, &digit) in values.iter().enumerate() {
        if digit >= dim.get() {
            return Err(QuditError::DigitOutOfRange {
                position,
                digit,
                dim: dim.get(),
            });
        }
    }
    let mut amps = vec![C64::new(0.0, 0.0); dim.pow(values.len())];
    amps[encode(dim, values)] = C64::new(1.0, 0.0);
    Ok(StateVector {
        dim,
        num_qudits: values.len(),
        amps,
    })
}

impl StateVector {
    /// Builds a state from explicit amplitudes, checking length, finiteness
    /// and unit norm.
    pub fn from_amplitudes(
        dim: Dim,
        num_qudits: usize,
        amps: Vec<C64>,
    ) -> Result<Self, QuditError> {
        check_register(num_qudits)?;
        let expected = dim.pow(num_qudits);
        if amps.len() != expected {
            return Err(QuditError::LengthMismatch {
                expected,
                got: amps.len(),
            });
        }
        if let Some(i) = amps.iter().position(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(QuditError::NonFinite(i));
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(QuditError::NotNormalized(norm.sqrt()));
        }
        Ok(StateVector {
            dim,
            num_qudits,
            amps,
        })
    }

    pub fn dim(&self) -> Dim {
        self.dim
    }

    pub fn num_qudits(&self) -> usize {
        self.num_qudits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitude(&self, values: &[u8]) -> C64 {
        self.amps[encode(self.dim, values)]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Multiplies every amplitude by `c`; `|c|` must be 1.
    pub fn scaled(&self, c: C64) -> StateVector {
        StateVector {
            dim: self.dim,
            num_qudits: self.num_qudits,
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }

    /// Dense `|a_i|^2` in basis-index order.
    pub fn probability_vector(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    fn check_indices(&self, indices: &[usize]) -> Result<(), QuditError> {
        for (i, &q) in indices.iter().enumerate() {
            if q >= self.num_qudits {
                return Err(QuditError::IndexOutOfRange {
                    index: q,
                    num_qudits: self.num_qudits,
                });
            }
            if indices[..i].contains(&q) {
                return Err(QuditError::DuplicateIndex(q));
            }
        }
        Ok(())
    }

    fn stride(&self, qudit: usize) -> usize {
        self.dim.pow(self.num_qudits - 1 - qudit)
    }

    fn digit(&self, index: usize, qudit: usize) -> usize {
        (index / self.stride(qudit)) % self.dim.size()
    }
}

/// Applies `g` to the listed 0-based qudits of a raw amplitude vector.
///
/// The first target is the most significant digit of the gate's own basis
/// (the control slot of a two-qudit gate). Only `d^k`-sized blocks are
/// touched; the full `d^n x d^n` operator is never built. The input need not
/// be normalized.
pub fn apply_gate_raw(
    dim: Dim,
    num_qudits: usize,
    amps: &[C64],
    g: &GateMatrix,
    targets: &[usize],
) -> Result<Vec<C64>, QuditError> {
    if g.dim() != dim {
        return Err(QuditError::DimensionMismatch {
            gate: g.dim().get(),
            state: dim.get(),
        });
    }
    if g.arity() != targets.len() {
        return Err(QuditError::ArityMismatch {
            arity: g.arity(),
            given: targets.len(),
        });
    }
    if amps.len() != dim.pow(num_qudits) {
        return Err(QuditError::LengthMismatch {
            expected: dim.pow(num_qudits),
            got: amps.len(),
        });
    }
    for (i, &q) in targets.iter().enumerate() {
        if q >= num_qudits {
            return Err(QuditError::IndexOutOfRange {
                index: q,
                num_qudits,
            });
        }
        if targets[..i].contains(&q) {
            return Err(QuditError::DuplicateIndex(q));
        }
    }

    let d = dim.size();
    let strides: Vec<usize> = targets
        .iter()
        .map(|&q| dim.pow(num_qudits - 1 - q))
        .collect();
    let block = g.size();
    // offsets[s] = position of gate-basis element s relative to the block base
    let offsets: Vec<usize> = (0..block)
        .map(|s| {
            let mut rest = s;
            let mut off = 0;
            for &stride in strides.iter().rev() {
                off += (rest % d) * stride;
                rest /= d;
            }
            off
        })
        .collect();

    let mut out = amps.to_vec();
    let mut gathered = vec![C64::new(0.0, 0.0); block];
    for base in 0..amps.len() {
        if strides.iter().any(|&s| (base / s) % d != 0) {
            continue;
        }
        for (slot, &off) in gathered.iter_mut().zip(&offsets) {
            *slot = amps[base + off];
        }
        for (row, &off) in offsets.iter().enumerate() {
            out[base + off] = g
                .row(row)
                .iter()
                .zip(&gathered)
                .map(|(m, a)| m * a)
                .sum();
        }
    }
    Ok(out)
}

/// `(I ⊗ ... ⊗ g ⊗ ... ⊗ I)|state>` with `g` on `targets` (0-based).
pub fn apply_gate(
    state: &StateVector,
    g: &GateMatrix,
    targets: &[usize],
) -> Result<StateVector, QuditError> {
    let amps = apply_gate_raw(state.dim, state.num_qudits, &state.amps, g, targets)?;
    Ok(StateVector {
        dim: state.dim,
        num_qudits: state.num_qudits,
        amps,
    })
}

/// Born probabilities keyed by outcome; entries below [`PROB_FLOOR`] are omitted.
pub fn probabilities(state: &StateVector) -> BTreeMap<Outcome, f64> {
    state
        .amps
        .iter()
        .enumerate()
        .filter_map(|(i, a)| {
            let p = a.norm_sqr();
            (p >= PROB_FLOOR).then(|| (Outcome::from_index(state.dim, state.num_qudits, i), p))
        })
        .collect()
}

/// Picks an index from `probs` using a single uniform draw.
fn draw_index<R: Rng + ?Sized>(probs: &[f64], rng: &mut R) -> usize {
    let u: f64 = rng.random();
    let total: f64 = probs.iter().sum();
    let target = u * total;
    let mut acc = 0.0;
    let mut last_nonzero = 0;
    for (i, &p) in probs.iter().enumerate() {
        if p <= 0.0 {
            continue;
        }
        acc += p;
        last_nonzero = i;
        if target < acc {
            return i;
        }
    }
    last_nonzero
}

/// Full projective measurement; the returned state is the basis state of
/// the drawn outcome. Consumes exactly one `f64` from `rng`.
pub fn measure_all<R: Rng + ?Sized>(state: &StateVector, rng: &mut R) -> (Outcome, StateVector) {
    let index = draw_index(&state.probability_vector(), rng);
    let outcome = Outcome::from_index(state.dim, state.num_qudits, index);
    let mut amps = vec![C64::new(0.0, 0.0); state.amps.len()];
    amps[index] = C64::new(1.0, 0.0);
    (
        outcome,
        StateVector {
            dim: state.dim,
            num_qudits: state.num_qudits,
            amps,
        },
    )
}

/// Joint distribution of the listed qudits, indexed big-endian in the listed order.
pub fn marginal(state: &StateVector, indices: &[usize]) -> Result<Vec<f64>, QuditError> {
    if indices.is_empty() {
        return Err(QuditError::EmptyIndices);
    }
    state.check_indices(indices)?;
    let d = state.dim.size();
    let mut dist = vec![0.0; state.dim.pow(indices.len())];
    for (i, a) in state.amps.iter().enumerate() {
        let key = indices
            .iter()
            .fold(0usize, |acc, &q| acc * d + state.digit(i, q));
        dist[key] += a.norm_sqr();
    }
    Ok(dist)
}

/// Projects onto `values` for the listed qudits and renormalizes.
///
/// Returns the post-measurement state together with the probability of the
/// partial outcome; the state is `None` when that probability is zero.
pub fn project(
    state: &StateVector,
    indices: &[usize],
    values: &[u8],
) -> Result<(f64, Option<StateVector>), QuditError> {
    if indices.is_empty() {
        return Err(QuditError::EmptyIndices);
    }
    state.check_indices(indices)?;
    if values.len() != indices.len() {
        return Err(QuditError::LengthMismatch {
            expected: indices.len(),
            got: values.len(),
        });
    }
    for (position, &digit) in values.iter().enumerate() {
        if digit >= state.dim.get() {
            return Err(QuditError::DigitOutOfRange {
                position,
                digit,
                dim: state.dim.get(),
            });
        }
    }
    let mut amps: Vec<C64> = state
        .amps
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let keep = indices
                .iter()
                .zip(values)
                .all(|(&q, &v)| state.digit(i, q) == v as usize);
            if keep {
                a
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect();
    let p: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    if p <= 0.0 {
        return Ok((0.0, None));
    }
    let scale = 1.0 / p.sqrt();
    amps.iter_mut().for_each(|a| *a *= scale);
    Ok((
        p,
        Some(StateVector {
            dim: state.dim,
            num_qudits: state.num_qudits,
            amps,
        }),
    ))
}

/// Measures only the listed qudits. Values come back in the listed order;
/// the other qudits keep their (renormalized) conditional state.
pub fn measure_subset<R: Rng + ?Sized>(
    state: &StateVector,
    indices: &[usize],
    rng: &mut R,
) -> Result<(Vec<u8>, StateVector), QuditError> {
    let dist = marginal(state, indices)?;
    let key = draw_index(&dist, rng);
    let values = Outcome::from_index(state.dim, indices.len(), key).0;
    let (_, collapsed) = project(state, indices, &values)?;
    // draw_index never selects a zero-probability entry
    let collapsed = collapsed.expect("sampled partial outcome has nonzero probability");
    Ok((values, collapsed))
}

/// Outcome counts from repeated measurements of the same state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histogram {
    pub shots: u64,
    #[serde(with = "histogram_counts")]
    pub counts: BTreeMap<Outcome, u64>,
}

mod histogram_counts {
    use super::Outcome;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    #[derive(Serialize, Deserialize)]
    struct Entry {
        outcome: Outcome,
        count: u64,
    }

    pub fn serialize<S: Serializer>(map: &BTreeMap<Outcome, u64>, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<Entry> = map
            .iter()
            .map(|(outcome, &count)| Entry {
                outcome: outcome.clone(),
                count,
            })
            .collect();
        entries.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Outcome, u64>, D::Error> {
        let entries = Vec::<Entry>::deserialize(d)?;
        Ok(entries.into_iter().map(|e| (e.outcome, e.count)).collect())
    }
}

impl Histogram {
    pub fn count(&self, values: &[u8]) -> u64 {
        self.counts
            .get(&Outcome(values.to_vec()))
            .copied()
            .unwrap_or(0)
    }

    pub fn frequency(&self, values: &[u8]) -> f64 {
        self.count(values) as f64 / self.shots as f64
    }
}

/// `shots` independent full measurements of `state`; draws the same random
/// numbers as `shots` consecutive [`measure_all`] calls.
pub fn sample<R: Rng + ?Sized>(
    state: &StateVector,
    shots: u64,
    rng: &mut R,
) -> Result<Histogram, QuditError> {
    if shots == 0 {
        return Err(QuditError::ZeroShots);
    }
    let probs = state.probability_vector();
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        let index = draw_index(&probs, rng);
        *counts
            .entry(Outcome::from_index(state.dim, state.num_qudits, index))
            .or_insert(0) += 1;
    }
    Ok(Histogram { shots, counts })
}

/// True iff some unit-modulus `c` gives `‖a − c·b‖ ≤ tol`.
pub fn equal_up_to_global_phase(
    a: &StateVector,
    b: &StateVector,
    tol: f64,
) -> Result<bool, QuditError> {
    if a.dim != b.dim || a.num_qudits != b.num_qudits {
        return Err(QuditError::ShapeMismatch(
            a.dim.get(),
            a.num_qudits,
            b.dim.get(),
            b.num_qudits,
        ));
    }
    let (pivot, _) = b
        .amps
        .iter()
        .enumerate()
        .fold((0, -1.0), |best, (i, x)| {
            if x.norm_sqr() > best.1 {
                (i, x.norm_sqr())
            } else {
                best
            }
        });
    let ratio = a.amps[pivot] / b.amps[pivot];
    let phase = if ratio.norm() > 0.0 {
        ratio / ratio.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    let dist = a
        .amps
        .iter()
        .zip(&b.amps)
        .map(|(x, y)| (x - phase * y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    Ok(dist <= tol)
}
