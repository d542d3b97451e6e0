use std::f64::consts::FRAC_1_SQRT_2;

use super::{Difficulty, Goal, OutcomePredicate, Riddle};
use crate::gates::GateKind::{self, *};
use crate::qudit::{basis_state, Dim, StateVector, C64};

fn basis(dim: Dim, values: &[u8]) -> StateVector {
    basis_state(dim, values).expect("built-in riddle state")
}

fn bell() -> StateVector {
    let r = C64::new(FRAC_1_SQRT_2, 0.0);
    let z = C64::new(0.0, 0.0);
    StateVector::from_amplitudes(Dim::QUBIT, 2, vec![r, z, z, r]).expect("normalized")
}

#[allow(clippy::too_many_arguments)]
fn riddle(
    id: u32,
    dim: Dim,
    initial: &[u8],
    allowed: &[GateKind],
    goal: Goal,
    max_cards: usize,
    difficulty: Difficulty,
    explanation: &str,
) -> Riddle {
    Riddle {
        id,
        dim,
        num_qudits: initial.len(),
        initial: initial.to_vec(),
        allowed: allowed.to_vec(),
        goal,
        max_cards,
        difficulty,
        explanation: explanation.to_string(),
    }
}

/// The six riddles shipped with the game, ordered by difficulty.
///
/// Riddle 1 is a superposition warm-up and riddle 2 is phase-controlled
/// interference. Riddles 3 to 5 build entanglement (Bell pair, shifted pair,
/// qutrit GHZ). Riddle 6 combines a qutrit shift with the Fourier gate.
pub fn builtin_riddles() -> Vec<Riddle> {
    vec![
        riddle(
            1,
            Dim::QUBIT,
            &[0],
            &[X1, H1, Z],
            Goal::Outcome(OutcomePredicate::Uniform),
            2,
            Difficulty::Easy,
            "A Hadamard card puts |0> into (|0>+|1>)/√2: until it is measured the \
             qubit holds both values, and a measurement returns 0 or 1 with equal \
             probability. Superposition is the raw material of every quantum algorithm.",
        ),
        riddle(
            2,
            Dim::QUBIT,
            &[0],
            &[H1, H1, Z],
            Goal::TargetState(basis(Dim::QUBIT, &[1])),
            3,
            Difficulty::Easy,
            "Two Hadamards undo each other. A Z card in between flips the sign of the \
             |1> part, so the second Hadamard makes the two paths to |0> cancel and the \
             paths to |1> add up. Steering interference through phases is how quantum \
             computers amplify right answers.",
        ),
        riddle(
            3,
            Dim::QUBIT,
            &[0, 0],
            &[X1, H1, CX],
            Goal::TargetState(bell()),
            3,
            Difficulty::Medium,
            "H1 on qubit 1 followed by CX from qubit 1 to qubit 2 gives \
             (|0,0>+|1,1>)/√2. Each qubit alone is a coin toss, yet both always agree. \
             Entangled pairs like this one carry teleportation and quantum key distribution.",
        ),
        riddle(
            4,
            Dim::QUBIT,
            &[0, 0],
            &[X1, H1, Z, CX],
            Goal::Outcome(OutcomePredicate::Correlated { shift: 1 }),
            4,
            Difficulty::Medium,
            "Entanglement does not have to mean equal values. Flipping one partner of a \
             Bell pair with X1 gives (|0,1>+|1,0>)/√2: random results that always \
             differ. The correlation is a property of the pair, not of either qubit.",
        ),
        riddle(
            5,
            Dim::QUTRIT,
            &[0, 0, 0],
            &[X1, H1, CX, CX],
            Goal::Outcome(OutcomePredicate::Correlated { shift: 0 }),
            4,
            Difficulty::Hard,
            "With qutrits, H1 spreads qudit 1 over |0>, |1> and |2>, and each CX copies \
             that value onto another qudit: (|0,0,0>+|1,1,1>+|2,2,2>)/√3. Three players, \
             three possible results, always identical. Such multi-party states are used in \
             quantum secret sharing.",
        ),
        riddle(
            6,
            Dim::QUTRIT,
            &[0],
            &[X1, X1, H1, H1, Z],
            Goal::TargetState(basis(Dim::QUTRIT, &[2])),
            3,
            Difficulty::Hard,
            "Two X1 shifts take |0> to |2>. There is a second route: X1 once, then two \
             H1 cards. Applying the qutrit Fourier gate twice maps |k> to |-k mod 3>, so \
             |1> becomes |2>. Fourier transforms are the engine of Shor's factoring algorithm.",
        ),
    ]
}
