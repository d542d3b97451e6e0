//! Shared fixtures for the engine benchmarks.

use qcards_core::{Dim, StateVector, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Normalized state with independent uniform real and imaginary parts.
pub fn random_state(dim: Dim, num_qudits: usize, seed: u64) -> StateVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = dim.pow(num_qudits);
    let amps: Vec<C64> = (0..len)
        .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(dim, num_qudits, amps.into_iter().map(|a| a / norm).collect())
        .expect("normalized by construction")
}
