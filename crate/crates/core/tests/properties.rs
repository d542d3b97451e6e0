//! Property tests over random states, gates and documents.

use proptest::prelude::*;
use qcards_core::circuit_io::parse_state_lines;
use qcards_core::qudit::{apply_gate_raw, marginal};
use qcards_core::{
    apply_gate, format_state, gate_matrix, measure_all, measure_subset, parse_circuit,
    print_circuit, probabilities, sample, CircuitDoc, Dim, GateKind, GateOp, StateVector, C64,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn dim_strategy() -> impl Strategy<Value = Dim> {
    prop_oneof![Just(Dim::QUBIT), Just(Dim::QUTRIT)]
}

fn raw_amps(len: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len)
        .prop_map(|v| v.into_iter().map(|(re, im)| C64::new(re, im)).collect())
}

fn normalize(dim: Dim, n: usize, amps: Vec<C64>) -> Option<StateVector> {
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-6 {
        return None;
    }
    StateVector::from_amplitudes(dim, n, amps.into_iter().map(|a| a / norm).collect()).ok()
}

/// A random normalized state on 1..=max_n qudits.
fn state(max_n: usize) -> impl Strategy<Value = StateVector> {
    (dim_strategy(), 1..=max_n).prop_flat_map(|(dim, n)| {
        raw_amps(dim.pow(n)).prop_filter_map("zero vector", move |a| normalize(dim, n, a))
    })
}

/// A gate kind valid at `dim` with targets on an `n`-qudit register.
fn op_for(dim: Dim, n: usize) -> impl Strategy<Value = GateOp> {
    let kinds: Vec<GateKind> = GateKind::ALL
        .into_iter()
        .filter(|k| k.valid_for(dim) && (k.arity() == 1 || n >= 2))
        .collect();
    (prop::sample::select(kinds), 0..n, 1..n.max(2)).prop_map(move |(k, a, off)| {
        if k.arity() == 1 {
            GateOp::single(k, a)
        } else {
            GateOp::controlled(k, a, (a + off) % n)
        }
    })
}

fn state_and_op() -> impl Strategy<Value = (StateVector, GateOp)> {
    state(3).prop_flat_map(|s| {
        let (dim, n) = (s.dim(), s.num_qudits());
        (Just(s), op_for(dim, n))
    })
}

fn circuit_doc() -> impl Strategy<Value = CircuitDoc> {
    (dim_strategy(), 1usize..=5).prop_flat_map(|(dim, n)| {
        (
            prop::collection::vec(0..dim.get(), n),
            prop::collection::vec(op_for(dim, n), 0..15),
        )
            .prop_map(move |(init, ops)| CircuitDoc {
                dim,
                num_qudits: n,
                init,
                ops,
            })
    })
}

fn tv_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>() / 2.0
}

proptest! {
    #[test]
    fn gates_preserve_the_norm((s, op) in state_and_op()) {
        let m = gate_matrix(op.gate, s.dim()).unwrap();
        let out = apply_gate(&s, &m, &op.targets).unwrap();
        prop_assert!((out.norm() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn gate_application_is_linear(
        (dim, n, a, b, op) in (dim_strategy(), 1usize..=3).prop_flat_map(|(dim, n)| {
            let len = dim.pow(n);
            (Just(dim), Just(n), raw_amps(len), raw_amps(len), op_for(dim, n))
        }),
        alpha in (-2.0f64..2.0, -2.0f64..2.0),
        beta in (-2.0f64..2.0, -2.0f64..2.0),
    ) {
        let (alpha, beta) = (C64::new(alpha.0, alpha.1), C64::new(beta.0, beta.1));
        let m = gate_matrix(op.gate, dim).unwrap();
        let combo: Vec<C64> = a.iter().zip(&b).map(|(x, y)| alpha * x + beta * y).collect();
        let lhs = apply_gate_raw(dim, n, &combo, &m, &op.targets).unwrap();
        let ga = apply_gate_raw(dim, n, &a, &m, &op.targets).unwrap();
        let gb = apply_gate_raw(dim, n, &b, &m, &op.targets).unwrap();
        for i in 0..lhs.len() {
            prop_assert!((lhs[i] - (alpha * ga[i] + beta * gb[i])).norm() <= 1e-10);
        }
    }

    #[test]
    fn collapse_is_idempotent(s in state(3), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (first, collapsed) = measure_all(&s, &mut rng);
        let (second, again) = measure_all(&collapsed, &mut rng);
        prop_assert_eq!(&first, &second);
        prop_assert_eq!(collapsed, again);
    }

    #[test]
    fn measuring_every_index_matches_a_full_measurement(s in state(3), seed in any::<u64>()) {
        let all: Vec<usize> = (0..s.num_qudits()).collect();
        let joint = marginal(&s, &all).unwrap();
        for (p, q) in joint.iter().zip(s.probability_vector()) {
            prop_assert!((p - q).abs() <= 1e-12);
        }
        let (full, _) = measure_all(&s, &mut ChaCha8Rng::seed_from_u64(seed));
        let (values, _) = measure_subset(&s, &all, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert_eq!(full.values(), values.as_slice());
    }

    #[test]
    fn global_phase_does_not_change_probabilities(s in state(3), theta in 0.0f64..std::f64::consts::TAU) {
        let p = probabilities(&s);
        let q = probabilities(&s.scaled(C64::from_polar(1.0, theta)));
        prop_assert_eq!(p.keys().collect::<Vec<_>>(), q.keys().collect::<Vec<_>>());
        for (k, v) in &p {
            prop_assert!((v - q[k]).abs() <= 1e-12);
        }
    }

    #[test]
    fn printed_circuits_parse_back(doc in circuit_doc()) {
        let text = print_circuit(&doc);
        prop_assert_eq!(parse_circuit(&text).unwrap(), doc);
    }

    /// Components are rounded to 4 decimals (error ≤ 5e-5 each), which bounds
    /// the probability error by 2·√2·5e-5 < 1.5e-4.
    #[test]
    fn formatted_state_reconstructs_amplitudes(s in state(3)) {
        let rows = parse_state_lines(&format_state(&s)).unwrap();
        let mut shown = vec![C64::new(0.0, 0.0); s.amplitudes().len()];
        for (amp, outcome) in rows {
            shown[outcome.to_index(s.dim())] = amp;
        }
        for (a, b) in shown.iter().zip(s.amplitudes()) {
            prop_assert!((a.re - b.re).abs() <= 5e-5 + 1e-12);
            prop_assert!((a.im - b.im).abs() <= 5e-5 + 1e-12);
            prop_assert!((a.norm_sqr() - b.norm_sqr()).abs() <= 1.5e-4);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sampled_frequencies_follow_the_born_rule(s in state(3), seed in any::<u64>()) {
        const SHOTS: u64 = 100_000;
        let h = sample(&s, SHOTS, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let mut freq = vec![0.0; s.amplitudes().len()];
        for (o, c) in &h.counts {
            freq[o.to_index(s.dim())] = *c as f64 / SHOTS as f64;
        }
        prop_assert!(tv_distance(&freq, &s.probability_vector()) <= 0.02);
    }
}
