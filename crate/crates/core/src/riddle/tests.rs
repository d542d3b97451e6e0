use super::*;
use crate::qudit::C64;
use GateKind::*;

fn op(gate: GateKind, targets: &[usize]) -> GateOp {
    GateOp {
        gate,
        targets: targets.to_vec(),
    }
}

/// Plain enumeration of every card sequence of exactly `len` moves, no
/// pruning, no ordering tricks. Returns all sequences that pass
/// `check_solution`.
fn brute_force(r: &Riddle, len: usize) -> Vec<Vec<GateOp>> {
    let mut moves = Vec::new();
    let mut kinds = r.allowed.clone();
    kinds.sort_by_key(|k| k.token());
    kinds.dedup();
    for k in kinds {
        for a in 0..r.num_qudits {
            if k.arity() == 1 {
                moves.push(op(k, &[a]));
            } else {
                for b in 0..r.num_qudits {
                    if a != b {
                        moves.push(op(k, &[a, b]));
                    }
                }
            }
        }
    }
    let mut found = Vec::new();
    let mut idx = vec![0usize; len];
    loop {
        let seq: Vec<GateOp> = idx.iter().map(|&i| moves[i].clone()).collect();
        if let Ok((true, _)) = check_solution(r, &seq) {
            found.push(seq);
        }
        // odometer increment
        let mut k = len;
        loop {
            if k == 0 {
                return found;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < moves.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[test]
fn six_builtin_riddles_are_valid() {
    let rs = builtin_riddles();
    assert_eq!(rs.len(), 6);
    for (i, r) in rs.iter().enumerate() {
        assert_eq!(r.id as usize, i + 1);
        r.validate().unwrap();
        assert!(!r.explanation.is_empty());
    }
}

#[test]
fn reference_solutions_check_true() {
    let refs: Vec<(u32, Vec<GateOp>)> = vec![
        (1, vec![op(H1, &[0])]),
        (2, vec![op(H1, &[0]), op(Z, &[0]), op(H1, &[0])]),
        (3, vec![op(H1, &[0]), op(CX, &[0, 1])]),
        (4, vec![op(H1, &[0]), op(CX, &[0, 1]), op(X1, &[1])]),
        (5, vec![op(H1, &[0]), op(CX, &[0, 1]), op(CX, &[0, 2])]),
        (6, vec![op(X1, &[0]), op(X1, &[0])]),
        (6, vec![op(X1, &[0]), op(H1, &[0]), op(H1, &[0])]),
    ];
    for (id, sol) in refs {
        let r = builtin_riddle(id).unwrap();
        let (ok, _) = check_solution(&r, &sol).unwrap();
        assert!(ok, "riddle {id}");
    }
}

#[test]
fn riddle_two_wrong_answers() {
    let r = builtin_riddle(2).unwrap();
    let (ok, end) = check_solution(&r, &[op(H1, &[0]), op(H1, &[0])]).unwrap();
    assert!(!ok);
    assert!((end.amplitudes()[0] - C64::new(1.0, 0.0)).norm() < 1e-12);

    let (ok, end) = check_solution(&r, &[op(Z, &[0]), op(H1, &[0]), op(H1, &[0])]).unwrap();
    assert!(!ok);
    assert!((end.amplitudes()[0].norm() - 1.0).abs() < 1e-12);

    let (ok, end) = check_solution(&r, &[op(H1, &[0]), op(Z, &[0]), op(H1, &[0])]).unwrap();
    assert!(ok);
    assert!((end.amplitudes()[1] - C64::new(1.0, 0.0)).norm() < 1e-12);
}

#[test]
fn disallowed_cards_are_not_wrong_answers() {
    let r = builtin_riddle(2).unwrap();
    assert_eq!(
        check_solution(&r, &[op(X1, &[0])]).unwrap_err(),
        RiddleError::DisallowedCard(X1)
    );
    // only one Z available
    assert_eq!(
        check_solution(&r, &[op(Z, &[0]), op(Z, &[0])]).unwrap_err(),
        RiddleError::DisallowedCard(Z)
    );
    assert!(matches!(
        check_solution(&r, &[op(H1, &[0]), op(H1, &[0]), op(Z, &[0]), op(H1, &[0])]),
        Err(RiddleError::TooManyCards { max: 3, got: 4 })
    ));
    assert!(matches!(
        check_solution(&r, &[op(H1, &[1])]),
        Err(RiddleError::InvalidTarget(_))
    ));
}

#[test]
fn bell_predicate_is_exact() {
    let r = builtin_riddle(3).unwrap();
    let (_, end) = check_solution(&r, &[op(H1, &[0]), op(CX, &[0, 1])]).unwrap();
    let p = crate::qudit::probabilities(&end);
    let same: f64 = p
        .iter()
        .filter(|(o, _)| o.values()[0] == o.values()[1])
        .map(|(_, p)| p)
        .sum();
    assert!((same - 1.0).abs() < 1e-10);
    // |0,0> is perfectly correlated but not random: not a solution to riddle 5's predicate
    assert!(!OutcomePredicate::Correlated { shift: 0 }
        .holds(&crate::qudit::basis_state(Dim::QUBIT, &[0, 0]).unwrap()));
}

#[test]
fn solver_finds_expected_shortest_solutions() {
    let r2 = builtin_riddle(2).unwrap();
    assert_eq!(
        solve(&r2, 8).unwrap().unwrap(),
        vec![op(H1, &[0]), op(Z, &[0]), op(H1, &[0])]
    );
    let r3 = builtin_riddle(3).unwrap();
    assert_eq!(
        solve(&r3, 8).unwrap().unwrap(),
        vec![op(H1, &[0]), op(CX, &[0, 1])]
    );
    let r6 = builtin_riddle(6).unwrap();
    assert_eq!(solve(&r6, 8).unwrap().unwrap(), vec![op(X1, &[0]), op(X1, &[0])]);
}

#[test]
fn solver_agrees_with_brute_force_on_every_builtin() {
    for r in builtin_riddles() {
        let sol = solve(&r, MAX_SEARCH_DEPTH).unwrap().expect("solvable");
        assert!(sol.len() <= r.max_cards);
        assert!(check_solution(&r, &sol).unwrap().0, "riddle {}", r.id);
        for shorter in 0..sol.len() {
            assert!(brute_force(&r, shorter).is_empty(), "riddle {} at length {shorter}", r.id);
        }
        let same_len = brute_force(&r, sol.len());
        let smallest = same_len
            .iter()
            .min_by(|a, b| {
                let ka: Vec<_> = a.iter().map(|o| (o.gate.token(), o.targets.clone())).collect();
                let kb: Vec<_> = b.iter().map(|o| (o.gate.token(), o.targets.clone())).collect();
                ka.cmp(&kb)
            })
            .unwrap();
        assert_eq!(&sol, smallest, "riddle {} tie-break", r.id);
    }
}

#[test]
fn already_solved_riddle_gives_empty_solution() {
    let r = Riddle {
        id: 99,
        dim: Dim::QUBIT,
        num_qudits: 1,
        initial: vec![1],
        allowed: vec![H1],
        goal: Goal::TargetState(crate::qudit::basis_state(Dim::QUBIT, &[1]).unwrap()),
        max_cards: 1,
        difficulty: Difficulty::Easy,
        explanation: String::new(),
    };
    assert_eq!(solve(&r, 8).unwrap(), Some(vec![]));
}

#[test]
fn unsolvable_riddle_returns_none() {
    // only Hadamards from |0> at d=3 never reach |2>
    let r = Riddle {
        id: 98,
        dim: Dim::QUTRIT,
        num_qudits: 1,
        initial: vec![0],
        allowed: vec![H1; 6],
        goal: Goal::TargetState(crate::qudit::basis_state(Dim::QUTRIT, &[2]).unwrap()),
        max_cards: 6,
        difficulty: Difficulty::Hard,
        explanation: String::new(),
    };
    assert_eq!(solve(&r, 8).unwrap(), None);
}

#[test]
fn solve_from_prefix_gives_hint() {
    let r = builtin_riddle(2).unwrap();
    let rest = solve_from(&r, &[op(H1, &[0])], 8).unwrap().unwrap();
    assert_eq!(rest, vec![op(Z, &[0]), op(H1, &[0])]);
    // a dead-end prefix has no continuation
    let rest = solve_from(&r, &[op(H1, &[0]), op(H1, &[0])], 8).unwrap();
    assert_eq!(rest, None);
}

#[test]
fn riddle_validation() {
    let mut r = builtin_riddle(3).unwrap();
    r.max_cards = 0;
    assert!(matches!(r.validate(), Err(RiddleError::Invalid(_))));
    let mut r = builtin_riddle(2).unwrap();
    r.allowed.push(X2);
    assert!(r.validate().is_err());
    let mut r = builtin_riddle(2).unwrap();
    r.goal = Goal::TargetState(crate::qudit::basis_state(Dim::QUBIT, &[0, 0]).unwrap());
    assert!(r.validate().is_err());
}
