//! Iterative-deepening search for a shortest riddle solution.
//!
//! Moves are tried in lexicographic (card token, target indices) order, so
//! the first solution found at the smallest depth is also the
//! lexicographically smallest one of that length. Within one depth, a node
//! already explored with the same rounded state, the same remaining cards and
//! the same remaining depth is skipped.

use std::collections::HashSet;

use super::{check_moves, Riddle, RiddleError, Solution};
use crate::gates::{gate_matrix, run_ops, GateKind, GateMatrix, GateOp};
use crate::qudit::{apply_gate, StateVector};

pub const MAX_SEARCH_DEPTH: usize = 8;

const KEY_SCALE: f64 = 1e9;

type NodeKey = (Vec<(i64, i64)>, Vec<usize>, usize);

fn state_key(s: &StateVector) -> Vec<(i64, i64)> {
    s.amplitudes()
        .iter()
        .map(|a| ((a.re * KEY_SCALE).round() as i64, (a.im * KEY_SCALE).round() as i64))
        .collect()
}

struct Search<'a> {
    riddle: &'a Riddle,
    kinds: Vec<(GateKind, GateMatrix)>,
    // per kind, the target lists in lexicographic order
    targets: Vec<Vec<Vec<usize>>>,
    dead: HashSet<NodeKey>,
}

impl Search<'_> {
    fn dfs(
        &mut self,
        state: &StateVector,
        counts: &mut [usize],
        depth_left: usize,
        path: &mut Vec<GateOp>,
    ) -> bool {
        if depth_left == 0 {
            return self.riddle.goal.is_met(state);
        }
        let key = (state_key(state), counts.to_vec(), depth_left);
        if self.dead.contains(&key) {
            return false;
        }
        for k in 0..self.kinds.len() {
            if counts[k] == 0 {
                continue;
            }
            counts[k] -= 1;
            for t in 0..self.targets[k].len() {
                let targets = self.targets[k][t].clone();
                let next = apply_gate(state, &self.kinds[k].1, &targets)
                    .expect("targets enumerated within range");
                path.push(GateOp {
                    gate: self.kinds[k].0,
                    targets,
                });
                if self.dfs(&next, counts, depth_left - 1, path) {
                    counts[k] += 1;
                    return true;
                }
                path.pop();
            }
            counts[k] += 1;
        }
        self.dead.insert(key);
        false
    }
}

fn targets_for(gate: GateKind, n: usize) -> Vec<Vec<usize>> {
    if gate.arity() == 1 {
        (0..n).map(|q| vec![q]).collect()
    } else {
        (0..n)
            .flat_map(|c| (0..n).filter(move |&t| t != c).map(move |t| vec![c, t]))
            .collect()
    }
}

/// Shortest continuation of `prefix` that meets the goal, using only the
/// cards `prefix` left unused. Depth is capped by `max_depth`, the riddle's
/// `max_cards` and [`MAX_SEARCH_DEPTH`].
pub fn solve_from(
    r: &Riddle,
    prefix: &[GateOp],
    max_depth: usize,
) -> Result<Option<Solution>, RiddleError> {
    r.validate()?;
    check_moves(r, prefix)?;
    let start = run_ops(&r.initial_state()?, prefix)?;

    let counts_by_kind = r.allowed_counts();
    let mut counts: Vec<usize> = counts_by_kind
        .iter()
        .map(|&(k, n)| n - prefix.iter().filter(|op| op.gate == k).count())
        .collect();
    let kinds = counts_by_kind
        .iter()
        .map(|&(k, _)| Ok((k, gate_matrix(k, r.dim).map_err(crate::Error::from)?)))
        .collect::<Result<Vec<_>, RiddleError>>()?;
    let targets = kinds
        .iter()
        .map(|(k, _)| targets_for(*k, r.num_qudits))
        .collect();

    let limit = max_depth
        .min(MAX_SEARCH_DEPTH)
        .min(r.max_cards - prefix.len());
    let mut search = Search {
        riddle: r,
        kinds,
        targets,
        dead: HashSet::new(),
    };
    for depth in 0..=limit {
        search.dead.clear();
        let mut path = Vec::with_capacity(depth);
        if search.dfs(&start, &mut counts, depth, &mut path) {
            return Ok(Some(path));
        }
    }
    Ok(None)
}

/// Shortest solution within `max_depth` cards, or `None` if there is none.
pub fn solve(r: &Riddle, max_depth: usize) -> Result<Option<Solution>, RiddleError> {
    solve_from(r, &[], max_depth)
}
