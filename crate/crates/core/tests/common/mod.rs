#![allow(dead_code)]

use corefirst::cnf::{Clause, Lit, Var};
use corefirst::propagation::{ClauseRef, PropagationState};
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Shape of a random propagation state.
#[derive(Debug, Clone)]
pub struct StateShape {
    pub min_vars: usize,
    pub max_vars: usize,
    pub clauses_per_var: f64,
    pub learnt_fraction: f64,
    /// Inclusive LBD range for learnt clauses, capped by clause width.
    pub lbd: (u32, u32),
    pub core_threshold: u32,
}

impl StateShape {
    /// Learnt clauses all have LBD above the threshold: nothing is core.
    pub fn without_core() -> StateShape {
        StateShape {
            min_vars: 5,
            max_vars: 14,
            clauses_per_var: 3.0,
            learnt_fraction: 0.4,
            lbd: (2, 6),
            core_threshold: 1,
        }
    }

    pub fn with_core() -> StateShape {
        StateShape {
            lbd: (1, 6),
            core_threshold: 3,
            ..StateShape::without_core()
        }
    }
}

pub fn random_state(rng: &mut ChaCha8Rng, shape: &StateShape) -> PropagationState {
    let n = rng.random_range(shape.min_vars..=shape.max_vars);
    let m = (shape.clauses_per_var * n as f64) as usize;
    let mut state = PropagationState::new(n, shape.core_threshold);
    for _ in 0..m {
        let width = rng.random_range(2..=5.min(n));
        let lits: Vec<Lit> = sample(rng, n, width)
            .into_iter()
            .map(|v| Lit::new(Var::new(v as u32), rng.random()))
            .collect();
        let clause = if rng.random_bool(shape.learnt_fraction) {
            let hi = shape.lbd.1.min(width as u32).max(shape.lbd.0);
            Clause::learnt(lits, rng.random_range(shape.lbd.0..=hi))
        } else {
            Clause::original(lits)
        };
        let cref = state.add_clause(clause);
        state.attach_clause(cref);
    }
    for _ in 0..rng.random_range(0..=2) {
        let lit = Lit::new(Var::new(rng.random_range(0..n) as u32), rng.random());
        state.enqueue(lit, 0, None);
    }
    state
}

/// Moves a state to its next propagation point: after a conflict it
/// backjumps to a random lower level, otherwise it decides a random
/// unassigned literal (or backtracks when everything is assigned). Returns
/// `false` when the state cannot continue.
pub fn advance(
    state: &mut PropagationState,
    rng: &mut ChaCha8Rng,
    conflict: Option<ClauseRef>,
) -> bool {
    let level = state.decision_level();
    if conflict.is_some() {
        if level == 0 {
            return false;
        }
        state.backtrack(rng.random_range(0..level), |_| {});
        return true;
    }
    let unassigned: Vec<usize> = (0..state.num_vars())
        .filter(|&v| !state.assignment().is_assigned(Var::new(v as u32)))
        .collect();
    if unassigned.is_empty() {
        if level == 0 {
            return false;
        }
        state.backtrack(rng.random_range(0..level), |_| {});
        return true;
    }
    let var = Var::new(unassigned[rng.random_range(0..unassigned.len())] as u32);
    state.new_decision_level();
    let level = state.decision_level();
    assert!(state.enqueue(Lit::new(var, rng.random()), level, None));
    true
}

/// Trail, watch lists and head agree exactly.
pub fn same_state(a: &PropagationState, b: &PropagationState) -> bool {
    a.trail().entries() == b.trail().entries()
        && a.trail().propagate_head() == b.trail().propagate_head()
        && a.watches() == b.watches()
}
