//! Benchmark and test instance families.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cnf::{Formula, Lit, Var};

/// Uniform random k-SAT: `num_clauses` clauses, each over `k` distinct
/// variables with random polarities. Deterministic in `seed`.
pub fn random_ksat(num_vars: usize, num_clauses: usize, k: usize, seed: u64) -> Formula {
    assert!(
        k <= num_vars,
        "clause width {k} exceeds {num_vars} variables"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut formula = Formula::new(num_vars);
    for _ in 0..num_clauses {
        let lits = sample(&mut rng, num_vars, k)
            .into_iter()
            .map(|v| Lit::new(Var::new(v as u32), rng.random()))
            .collect();
        formula.add_clause(lits);
    }
    formula
}

/// Random 3-SAT with `round(ratio * num_vars)` clauses.
pub fn random_3sat(num_vars: usize, ratio: f64, seed: u64) -> Formula {
    let num_clauses = (ratio * num_vars as f64).round() as usize;
    random_ksat(num_vars, num_clauses, 3, seed)
}

/// Pigeonhole principle: `pigeons` pigeons into `holes` holes, at most one
/// pigeon per hole. Unsatisfiable whenever `pigeons > holes`.
///
/// Variable `i * holes + j + 1` says pigeon `i` sits in hole `j`.
pub fn pigeonhole(pigeons: usize, holes: usize) -> Formula {
    let var = |i: usize, j: usize| Var::new((i * holes + j) as u32);
    let mut formula = Formula::new(pigeons * holes);
    for i in 0..pigeons {
        formula.add_clause((0..holes).map(|j| var(i, j).positive()).collect());
    }
    for j in 0..holes {
        for a in 0..pigeons {
            for b in a + 1..pigeons {
                formula.add_clause(vec![var(a, j).negative(), var(b, j).negative()]);
            }
        }
    }
    formula
}

/// Random 3-SAT instances with a planted solution: clauses falsified by a
/// hidden random assignment are rejected, so the result is always
/// satisfiable.
pub fn planted_3sat(num_vars: usize, ratio: f64, seed: u64) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hidden: Vec<bool> = (0..num_vars).map(|_| rng.random()).collect();
    let target = (ratio * num_vars as f64).round() as usize;
    let mut formula = Formula::new(num_vars);
    while formula.num_clauses() < target {
        let lits: Vec<Lit> = sample(&mut rng, num_vars, 3)
            .into_iter()
            .map(|v| Lit::new(Var::new(v as u32), rng.random()))
            .collect();
        if lits
            .iter()
            .any(|l| hidden[l.var().index()] == l.is_positive())
        {
            formula.add_clause(lits);
        }
    }
    formula
}
