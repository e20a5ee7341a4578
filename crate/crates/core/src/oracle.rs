//! Independent ground truth for tests: exhaustive solving, model checking and
//! a forward RUP proof checker.
//!
//! Nothing here shares code with the solver's propagation; the checker runs
//! its own occurrence-list propagation over DIMACS integers.

use std::collections::HashMap;

use thiserror::Error;

use crate::cnf::Formula;
use crate::proof::ProofStep;

/// Largest formula [`brute_force_solve`] accepts.
pub const MAX_BRUTE_FORCE_VARS: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} variables exceed the enumeration bound of {MAX_BRUTE_FORCE_VARS}")]
    TooManyVariables(usize),
    #[error("model assigns {got} of {expected} variables")]
    IncompleteModel { got: usize, expected: usize },
    #[error("proof literal {0} exceeds the formula's variables")]
    UnknownVariable(i64),
}

/// Exhaustive SAT decision. Returns the satisfying assignment that comes
/// first in binary counting order (variable 1 is the lowest bit).
pub fn brute_force_solve(formula: &Formula) -> Result<Option<Vec<bool>>, OracleError> {
    let n = formula.num_vars;
    if n > MAX_BRUTE_FORCE_VARS {
        return Err(OracleError::TooManyVariables(n));
    }
    if formula.contains_empty {
        return Ok(None);
    }
    let masks: Vec<(u32, u32)> = formula
        .clauses
        .iter()
        .map(|c| {
            c.to_dimacs().iter().fold((0, 0), |(pos, neg), &x| {
                let bit = 1u32 << (x.unsigned_abs() - 1);
                if x > 0 {
                    (pos | bit, neg)
                } else {
                    (pos, neg | bit)
                }
            })
        })
        .collect();
    for bits in 0u32..(1u32 << n) {
        if masks
            .iter()
            .all(|&(pos, neg)| (pos & bits) | (neg & !bits) != 0)
        {
            return Ok(Some((0..n).map(|v| bits >> v & 1 == 1).collect()));
        }
    }
    Ok(None)
}

/// True iff every clause has a literal made true by `model`.
pub fn check_model(formula: &Formula, model: &[bool]) -> Result<bool, OracleError> {
    if model.len() < formula.num_vars {
        return Err(OracleError::IncompleteModel {
            got: model.len(),
            expected: formula.num_vars,
        });
    }
    Ok(!formula.contains_empty
        && formula.clauses.iter().all(|c| {
            c.to_dimacs()
                .iter()
                .any(|&x| model[x.unsigned_abs() as usize - 1] == (x > 0))
        }))
}

/// Forward RUP checking of a clausal proof.
///
/// Every added clause must yield a conflict by unit propagation once its
/// literals are assumed false, over the original clauses plus all earlier
/// additions minus deletions. The proof must derive the empty clause.
pub fn check_rup_proof(formula: &Formula, proof: &[ProofStep]) -> Result<bool, OracleError> {
    let mut checker = RupChecker::new(formula.num_vars);
    if formula.contains_empty {
        checker.add(Vec::new());
    }
    for clause in formula.to_dimacs_clauses() {
        checker.add(clause);
    }
    for step in proof {
        match step {
            ProofStep::Add(lits) => {
                checker.check_vars(lits)?;
                if !checker.is_rup(lits) {
                    return Ok(false);
                }
                if lits.is_empty() {
                    return Ok(true);
                }
                checker.add(lits.clone());
            }
            ProofStep::Delete(lits) => {
                checker.check_vars(lits)?;
                checker.delete(lits);
            }
        }
    }
    Ok(false)
}

struct RupChecker {
    num_vars: usize,
    clauses: Vec<Vec<i64>>,
    active: Vec<bool>,
    /// Clause ids by literal; may contain inactive ids.
    occurrences: HashMap<i64, Vec<usize>>,
    /// Active clause ids by sorted literal multiset.
    by_key: HashMap<Vec<i64>, Vec<usize>>,
}

impl RupChecker {
    fn new(num_vars: usize) -> RupChecker {
        RupChecker {
            num_vars,
            clauses: Vec::new(),
            active: Vec::new(),
            occurrences: HashMap::new(),
            by_key: HashMap::new(),
        }
    }

    fn check_vars(&self, lits: &[i64]) -> Result<(), OracleError> {
        match lits
            .iter()
            .find(|x| x.unsigned_abs() as usize > self.num_vars)
        {
            Some(&x) => Err(OracleError::UnknownVariable(x)),
            None => Ok(()),
        }
    }

    fn key(lits: &[i64]) -> Vec<i64> {
        let mut key = lits.to_vec();
        key.sort_unstable();
        key.dedup();
        key
    }

    fn add(&mut self, lits: Vec<i64>) {
        let id = self.clauses.len();
        for &x in &lits {
            self.occurrences.entry(x).or_default().push(id);
        }
        self.by_key.entry(Self::key(&lits)).or_default().push(id);
        self.clauses.push(lits);
        self.active.push(true);
    }

    fn delete(&mut self, lits: &[i64]) {
        if let Some(ids) = self.by_key.get_mut(&Self::key(lits)) {
            if let Some(id) = ids.pop() {
                self.active[id] = false;
            }
        }
    }

    /// Value of literal `x` under `values` (indexed by variable): Some(true)
    /// if satisfied.
    fn value(values: &[Option<bool>], x: i64) -> Option<bool> {
        values[x.unsigned_abs() as usize].map(|v| v == (x > 0))
    }

    fn is_rup(&self, lemma: &[i64]) -> bool {
        let mut values: Vec<Option<bool>> = vec![None; self.num_vars + 1];
        let mut queue: Vec<i64> = Vec::new();

        let assign = |values: &mut Vec<Option<bool>>, queue: &mut Vec<i64>, x: i64| -> bool {
            match Self::value(values, x) {
                Some(true) => true,
                Some(false) => false,
                None => {
                    values[x.unsigned_abs() as usize] = Some(x > 0);
                    queue.push(x);
                    true
                }
            }
        };

        for &x in lemma {
            if !assign(&mut values, &mut queue, -x) {
                return true;
            }
        }
        for (id, clause) in self.clauses.iter().enumerate() {
            if !self.active[id] {
                continue;
            }
            match clause.len() {
                0 => return true,
                1 if !assign(&mut values, &mut queue, clause[0]) => return true,
                _ => {}
            }
        }

        let mut head = 0;
        while head < queue.len() {
            let falsified = -queue[head];
            head += 1;
            let Some(ids) = self.occurrences.get(&falsified) else {
                continue;
            };
            for &id in ids {
                if !self.active[id] {
                    continue;
                }
                let mut unassigned = None;
                let mut open = 0;
                let mut satisfied = false;
                for &y in &self.clauses[id] {
                    match Self::value(&values, y) {
                        Some(true) => {
                            satisfied = true;
                            break;
                        }
                        Some(false) => {}
                        None => {
                            open += 1;
                            unassigned = Some(y);
                        }
                    }
                }
                if satisfied {
                    continue;
                }
                match (open, unassigned) {
                    (0, _) => return true,
                    (1, Some(y)) => {
                        assign(&mut values, &mut queue, y);
                    }
                    _ => {}
                }
            }
        }
        false
    }
}
