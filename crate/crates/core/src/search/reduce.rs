use std::cmp::Ordering;

use crate::propagation::{is_core_clause, ClauseRef};

use super::{Solver, SolverError};

impl Solver {
    /// Deletes the less active half of the non-core learnt clauses.
    ///
    /// Core clauses are kept for good, as is every clause that is currently
    /// the antecedent of an assignment. Returns the deleted clauses.
    pub fn reduce_clause_db(&mut self) -> Result<Vec<ClauseRef>, SolverError> {
        let mut locked = vec![false; self.state.clauses.len()];
        for entry in self.state.trail.entries() {
            if let Some(cref) = entry.antecedent {
                locked[cref.index()] = true;
            }
        }
        let threshold = self.config.core_lbd_threshold;
        let mut candidates: Vec<(ClauseRef, f64)> = self
            .state
            .clauses
            .iter()
            .filter(|(cref, c)| c.learnt && !locked[cref.index()] && !is_core_clause(c, threshold))
            .map(|(cref, c)| (cref, c.activity))
            .collect();
        candidates.sort_by(|a, b| {
            a.1.partial_cmp(&b.1)
                .unwrap_or(Ordering::Equal)
                .then(a.0.cmp(&b.0))
        });
        candidates.truncate(candidates.len() / 2);

        let deleted: Vec<ClauseRef> = candidates.into_iter().map(|(cref, _)| cref).collect();
        for &cref in &deleted {
            self.proof.log_delete(&self.state.clauses[cref].lits)?;
            self.state.delete_clause(cref);
        }
        self.stats.reductions += 1;
        self.stats.deleted += deleted.len() as u64;
        Ok(deleted)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{Clause, Formula, Lit};
    use crate::search::SolverConfig;
    use proptest::prelude::*;

    fn lits(xs: &[i64]) -> Vec<Lit> {
        xs.iter().map(|&x| Lit::from_dimacs(x).unwrap()).collect()
    }

    fn solver_with_learnts(learnts: &[(Vec<i64>, u32, f64)]) -> (Solver, Vec<ClauseRef>) {
        let mut s = Solver::new(&Formula::new(8), SolverConfig::default()).unwrap();
        let crefs = learnts
            .iter()
            .map(|(c, lbd, act)| {
                let mut clause = Clause::learnt(lits(c), *lbd);
                clause.activity = *act;
                let cref = s.state.add_clause(clause);
                s.state.attach_clause(cref);
                cref
            })
            .collect();
        (s, crefs)
    }

    #[test]
    fn core_clauses_are_never_deleted() {
        let (mut s, crefs) = solver_with_learnts(&[
            (vec![1, 2, 3], 2, 0.0),
            (vec![1, 2, 4], 7, 0.0),
            (vec![2, 3, 4], 3, 1.0),
        ]);
        assert!(s.reduce_clause_db().unwrap().is_empty());
        assert!(crefs.iter().all(|&c| !s.state.clause(c).deleted));
    }

    #[test]
    fn antecedents_survive() {
        let (mut s, crefs) =
            solver_with_learnts(&[(vec![1, 2, 3], 9, 0.0), (vec![4, 5, 6], 9, 5.0)]);
        s.decide_literal(Lit::from_dimacs(-2).unwrap());
        s.decide_literal(Lit::from_dimacs(-3).unwrap());
        assert_eq!(s.propagate(), None);
        assert_eq!(
            s.state
                .assignment
                .antecedent(Lit::from_dimacs(1).unwrap().var()),
            Some(crefs[0])
        );
        let deleted = s.reduce_clause_db().unwrap();
        assert!(deleted.is_empty());
        assert!(!s.state.clause(crefs[0]).deleted);
    }

    #[test]
    fn deletion_is_logged_and_detached() {
        let (mut s, crefs) =
            solver_with_learnts(&[(vec![1, 2, 3], 9, 0.0), (vec![4, 5, 6], 9, 5.0)]);
        s.set_proof(crate::proof::ProofLog::in_memory());
        assert_eq!(s.reduce_clause_db().unwrap(), vec![crefs[0]]);
        assert_eq!(s.take_proof_text().unwrap(), "d 1 2 3 0\n");
        s.state.check_consistency().unwrap();
    }

    proptest! {
        #[test]
        fn survivors_outrank_deleted(acts in prop::collection::vec((0.0f64..100.0, 1u32..12), 1..40)) {
            let learnts: Vec<_> = acts
                .iter()
                .enumerate()
                .map(|(i, &(act, lbd))| {
                    let base = (i % 6) as i64;
                    (vec![base + 1, base + 2, base + 3], lbd, act)
                })
                .collect();
            let (mut s, crefs) = solver_with_learnts(&learnts);
            let deleted = s.reduce_clause_db().unwrap();
            let non_core: Vec<_> = crefs.iter().zip(&acts).filter(|(_, (_, lbd))| *lbd > 7).collect();
            prop_assert_eq!(deleted.len(), non_core.len() / 2);
            let max_deleted = deleted.iter().map(|c| acts[c.index()].0).fold(f64::MIN, f64::max);
            for (cref, (act, _)) in non_core {
                if !deleted.contains(cref) {
                    prop_assert!(*act >= max_deleted);
                }
            }
            prop_assert!(s.state.check_consistency().is_ok());
        }
    }
}
