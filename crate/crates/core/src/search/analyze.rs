use crate::cnf::{Lit, Var};
use crate::propagation::{Assignment, ClauseRef};

use super::Solver;

/// A clause derived by conflict analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LearntClause {
    /// The first literal is the negated first UIP; the second, when present,
    /// has the highest level among the rest. Empty means UNSAT.
    pub lits: Vec<Lit>,
    pub lbd: u32,
    /// Decision level at which the clause becomes asserting.
    pub assertion_level: u32,
}

impl LearntClause {
    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }
}

/// Number of distinct decision levels among `lits`.
///
/// # Panics
///
/// If a literal is unassigned.
pub fn compute_lbd(lits: &[Lit], assignment: &Assignment) -> u32 {
    let mut levels: Vec<u32> = lits
        .iter()
        .map(|l| {
            assert!(
                assignment.is_assigned(l.var()),
                "LBD of an unassigned literal {l}"
            );
            assignment.level(l.var())
        })
        .collect();
    levels.sort_unstable();
    levels.dedup();
    levels.len() as u32
}

impl Solver {
    /// First-UIP analysis of a falsified clause at the current decision level.
    ///
    /// Bumps the activity of every variable met on the way and refreshes the
    /// LBD of every learnt clause taking part.
    pub fn analyze_conflict(&mut self, conflict: ClauseRef) -> LearntClause {
        let conflict_level = self.state.decision_level();
        if conflict_level == 0 {
            return LearntClause {
                lits: Vec::new(),
                lbd: 0,
                assertion_level: 0,
            };
        }

        let mut learnt = vec![Lit::from_code(0)];
        let mut bumped: Vec<Var> = Vec::new();
        let mut pending = 0usize;
        let mut resolved: Option<Lit> = None;
        let mut index = self.state.trail.len();
        let mut reason = conflict;

        loop {
            self.touch_learnt_clause(reason);
            let clause = &self.state.clauses[reason];
            for &q in &clause.lits {
                let var = q.var();
                if resolved.is_some_and(|p| p.var() == var) {
                    continue;
                }
                let level = self.state.assignment.level(var);
                if self.seen[var.index()] || level == 0 {
                    continue;
                }
                self.seen[var.index()] = true;
                bumped.push(var);
                if level == conflict_level {
                    pending += 1;
                } else {
                    learnt.push(q);
                }
            }

            let p = loop {
                index -= 1;
                let lit = self.state.trail.entries()[index].lit;
                if self.seen[lit.var().index()] {
                    break lit;
                }
            };
            self.seen[p.var().index()] = false;
            pending -= 1;
            resolved = Some(p);
            if pending == 0 {
                break;
            }
            reason = self
                .state
                .assignment
                .antecedent(p.var())
                .expect("implied literal without antecedent");
        }

        learnt[0] = !resolved.expect("at least one resolution step");
        for lit in &learnt[1..] {
            self.seen[lit.var().index()] = false;
        }
        self.order.bump_and_decay(&bumped);

        let mut assertion_level = 0;
        if learnt.len() > 1 {
            let (best, level) = learnt[1..]
                .iter()
                .enumerate()
                .map(|(i, l)| (i + 1, self.state.assignment.level(l.var())))
                .max_by_key(|&(i, level)| (level, std::cmp::Reverse(i)))
                .expect("non-empty");
            learnt.swap(1, best);
            assertion_level = level;
        }
        let lbd = compute_lbd(&learnt, &self.state.assignment);
        LearntClause {
            lits: learnt,
            lbd,
            assertion_level,
        }
    }

    fn touch_learnt_clause(&mut self, cref: ClauseRef) {
        if !self.state.clauses[cref].learnt {
            return;
        }
        self.bump_clause(cref);
        let lbd = compute_lbd(&self.state.clauses[cref].lits, &self.state.assignment);
        let clause = self.state.clause_mut(cref);
        if clause.lbd.is_none_or(|old| lbd < old) {
            clause.lbd = Some(lbd);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::Formula;
    use crate::search::SolverConfig;

    fn lit(x: i64) -> Lit {
        Lit::from_dimacs(x).unwrap()
    }

    fn solver(num_vars: usize, clauses: &[&[i64]]) -> Solver {
        let f = Formula::from_dimacs_clauses(num_vars, clauses).unwrap();
        Solver::new(&f, SolverConfig::default()).unwrap()
    }

    #[test]
    fn lbd_counts_distinct_levels() {
        let mut a = Assignment::new(5);
        for (v, level) in [(0, 0), (1, 1), (2, 2), (3, 2), (4, 5)] {
            a.assign(Var::new(v).positive(), level, None);
        }
        let lits: Vec<Lit> = (0..5).map(|v| Var::new(v).negative()).collect();
        assert_eq!(compute_lbd(&lits, &a), 4);
        assert_eq!(compute_lbd(&lits[2..4], &a), 1);
        assert_eq!(compute_lbd(&lits[4..], &a), 1);
    }

    #[test]
    #[should_panic(expected = "unassigned")]
    fn lbd_of_unassigned_literal() {
        compute_lbd(&[lit(1)], &Assignment::new(1));
    }

    #[test]
    fn resolves_chain_to_unit() {
        let mut s = solver(4, &[&[-1, 2], &[-1, 3], &[-2, -3, 4], &[-4, -3]]);
        assert_eq!(s.propagate(), None);
        s.decide_literal(lit(1));
        let conflict = s.propagate().expect("conflict");
        let learnt = s.analyze_conflict(conflict);
        assert_eq!(learnt.lits, vec![lit(-1)]);
        assert_eq!(learnt.assertion_level, 0);
        assert_eq!(learnt.lbd, 1);
    }

    #[test]
    fn level_zero_conflict_gives_empty_clause() {
        let mut s = solver(2, &[&[1, 2], &[1, -2]]);
        assert!(s.state.enqueue(lit(-1), 0, None));
        let conflict = s.propagate().expect("conflict");
        assert!(s.analyze_conflict(conflict).is_empty());
    }

    #[test]
    fn decision_is_the_uip() {
        // Two chains from x1 meet in a conflict that also involves x6 at level 1.
        let mut s = solver(6, &[&[-1, 2], &[-2, 3], &[-1, 4], &[-4, 5], &[-3, -5, -6]]);
        s.decide_literal(lit(6));
        assert_eq!(s.propagate(), None);
        s.decide_literal(lit(1));
        let conflict = s.propagate().expect("conflict");
        let learnt = s.analyze_conflict(conflict);
        assert_eq!(learnt.lits, vec![lit(-1), lit(-6)]);
        assert_eq!(learnt.assertion_level, 1);
        assert_eq!(learnt.lbd, 2);
        let at_conflict_level = learnt
            .lits
            .iter()
            .filter(|l| s.state.assignment.level(l.var()) == 2)
            .count();
        assert_eq!(at_conflict_level, 1);
    }

    #[test]
    fn second_literal_has_highest_level() {
        let mut s = solver(5, &[&[-4, 5], &[-4, -5, -1, -2]]);
        s.decide_literal(lit(1));
        s.decide_literal(lit(2));
        s.decide_literal(lit(3));
        assert_eq!(s.propagate(), None);
        s.decide_literal(lit(4));
        let conflict = s.propagate().expect("conflict");
        let learnt = s.analyze_conflict(conflict);
        assert_eq!(learnt.lits[0], lit(-4));
        assert_eq!(learnt.lits[1], lit(-2));
        assert_eq!(learnt.assertion_level, 2);
    }
}
