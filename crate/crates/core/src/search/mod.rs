//! The CDCL search loop.
//!
//! Each round propagates with the engine chosen by [`select_propagator`]. A
//! conflict is analysed to its first UIP; the learnt clause is logged, stored
//! and asserted after backjumping to its assertion level. Without a conflict
//! the solver checks for a restart (Luby), then for a clause-database
//! reduction, then decides on the most active unassigned variable.

mod analyze;
mod config;
mod reduce;
mod restart;
mod vsids;

pub use analyze::{compute_lbd, LearntClause};
pub use config::{select_propagator, PropagationMode, ReduceConfig, RestartConfig, SolverConfig};
pub use restart::{luby, LubyRestarts};
pub use vsids::VarOrder;

use std::io;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cnf::{Clause, Formula, Lit, Var};
use crate::proof::ProofLog;
use crate::propagation::{ClauseRef, Engine, LBool, PartitionAudit, PropagationState};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
    #[error("proof output failed: {0}")]
    Proof(#[from] io::Error),
}

/// A total assignment, indexed by variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model(Vec<bool>);

impl Model {
    pub fn new(values: Vec<bool>) -> Model {
        Model(values)
    }

    pub fn value(&self, var: Var) -> bool {
        self.0[var.index()]
    }

    pub fn lit_value(&self, lit: Lit) -> bool {
        self.value(lit.var()) == lit.is_positive()
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Signed DIMACS literals, one per variable.
    pub fn to_dimacs(&self) -> Vec<i64> {
        (0..self.0.len())
            .map(|v| {
                let d = v as i64 + 1;
                if self.0[v] {
                    d
                } else {
                    -d
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Sat(Model),
    Unsat,
    /// Conflict or time budget exhausted.
    Unknown,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveResult::Sat(_))
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, SolveResult::Unsat)
    }

    pub fn status(&self) -> &'static str {
        match self {
            SolveResult::Sat(_) => "SAT",
            SolveResult::Unsat => "UNSAT",
            SolveResult::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SearchStats {
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub restarts: u64,
    pub reductions: u64,
    pub deleted: u64,
    /// Learnt clauses that were core when learnt.
    pub learnt_core: u64,
    pub learnt_total: u64,
    /// Propagation rounds run by each engine.
    pub core_first_rounds: u64,
    pub standard_rounds: u64,
    pub elapsed: Duration,
}

/// Results of the checks enabled by [`SolverConfig::audit`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Audit {
    pub partition: PartitionAudit,
    pub learnt_checked: u64,
    /// Learnt clauses that were not asserting, had an LBD outside
    /// `1..=len`, or did not propagate after backjumping.
    pub learnt_violations: u64,
}

#[derive(Debug)]
pub struct Solver {
    config: SolverConfig,
    pub(crate) state: PropagationState,
    order: VarOrder,
    phases: Vec<bool>,
    restarts: LubyRestarts,
    next_reduce: u64,
    reduce_gap: u64,
    clause_increment: f64,
    stats: SearchStats,
    proof: ProofLog,
    rng: ChaCha8Rng,
    audit: Option<Audit>,
    seen: Vec<bool>,
    /// The formula is already known to be unsatisfiable.
    refuted: bool,
}

impl Solver {
    pub fn new(formula: &Formula, config: SolverConfig) -> Result<Solver, SolverError> {
        config.validate().map_err(SolverError::InvalidConfig)?;
        let n = formula.num_vars;
        let mut state = PropagationState::new(n, config.core_lbd_threshold);
        if config.audit {
            state.enable_partition_audit();
        }
        let mut solver = Solver {
            order: VarOrder::new(n, config.var_decay),
            phases: vec![false; n],
            restarts: LubyRestarts::new(config.restart.luby_base),
            next_reduce: config.reduce.first,
            reduce_gap: config.reduce.first,
            clause_increment: 1.0,
            stats: SearchStats::default(),
            proof: ProofLog::disabled(),
            rng: ChaCha8Rng::seed_from_u64(config.rng_seed),
            audit: config.audit.then(Audit::default),
            seen: vec![false; n],
            refuted: formula.contains_empty,
            state,
            config,
        };
        for clause in &formula.clauses {
            match clause.len() {
                0 => solver.refuted = true,
                1 => {
                    if !solver.state.enqueue(clause.lits[0], 0, None) {
                        solver.refuted = true;
                    }
                }
                _ => {
                    let cref = solver
                        .state
                        .add_clause(Clause::original(clause.lits.clone()));
                    solver.state.attach_clause(cref);
                }
            }
        }
        Ok(solver)
    }

    /// Routes proof lines to `proof` from now on.
    pub fn set_proof(&mut self, proof: ProofLog) {
        self.proof = proof;
    }

    pub fn take_proof_text(&mut self) -> Option<String> {
        self.proof.take_text()
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn stats(&self) -> &SearchStats {
        &self.stats
    }

    pub fn state(&self) -> &PropagationState {
        &self.state
    }

    pub fn order(&self) -> &VarOrder {
        &self.order
    }

    pub fn audit(&self) -> Option<Audit> {
        self.audit.map(|mut a| {
            a.partition = self.state.partition_audit().unwrap_or_default();
            a
        })
    }

    /// Runs the search until a verdict or until a budget runs out.
    pub fn solve(&mut self) -> Result<SolveResult, SolverError> {
        let start = Instant::now();
        let result = self.search(start);
        self.stats.elapsed += start.elapsed();
        self.stats.propagations = self.state.propagations();
        self.proof.flush()?;
        result
    }

    fn search(&mut self, start: Instant) -> Result<SolveResult, SolverError> {
        if self.refuted {
            self.proof.log_add(&[])?;
            return Ok(SolveResult::Unsat);
        }
        loop {
            match self.propagate() {
                Some(conflict) => {
                    self.stats.conflicts += 1;
                    if self.state.decision_level() == 0 {
                        self.refuted = true;
                        self.proof.log_add(&[])?;
                        return Ok(SolveResult::Unsat);
                    }
                    let learnt = self.analyze_conflict(conflict);
                    self.learn(learnt)?;
                    self.clause_increment /= self.config.clause_decay;
                    if self.out_of_budget(start) {
                        return Ok(SolveResult::Unknown);
                    }
                }
                None => {
                    if self.should_restart() {
                        self.restart();
                    }
                    if self.stats.conflicts >= self.next_reduce {
                        self.reduce_gap += self.config.reduce.increment;
                        self.next_reduce = self.stats.conflicts + self.reduce_gap;
                        self.reduce_clause_db()?;
                    }
                    if self.decide().is_none() {
                        return Ok(SolveResult::Sat(self.model()));
                    }
                }
            }
        }
    }

    fn out_of_budget(&self, start: Instant) -> bool {
        if self
            .config
            .max_conflicts
            .is_some_and(|max| self.stats.conflicts >= max)
        {
            return true;
        }
        self.config
            .time_limit
            .is_some_and(|limit| self.stats.elapsed + start.elapsed() >= limit)
    }

    /// One propagation round with the engine chosen for the current conflict count.
    pub fn propagate(&mut self) -> Option<ClauseRef> {
        let engine = select_propagator(&self.stats, &self.config);
        match engine {
            Engine::CoreFirst => self.stats.core_first_rounds += 1,
            Engine::Standard => self.stats.standard_rounds += 1,
        }
        self.state.propagate(engine)
    }

    fn learn(&mut self, learnt: LearntClause) -> Result<(), SolverError> {
        let conflict_level = self.state.decision_level();
        if let Some(audit) = self.audit.as_mut() {
            audit.learnt_checked += 1;
            let at_conflict_level = learnt
                .lits
                .iter()
                .filter(|l| self.state.assignment.level(l.var()) == conflict_level)
                .count();
            let lbd_ok = 1 <= learnt.lbd && learnt.lbd as usize <= learnt.lits.len();
            if at_conflict_level != 1 || !lbd_ok {
                audit.learnt_violations += 1;
            }
        }

        self.backtrack(learnt.assertion_level);
        self.proof.log_add(&learnt.lits)?;
        self.stats.learnt_total += 1;
        if learnt.lbd <= self.config.core_lbd_threshold {
            self.stats.learnt_core += 1;
        }

        if let Some(audit) = self.audit.as_mut() {
            let asserting = self.state.assignment.value(learnt.lits[0]) == LBool::Undef
                && learnt.lits[1..]
                    .iter()
                    .all(|&l| self.state.assignment.is_false(l));
            if !asserting {
                audit.learnt_violations += 1;
            }
        }

        let asserted = learnt.lits[0];
        let level = self.state.decision_level();
        if learnt.lits.len() == 1 {
            self.state.enqueue(asserted, 0, None);
        } else {
            let cref = self
                .state
                .add_clause(Clause::learnt(learnt.lits, learnt.lbd));
            self.state.attach_clause(cref);
            self.bump_clause(cref);
            self.state.enqueue(asserted, level, Some(cref));
        }
        Ok(())
    }

    pub(crate) fn bump_clause(&mut self, cref: ClauseRef) {
        let clause = self.state.clause_mut(cref);
        clause.activity += self.clause_increment;
        if clause.activity > 1e20 {
            self.rescale_clause_activity();
        }
    }

    fn rescale_clause_activity(&mut self) {
        let refs: Vec<ClauseRef> = self
            .state
            .clauses
            .iter()
            .filter(|(_, c)| c.learnt)
            .map(|(cref, _)| cref)
            .collect();
        for cref in refs {
            self.state.clause_mut(cref).activity *= 1e-20;
        }
        self.clause_increment *= 1e-20;
    }

    /// Undoes every assignment above `level`, saving phases.
    pub fn backtrack(&mut self, level: u32) {
        let phases = &mut self.phases;
        let order = &mut self.order;
        self.state.backtrack(level, |lit| {
            phases[lit.var().index()] = lit.is_positive();
            order.insert(lit.var());
        });
    }

    pub fn should_restart(&self) -> bool {
        self.restarts.should_restart(&self.stats)
    }

    fn restart(&mut self) {
        self.backtrack(0);
        self.stats.restarts += 1;
        self.restarts.restarted(&self.stats);
    }

    /// Picks the most active unassigned variable with its saved phase and
    /// assigns it on a new decision level. `None` when every variable is
    /// assigned.
    pub fn decide(&mut self) -> Option<Lit> {
        let mut var = None;
        if self.config.random_var_freq > 0.0
            && !self.order.is_empty()
            && self.rng.random::<f64>() < self.config.random_var_freq
        {
            let candidates = self.order.candidates();
            let pick = candidates[self.rng.random_range(0..candidates.len())];
            if !self.state.assignment.is_assigned(pick) {
                var = Some(pick);
            }
        }
        let var = match var {
            Some(v) => v,
            None => loop {
                let v = self.order.pop()?;
                if !self.state.assignment.is_assigned(v) {
                    break v;
                }
            },
        };
        let lit = Lit::new(var, self.phases[var.index()]);
        self.decide_literal(lit);
        Some(lit)
    }

    /// Assigns `lit` as a decision on a new level.
    pub fn decide_literal(&mut self, lit: Lit) {
        debug_assert!(!self.state.assignment.is_assigned(lit.var()));
        self.state.new_decision_level();
        let level = self.state.decision_level();
        self.state.enqueue(lit, level, None);
        self.stats.decisions += 1;
    }

    fn model(&self) -> Model {
        let values = (0..self.state.num_vars())
            .map(|v| self.state.assignment.var_value(Var::new(v as u32)) == LBool::True)
            .collect();
        Model(values)
    }
}

/// Solves `formula` without proof output.
pub fn solve(formula: &Formula, config: SolverConfig) -> Result<SolveResult, SolverError> {
    Solver::new(formula, config)?.solve()
}

#[cfg(test)]
mod tests;
