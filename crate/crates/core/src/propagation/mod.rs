//! Assignment trail, two-watched-literal lists and the unit propagation
//! engines.
//!
//! Two engines share all of their machinery:
//!
//! - [`Engine::Standard`] scans each watch list in stored order and compacts
//!   it in place, preserving the relative order of the clauses it keeps.
//! - [`Engine::CoreFirst`] performs the same scan, but while compacting it
//!   moves every retained *core* clause (a learnt clause with a small LBD) into
//!   a prefix of the list by swapping it with the first retained non-core
//!   clause. Later scans of the same literal therefore visit core clauses
//!   first. Clauses that move their watch to another literal leave the list
//!   and are appended to the new watcher's list without any reordering.
//!
//! Only non-binary lists are reordered. Binary clauses live in separate lists
//! and are always propagated before the non-binary ones of the same literal.

mod clause_db;
mod trail;
mod watch;

pub use clause_db::{ClauseDb, ClauseRef};
pub use trail::{Assignment, LBool, Trail, TrailEntry};
pub use watch::{BinaryWatch, WatchLists};

use crate::cnf::{Clause, Lit};

/// Which propagation engine to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    Standard,
    CoreFirst,
}

/// True iff `clause` is learnt and its LBD is at most `threshold`.
#[inline]
pub fn is_core_clause(clause: &Clause, threshold: u32) -> bool {
    clause.learnt && clause.lbd.is_some_and(|lbd| lbd <= threshold)
}

/// Counters for the core-prefix check run after each core-first scan.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PartitionAudit {
    /// Non-empty non-binary lists scanned to completion by the core-first engine.
    pub scans: u64,
    /// Scans after which a core clause sat behind a non-core one.
    pub violations: u64,
}

/// Complete propagation state of one solver: clauses, assignment, trail and
/// watch lists.
#[derive(Debug, Clone)]
pub struct PropagationState {
    pub(crate) clauses: ClauseDb,
    pub(crate) assignment: Assignment,
    pub(crate) trail: Trail,
    pub(crate) watches: WatchLists,
    core_lbd_threshold: u32,
    propagations: u64,
    audit: Option<PartitionAudit>,
}

impl PropagationState {
    pub fn new(num_vars: usize, core_lbd_threshold: u32) -> PropagationState {
        PropagationState {
            clauses: ClauseDb::default(),
            assignment: Assignment::new(num_vars),
            trail: Trail::default(),
            watches: WatchLists::new(num_vars),
            core_lbd_threshold,
            propagations: 0,
            audit: None,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.assignment.num_vars()
    }

    pub fn clauses(&self) -> &ClauseDb {
        &self.clauses
    }

    pub fn clause(&self, cref: ClauseRef) -> &Clause {
        &self.clauses[cref]
    }

    pub fn assignment(&self) -> &Assignment {
        &self.assignment
    }

    pub fn trail(&self) -> &Trail {
        &self.trail
    }

    pub fn watches(&self) -> &WatchLists {
        &self.watches
    }

    pub fn decision_level(&self) -> u32 {
        self.trail.decision_level()
    }

    /// Number of trail literals whose watch lists have been fully processed.
    pub fn propagations(&self) -> u64 {
        self.propagations
    }

    pub fn core_lbd_threshold(&self) -> u32 {
        self.core_lbd_threshold
    }

    /// Changes the core threshold. A threshold of 0 makes no clause core.
    pub fn set_core_lbd_threshold(&mut self, threshold: u32) {
        self.core_lbd_threshold = threshold;
    }

    pub fn is_core(&self, cref: ClauseRef) -> bool {
        is_core_clause(&self.clauses[cref], self.core_lbd_threshold)
    }

    pub fn enable_partition_audit(&mut self) {
        self.audit.get_or_insert_with(PartitionAudit::default);
    }

    pub fn partition_audit(&self) -> Option<PartitionAudit> {
        self.audit
    }

    /// Stores a clause without watching it.
    pub fn add_clause(&mut self, clause: Clause) -> ClauseRef {
        debug_assert!(!clause.learnt || clause.lbd.is_some());
        self.clauses.push(clause)
    }

    /// Watches the first two literals of a stored clause, appending it to the
    /// end of both lists.
    ///
    /// # Panics
    ///
    /// If the clause has fewer than two literals.
    pub fn attach_clause(&mut self, cref: ClauseRef) {
        let clause = &self.clauses[cref];
        assert!(
            clause.len() >= 2,
            "cannot watch a clause with {} literals",
            clause.len()
        );
        let (a, b) = (clause.lits[0], clause.lits[1]);
        if clause.len() == 2 {
            self.watches.watch_binary(a, b, cref);
            self.watches.watch_binary(b, a, cref);
        } else {
            self.watches.watch_nonbinary(a, cref);
            self.watches.watch_nonbinary(b, cref);
        }
    }

    /// Removes a clause from its watch lists and marks it deleted.
    pub(crate) fn delete_clause(&mut self, cref: ClauseRef) {
        let clause = &self.clauses[cref];
        let (a, b) = (clause.lits[0], clause.lits[1]);
        if clause.len() == 2 {
            self.watches.unwatch_binary(a, cref);
            self.watches.unwatch_binary(b, cref);
        } else {
            self.watches.unwatch_nonbinary(a, cref);
            self.watches.unwatch_nonbinary(b, cref);
        }
        let clause = &mut self.clauses[cref];
        clause.deleted = true;
        clause.lits = Vec::new();
    }

    pub(crate) fn clause_mut(&mut self, cref: ClauseRef) -> &mut Clause {
        &mut self.clauses[cref]
    }

    /// Opens a new decision level.
    pub fn new_decision_level(&mut self) {
        self.trail.new_level();
    }

    /// Assigns `lit` true. Returns `false` if it is already false, and `true`
    /// without touching anything if it is already true.
    pub fn enqueue(&mut self, lit: Lit, level: u32, antecedent: Option<ClauseRef>) -> bool {
        match self.assignment.value(lit) {
            LBool::True => true,
            LBool::False => false,
            LBool::Undef => {
                assign(
                    &mut self.assignment,
                    &mut self.trail,
                    lit,
                    level,
                    antecedent,
                );
                true
            }
        }
    }

    /// Undoes every assignment above `level`, calling `on_unassign` for each
    /// removed literal, newest first.
    pub fn backtrack(&mut self, level: u32, mut on_unassign: impl FnMut(Lit)) {
        if level >= self.trail.decision_level() {
            return;
        }
        let head = self.trail.propagate_head;
        for entry in self.trail.truncate_to_level(level) {
            self.assignment.unassign(entry.lit.var());
            on_unassign(entry.lit);
        }
        self.trail.propagate_head = self.trail.propagate_head.min(head);
    }

    pub fn propagate(&mut self, engine: Engine) -> Option<ClauseRef> {
        match engine {
            Engine::Standard => self.propagate_standard(),
            Engine::CoreFirst => self.propagate_core_first(),
        }
    }

    /// Standard unit propagation. Returns the falsified clause on conflict.
    pub fn propagate_standard(&mut self) -> Option<ClauseRef> {
        self.propagate_with::<false>()
    }

    /// Core-first unit propagation. Same implications and conflict rule as
    /// [`propagate_standard`](Self::propagate_standard), plus the core-prefix
    /// partition of every scanned non-binary list.
    pub fn propagate_core_first(&mut self) -> Option<ClauseRef> {
        self.propagate_with::<true>()
    }

    fn propagate_with<const CORE_FIRST: bool>(&mut self) -> Option<ClauseRef> {
        while self.trail.propagate_head < self.trail.len() {
            let lit = self.trail.entries()[self.trail.propagate_head].lit;
            let false_lit = !lit;
            let level = self.trail.decision_level();

            if let Some(conflict) = self.propagate_binary(false_lit, level) {
                return Some(conflict);
            }
            if let Some(conflict) = self.propagate_nonbinary::<CORE_FIRST>(false_lit, level) {
                return Some(conflict);
            }
            self.trail.propagate_head += 1;
            self.propagations += 1;
        }
        None
    }

    fn propagate_binary(&mut self, false_lit: Lit, level: u32) -> Option<ClauseRef> {
        for watch in &self.watches.binary[false_lit.index()] {
            match self.assignment.value(watch.other) {
                LBool::True => {}
                LBool::False => return Some(watch.clause),
                LBool::Undef => assign(
                    &mut self.assignment,
                    &mut self.trail,
                    watch.other,
                    level,
                    Some(watch.clause),
                ),
            }
        }
        None
    }

    fn propagate_nonbinary<const CORE_FIRST: bool>(
        &mut self,
        false_lit: Lit,
        level: u32,
    ) -> Option<ClauseRef> {
        let mut list = std::mem::take(&mut self.watches.nonbinary[false_lit.index()]);
        let threshold = self.core_lbd_threshold;
        let mut read = 0;
        let mut write = 0;
        // Retained clauses in list[..core_end] are core.
        let mut core_end = 0;
        let mut conflict = None;

        while read < list.len() {
            let cref = list[read];
            read += 1;
            let clause = &mut self.clauses[cref];
            debug_assert!(!clause.deleted);
            if clause.lits[0] == false_lit {
                clause.lits.swap(0, 1);
            }
            debug_assert_eq!(clause.lits[1], false_lit);

            let first = clause.lits[0];
            let first_value = self.assignment.value(first);
            if first_value != LBool::True {
                let replacement =
                    (2..clause.lits.len()).find(|&k| !self.assignment.is_false(clause.lits[k]));
                if let Some(k) = replacement {
                    clause.lits.swap(1, k);
                    self.watches.nonbinary[clause.lits[1].index()].push(cref);
                    continue;
                }
            }

            list[write] = cref;
            if CORE_FIRST && is_core_clause(clause, threshold) {
                list.swap(core_end, write);
                core_end += 1;
            }
            write += 1;

            match first_value {
                LBool::True => {}
                LBool::False => {
                    conflict = Some(cref);
                    break;
                }
                LBool::Undef => {
                    assign(
                        &mut self.assignment,
                        &mut self.trail,
                        first,
                        level,
                        Some(cref),
                    );
                }
            }
        }

        if conflict.is_some() {
            list.copy_within(read.., write);
            write += list.len() - read;
        } else if CORE_FIRST && write > 0 {
            if let Some(audit) = self.audit.as_mut() {
                audit.scans += 1;
                let partitioned = list[..write]
                    .iter()
                    .skip_while(|&&c| is_core_clause(&self.clauses[c], threshold))
                    .all(|&c| !is_core_clause(&self.clauses[c], threshold));
                debug_assert!(partitioned, "core clause behind a non-core clause");
                if !partitioned {
                    audit.violations += 1;
                }
            }
        }
        list.truncate(write);

        let slot = &mut self.watches.nonbinary[false_lit.index()];
        debug_assert!(slot.is_empty());
        *slot = list;
        conflict
    }

    /// Checks that trail, assignment and watch lists agree.
    pub fn check_consistency(&self) -> Result<(), String> {
        let trail = &self.trail;
        if trail.propagate_head > trail.len() {
            return Err("propagate head beyond trail end".into());
        }
        let mut seen = vec![false; self.num_vars()];
        let mut level = 0;
        for (i, entry) in trail.entries().iter().enumerate() {
            while level < trail.decision_level() && trail.level_start(level + 1) <= i {
                level += 1;
            }
            let var = entry.lit.var();
            if std::mem::replace(&mut seen[var.index()], true) {
                return Err(format!("variable {} on the trail twice", var.dimacs()));
            }
            if entry.level != level || self.assignment.level(var) != level {
                return Err(format!("level mismatch for {}", entry.lit));
            }
            if !self.assignment.is_true(entry.lit) {
                return Err(format!("trail literal {} not true", entry.lit));
            }
            if self.assignment.antecedent(var) != entry.antecedent {
                return Err(format!("antecedent mismatch for {}", entry.lit));
            }
        }
        let assigned = (0..self.num_vars())
            .filter(|&v| self.assignment.is_assigned(crate::cnf::Var::new(v as u32)))
            .count();
        if assigned != trail.len() {
            return Err("assigned variables missing from the trail".into());
        }

        let mut nonbinary_hits = vec![0u8; self.clauses.len()];
        for (idx, list) in self.watches.nonbinary.iter().enumerate() {
            let lit = Lit::from_code(idx as u32);
            for &cref in list {
                let clause = &self.clauses[cref];
                if clause.deleted || clause.len() < 3 || !clause.lits[..2].contains(&lit) {
                    return Err(format!("bad non-binary watch of {lit}"));
                }
                nonbinary_hits[cref.index()] += 1;
            }
        }
        let mut binary_hits = vec![0u8; self.clauses.len()];
        for (idx, list) in self.watches.binary.iter().enumerate() {
            let lit = Lit::from_code(idx as u32);
            for watch in list {
                let clause = &self.clauses[watch.clause];
                if clause.deleted
                    || clause.len() != 2
                    || !clause.lits.contains(&lit)
                    || !clause.lits.contains(&watch.other)
                {
                    return Err(format!("bad binary watch of {lit}"));
                }
                binary_hits[watch.clause.index()] += 1;
            }
        }
        for (cref, clause) in self.clauses.iter() {
            let (nb, b) = (nonbinary_hits[cref.index()], binary_hits[cref.index()]);
            let ok = match clause.len() {
                0 | 1 => nb == 0 && b == 0,
                2 => nb == 0 && b == 2,
                _ => nb == 2 && b == 0,
            };
            if !ok {
                return Err(format!("clause {} watched {nb}+{b} times", cref.index()));
            }
        }
        Ok(())
    }

    /// Checks the fixpoint property: in every watched clause, a false watch
    /// implies the other watch is true.
    pub fn check_fixpoint(&self) -> Result<(), String> {
        if self.trail.propagate_head != self.trail.len() {
            return Err("unpropagated literals on the trail".into());
        }
        for (cref, clause) in self.clauses.iter() {
            if clause.len() < 2 {
                continue;
            }
            let (a, b) = (clause.lits[0], clause.lits[1]);
            let va = self.assignment.value(a);
            let vb = self.assignment.value(b);
            let sound = match (va, vb) {
                (LBool::False, other) | (other, LBool::False) => other == LBool::True,
                _ => true,
            };
            if !sound {
                return Err(format!(
                    "clause {} is unit or falsified at fixpoint",
                    cref.index()
                ));
            }
        }
        Ok(())
    }
}

#[inline]
fn assign(
    assignment: &mut Assignment,
    trail: &mut Trail,
    lit: Lit,
    level: u32,
    antecedent: Option<ClauseRef>,
) {
    assignment.assign(lit, level, antecedent);
    trail.push(TrailEntry {
        lit,
        level,
        antecedent,
    });
}
