use crate::cnf::{Lit, Var};

use super::ClauseRef;

/// Three-valued truth value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LBool {
    True,
    False,
    Undef,
}

/// One assignment on the trail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrailEntry {
    pub lit: Lit,
    pub level: u32,
    pub antecedent: Option<ClauseRef>,
}

/// Stack of decisions and implications in assignment order.
#[derive(Debug, Clone, Default)]
pub struct Trail {
    entries: Vec<TrailEntry>,
    /// `level_starts[i]` is the index of the first entry of level `i + 1`.
    level_starts: Vec<usize>,
    /// Index of the first entry not yet propagated.
    pub(crate) propagate_head: usize,
}

impl Trail {
    pub fn entries(&self) -> &[TrailEntry] {
        &self.entries
    }

    pub fn lits(&self) -> impl Iterator<Item = Lit> + '_ {
        self.entries.iter().map(|e| e.lit)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn decision_level(&self) -> u32 {
        self.level_starts.len() as u32
    }

    pub fn propagate_head(&self) -> usize {
        self.propagate_head
    }

    /// Index of the first entry at `level` (level >= 1).
    pub fn level_start(&self, level: u32) -> usize {
        self.level_starts[level as usize - 1]
    }

    pub(crate) fn push(&mut self, entry: TrailEntry) {
        self.entries.push(entry);
    }

    pub(crate) fn new_level(&mut self) {
        self.level_starts.push(self.entries.len());
    }

    /// Removes every entry above `level`, returning them newest first.
    pub(crate) fn truncate_to_level(
        &mut self,
        level: u32,
    ) -> impl Iterator<Item = TrailEntry> + '_ {
        let start = if (level as usize) < self.level_starts.len() {
            self.level_starts[level as usize]
        } else {
            self.entries.len()
        };
        self.level_starts.truncate(level as usize);
        self.propagate_head = start;
        self.entries.drain(start..).rev()
    }
}

/// Per-variable value, level and antecedent.
#[derive(Debug, Clone, Default)]
pub struct Assignment {
    values: Vec<LBool>,
    levels: Vec<u32>,
    antecedents: Vec<Option<ClauseRef>>,
}

impl Assignment {
    pub fn new(num_vars: usize) -> Assignment {
        Assignment {
            values: vec![LBool::Undef; num_vars],
            levels: vec![0; num_vars],
            antecedents: vec![None; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn var_value(&self, var: Var) -> LBool {
        self.values[var.index()]
    }

    #[inline]
    pub fn value(&self, lit: Lit) -> LBool {
        match (self.values[lit.var().index()], lit.is_positive()) {
            (LBool::Undef, _) => LBool::Undef,
            (v, true) => v,
            (LBool::True, false) => LBool::False,
            (LBool::False, false) => LBool::True,
        }
    }

    #[inline]
    pub fn is_true(&self, lit: Lit) -> bool {
        self.value(lit) == LBool::True
    }

    #[inline]
    pub fn is_false(&self, lit: Lit) -> bool {
        self.value(lit) == LBool::False
    }

    #[inline]
    pub fn is_assigned(&self, var: Var) -> bool {
        self.values[var.index()] != LBool::Undef
    }

    /// Decision level of an assigned variable.
    #[inline]
    pub fn level(&self, var: Var) -> u32 {
        self.levels[var.index()]
    }

    #[inline]
    pub fn antecedent(&self, var: Var) -> Option<ClauseRef> {
        self.antecedents[var.index()]
    }

    pub(crate) fn assign(&mut self, lit: Lit, level: u32, antecedent: Option<ClauseRef>) {
        let v = lit.var().index();
        self.values[v] = if lit.is_positive() {
            LBool::True
        } else {
            LBool::False
        };
        self.levels[v] = level;
        self.antecedents[v] = antecedent;
    }

    pub(crate) fn unassign(&mut self, var: Var) {
        self.values[var.index()] = LBool::Undef;
        self.antecedents[var.index()] = None;
    }
}
