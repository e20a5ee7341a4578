use crate::cnf::Lit;

use super::ClauseRef;

/// Watch entry of a binary clause: the clause's other literal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinaryWatch {
    pub other: Lit,
    pub clause: ClauseRef,
}

/// Per-literal watch lists. `nonbinary[l]` holds the clauses that watch `l`
/// and are visited when `l` becomes false.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WatchLists {
    pub(crate) nonbinary: Vec<Vec<ClauseRef>>,
    pub(crate) binary: Vec<Vec<BinaryWatch>>,
}

impl WatchLists {
    pub fn new(num_vars: usize) -> WatchLists {
        WatchLists {
            nonbinary: vec![Vec::new(); 2 * num_vars],
            binary: vec![Vec::new(); 2 * num_vars],
        }
    }

    pub fn nonbinary(&self, lit: Lit) -> &[ClauseRef] {
        &self.nonbinary[lit.index()]
    }

    pub fn binary(&self, lit: Lit) -> &[BinaryWatch] {
        &self.binary[lit.index()]
    }

    pub(crate) fn watch_nonbinary(&mut self, lit: Lit, cref: ClauseRef) {
        self.nonbinary[lit.index()].push(cref);
    }

    pub(crate) fn watch_binary(&mut self, lit: Lit, other: Lit, cref: ClauseRef) {
        self.binary[lit.index()].push(BinaryWatch {
            other,
            clause: cref,
        });
    }

    pub(crate) fn unwatch_nonbinary(&mut self, lit: Lit, cref: ClauseRef) {
        self.nonbinary[lit.index()].retain(|&c| c != cref);
    }

    pub(crate) fn unwatch_binary(&mut self, lit: Lit, cref: ClauseRef) {
        self.binary[lit.index()].retain(|w| w.clause != cref);
    }
}
