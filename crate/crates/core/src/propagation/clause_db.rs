use std::ops::{Index, IndexMut};

use crate::cnf::Clause;

/// Handle to a clause stored in a [`ClauseDb`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClauseRef(u32);

impl ClauseRef {
    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

/// Append-only clause arena. Deleted clauses keep their slot so references
/// stay stable; only the deletion mark changes.
#[derive(Debug, Clone, Default)]
pub struct ClauseDb {
    clauses: Vec<Clause>,
}

impl ClauseDb {
    pub fn push(&mut self, clause: Clause) -> ClauseRef {
        let cref = ClauseRef(self.clauses.len() as u32);
        self.clauses.push(clause);
        cref
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Live (non-deleted) clauses with their references.
    pub fn iter(&self) -> impl Iterator<Item = (ClauseRef, &Clause)> {
        self.clauses
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.deleted)
            .map(|(i, c)| (ClauseRef(i as u32), c))
    }
}

impl Index<ClauseRef> for ClauseDb {
    type Output = Clause;

    #[inline]
    fn index(&self, cref: ClauseRef) -> &Clause {
        &self.clauses[cref.index()]
    }
}

impl IndexMut<ClauseRef> for ClauseDb {
    #[inline]
    fn index_mut(&mut self, cref: ClauseRef) -> &mut Clause {
        &mut self.clauses[cref.index()]
    }
}
