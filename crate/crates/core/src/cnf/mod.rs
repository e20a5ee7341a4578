//! Literals, clauses and CNF formulas.
//!
//! Variables are numbered `1..=n` in DIMACS and `0..n` internally. A literal
//! packs its variable and polarity into a single code: the positive literal of
//! DIMACS variable `v` has code `2(v-1)`, its negation `2(v-1)+1`.

mod dimacs;

pub use dimacs::{parse_dimacs, write_dimacs, ParseError};

use std::collections::HashSet;
use std::fmt;
use std::ops::Not;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiteralError {
    #[error("0 is not a literal")]
    Zero,
    #[error("variable index {0} is out of range")]
    OutOfRange(i64),
}

/// A propositional variable, zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    pub const fn new(index: u32) -> Var {
        Var(index)
    }

    /// Variable for a one-based DIMACS index.
    pub fn from_dimacs(index: u32) -> Var {
        debug_assert!(index > 0);
        Var(index - 1)
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub const fn dimacs(self) -> u32 {
        self.0 + 1
    }

    #[inline]
    pub const fn positive(self) -> Lit {
        Lit(self.0 << 1)
    }

    #[inline]
    pub const fn negative(self) -> Lit {
        Lit((self.0 << 1) | 1)
    }
}

/// A literal: a variable or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    /// Largest DIMACS variable index that fits the encoding.
    pub const MAX_VAR: u32 = (u32::MAX >> 1) + 1;

    #[inline]
    pub const fn new(var: Var, positive: bool) -> Lit {
        Lit((var.0 << 1) | (!positive as u32))
    }

    #[inline]
    pub const fn from_code(code: u32) -> Lit {
        Lit(code)
    }

    #[inline]
    pub const fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub const fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    #[inline]
    pub const fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    #[inline]
    pub const fn is_negative(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn from_dimacs(value: i64) -> Result<Lit, LiteralError> {
        if value == 0 {
            return Err(LiteralError::Zero);
        }
        let magnitude = value.unsigned_abs();
        if magnitude > Lit::MAX_VAR as u64 {
            return Err(LiteralError::OutOfRange(value));
        }
        Ok(Lit::new(Var(magnitude as u32 - 1), value > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var().dimacs() as i64;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }
}

impl Not for Lit {
    type Output = Lit;

    #[inline]
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// Removes duplicate literals. Returns `None` for a tautology.
pub fn normalize_literals(mut lits: Vec<Lit>) -> Option<Vec<Lit>> {
    let mut sorted = lits.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.windows(2).any(|w| w[0].var() == w[1].var()) {
        return None;
    }
    // Keep the first occurrence of each literal so input order survives.
    let mut seen = HashSet::with_capacity(sorted.len());
    lits.retain(|&l| seen.insert(l));
    Some(lits)
}

/// A clause together with the bookkeeping the solver attaches to it.
#[derive(Debug, Clone, PartialEq)]
pub struct Clause {
    pub lits: Vec<Lit>,
    pub learnt: bool,
    /// Literal block distance. Always set for learnt clauses.
    pub lbd: Option<u32>,
    pub activity: f64,
    pub deleted: bool,
}

impl Clause {
    pub fn original(lits: Vec<Lit>) -> Clause {
        Clause {
            lits,
            learnt: false,
            lbd: None,
            activity: 0.0,
            deleted: false,
        }
    }

    pub fn learnt(lits: Vec<Lit>, lbd: u32) -> Clause {
        Clause {
            lits,
            learnt: true,
            lbd: Some(lbd),
            activity: 0.0,
            deleted: false,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.lits.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn to_dimacs(&self) -> Vec<i64> {
        self.lits.iter().map(|l| l.to_dimacs()).collect()
    }
}

/// A CNF formula with normalized clauses.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Formula {
    pub num_vars: usize,
    pub clauses: Vec<Clause>,
    /// Some input clause normalized to zero literals.
    pub contains_empty: bool,
}

impl Formula {
    pub fn new(num_vars: usize) -> Formula {
        Formula {
            num_vars,
            clauses: Vec::new(),
            contains_empty: false,
        }
    }

    /// Adds a clause after normalization. Tautologies are dropped and an empty
    /// clause only sets [`Formula::contains_empty`].
    pub fn add_clause(&mut self, lits: Vec<Lit>) {
        debug_assert!(lits.iter().all(|l| l.var().index() < self.num_vars));
        match normalize_literals(lits) {
            None => {}
            Some(lits) if lits.is_empty() => self.contains_empty = true,
            Some(lits) => self.clauses.push(Clause::original(lits)),
        }
    }

    /// Builds a formula from DIMACS-numbered clauses.
    pub fn from_dimacs_clauses<C>(num_vars: usize, clauses: C) -> Result<Formula, LiteralError>
    where
        C: IntoIterator,
        C::Item: AsRef<[i64]>,
    {
        let mut formula = Formula::new(num_vars);
        for clause in clauses {
            let lits = clause
                .as_ref()
                .iter()
                .map(|&x| {
                    let lit = Lit::from_dimacs(x)?;
                    if lit.var().index() >= num_vars {
                        return Err(LiteralError::OutOfRange(x));
                    }
                    Ok(lit)
                })
                .collect::<Result<Vec<_>, _>>()?;
            formula.add_clause(lits);
        }
        Ok(formula)
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn to_dimacs_clauses(&self) -> Vec<Vec<i64>> {
        self.clauses.iter().map(Clause::to_dimacs).collect()
    }
}
