//! A CDCL SAT solver whose unit propagation can prefer core clauses.
//!
//! The solver can propagate with standard two-watched-literal BCP, with
//! core-first propagation (learnt clauses of small LBD are moved to the front
//! of each watch list as it is scanned), or with a hybrid that uses core-first
//! propagation until a conflict budget `theta` is spent and standard BCP
//! afterwards.

pub mod bench;
pub mod cnf;
pub mod gen;
pub mod oracle;
pub mod proof;
pub mod propagation;
pub mod search;

pub use cnf::{parse_dimacs, write_dimacs, Clause, Formula, Lit, Var};
pub use propagation::{Engine, PropagationState};
pub use search::{solve, Model, PropagationMode, SolveResult, Solver, SolverConfig, SolverError};
