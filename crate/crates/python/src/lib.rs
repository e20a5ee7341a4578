//! Python bindings: formulas, solving with any propagation mode, DRAT proofs
//! and the testing oracles.

use std::collections::HashMap;
use std::time::Duration;

use corefirst::cnf::Formula as CoreFormula;
use corefirst::proof::{parse_drat, ProofLog};
use corefirst::{gen, oracle, PropagationMode, SolveResult as CoreResult, Solver, SolverConfig};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A CNF formula over variables `1..=num_vars`.
#[pyclass(module = "corefirst", frozen)]
pub struct Formula {
    inner: CoreFormula,
}

#[pymethods]
impl Formula {
    #[new]
    #[pyo3(signature = (num_vars, clauses = Vec::new()))]
    fn new(num_vars: usize, clauses: Vec<Vec<i64>>) -> PyResult<Formula> {
        let inner = CoreFormula::from_dimacs_clauses(num_vars, &clauses).map_err(value_error)?;
        Ok(Formula { inner })
    }

    #[staticmethod]
    fn from_dimacs(text: &str) -> PyResult<Formula> {
        let inner = corefirst::parse_dimacs(text).map_err(value_error)?;
        Ok(Formula { inner })
    }

    fn to_dimacs(&self) -> String {
        corefirst::write_dimacs(&self.inner)
    }

    #[getter]
    fn num_vars(&self) -> usize {
        self.inner.num_vars
    }

    #[getter]
    fn num_clauses(&self) -> usize {
        self.inner.num_clauses()
    }

    /// Clauses as lists of signed literals, after normalisation.
    fn clauses(&self) -> Vec<Vec<i64>> {
        self.inner.to_dimacs_clauses()
    }

    fn __repr__(&self) -> String {
        format!(
            "Formula(num_vars={}, num_clauses={})",
            self.inner.num_vars,
            self.inner.num_clauses()
        )
    }
}

/// Outcome of [`solve`].
#[pyclass(module = "corefirst", frozen, get_all)]
pub struct SolveResult {
    /// "SAT", "UNSAT" or "UNKNOWN".
    status: String,
    /// One signed literal per variable when satisfiable.
    model: Option<Vec<i64>>,
    stats: HashMap<String, u64>,
    /// DRAT text when a proof was requested.
    proof: Option<String>,
}

#[pymethods]
impl SolveResult {
    fn __repr__(&self) -> String {
        format!("SolveResult(status={:?})", self.status)
    }
}

/// Solves `formula`. `mode` is "bcp", "cfup" or "hybrid"; hybrid uses
/// core-first propagation for the first `theta` conflicts.
#[pyfunction]
#[pyo3(signature = (
    formula,
    mode = "hybrid",
    theta = 2_000_000,
    core_lbd = 7,
    max_conflicts = None,
    time_limit = None,
    seed = 0,
    proof = false,
))]
#[allow(clippy::too_many_arguments)]
fn solve(
    py: Python<'_>,
    formula: &Formula,
    mode: &str,
    theta: u64,
    core_lbd: u32,
    max_conflicts: Option<u64>,
    time_limit: Option<f64>,
    seed: u64,
    proof: bool,
) -> PyResult<SolveResult> {
    let mode: PropagationMode = mode.parse().map_err(value_error)?;
    let time_limit = time_limit
        .map(Duration::try_from_secs_f64)
        .transpose()
        .map_err(value_error)?;
    let config = SolverConfig {
        mode,
        theta,
        core_lbd_threshold: core_lbd,
        max_conflicts,
        time_limit,
        rng_seed: seed,
        ..SolverConfig::default()
    };
    let formula = formula.inner.clone();
    py.detach(move || {
        let mut solver = Solver::new(&formula, config).map_err(value_error)?;
        if proof {
            solver.set_proof(ProofLog::in_memory());
        }
        let result = solver.solve().map_err(value_error)?;
        let s = solver.stats();
        let stats = HashMap::from([
            ("conflicts".to_string(), s.conflicts),
            ("decisions".to_string(), s.decisions),
            ("propagations".to_string(), s.propagations),
            ("restarts".to_string(), s.restarts),
            ("reductions".to_string(), s.reductions),
            ("learnt".to_string(), s.learnt_total),
            ("core_learnt".to_string(), s.learnt_core),
        ]);
        let model = match &result {
            CoreResult::Sat(m) => Some(m.to_dimacs()),
            _ => None,
        };
        Ok(SolveResult {
            status: result.status().to_string(),
            model,
            stats,
            proof: solver.take_proof_text(),
        })
    })
}

/// Exhaustive search; returns a model as signed literals or None.
#[pyfunction]
fn brute_force_solve(formula: &Formula) -> PyResult<Option<Vec<i64>>> {
    let model = oracle::brute_force_solve(&formula.inner).map_err(value_error)?;
    Ok(model.map(|values| {
        values
            .iter()
            .enumerate()
            .map(|(v, &b)| if b { v as i64 + 1 } else { -(v as i64 + 1) })
            .collect()
    }))
}

/// Checks a model given as one signed literal per variable.
#[pyfunction]
fn check_model(formula: &Formula, model: Vec<i64>) -> PyResult<bool> {
    let n = formula.inner.num_vars;
    let mut values = vec![None; n];
    for lit in model {
        let v = lit.unsigned_abs() as usize;
        if lit == 0 || v > n {
            return Err(value_error(format!("literal {lit} out of range")));
        }
        values[v - 1] = Some(lit > 0);
    }
    let values: Option<Vec<bool>> = values.into_iter().collect();
    let values = values.ok_or_else(|| value_error("model does not assign every variable"))?;
    oracle::check_model(&formula.inner, &values).map_err(value_error)
}

/// Checks a DRAT proof by reverse unit propagation; true iff it derives the
/// empty clause.
#[pyfunction]
fn check_proof(formula: &Formula, proof: &str) -> PyResult<bool> {
    let steps = parse_drat(proof).map_err(value_error)?;
    oracle::check_rup_proof(&formula.inner, &steps).map_err(value_error)
}

#[pyfunction]
fn random_ksat(num_vars: usize, num_clauses: usize, k: usize, seed: u64) -> Formula {
    Formula {
        inner: gen::random_ksat(num_vars, num_clauses, k, seed),
    }
}

#[pyfunction]
fn random_3sat(num_vars: usize, ratio: f64, seed: u64) -> Formula {
    Formula {
        inner: gen::random_3sat(num_vars, ratio, seed),
    }
}

#[pyfunction]
fn planted_3sat(num_vars: usize, ratio: f64, seed: u64) -> Formula {
    Formula {
        inner: gen::planted_3sat(num_vars, ratio, seed),
    }
}

#[pyfunction]
fn pigeonhole(pigeons: usize, holes: usize) -> Formula {
    Formula {
        inner: gen::pigeonhole(pigeons, holes),
    }
}

#[pymodule]
#[pyo3(name = "corefirst")]
fn corefirst_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Formula>()?;
    m.add_class::<SolveResult>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_solve, m)?)?;
    m.add_function(wrap_pyfunction!(check_model, m)?)?;
    m.add_function(wrap_pyfunction!(check_proof, m)?)?;
    m.add_function(wrap_pyfunction!(random_ksat, m)?)?;
    m.add_function(wrap_pyfunction!(random_3sat, m)?)?;
    m.add_function(wrap_pyfunction!(planted_3sat, m)?)?;
    m.add_function(wrap_pyfunction!(pigeonhole, m)?)?;
    Ok(())
}
