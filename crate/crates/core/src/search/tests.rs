use super::*;
use crate::gen::{pigeonhole, random_3sat};
use crate::oracle::{brute_force_solve, check_model, check_rup_proof};
use crate::proof::parse_drat;

fn lit(x: i64) -> Lit {
    Lit::from_dimacs(x).unwrap()
}

fn formula(n: usize, clauses: &[&[i64]]) -> Formula {
    Formula::from_dimacs_clauses(n, clauses).unwrap()
}

const MODES: [PropagationMode; 3] = [
    PropagationMode::Bcp,
    PropagationMode::Cfup,
    PropagationMode::Hybrid,
];

#[test]
fn empty_formula_is_sat() {
    let result = solve(&Formula::new(0), SolverConfig::default()).unwrap();
    assert_eq!(result, SolveResult::Sat(Model::new(vec![])));
}

#[test]
fn empty_clause_is_unsat_before_search() {
    let mut f = formula(2, &[&[1, 2]]);
    f.contains_empty = true;
    let mut solver = Solver::new(&f, SolverConfig::default()).unwrap();
    solver.set_proof(ProofLog::in_memory());
    assert_eq!(solver.solve().unwrap(), SolveResult::Unsat);
    assert_eq!(solver.stats().decisions, 0);
    assert_eq!(solver.take_proof_text().unwrap(), "0\n");
}

#[test]
fn small_unsat() {
    let f = formula(2, &[&[1, 2], &[-1], &[-2]]);
    for mode in MODES {
        assert_eq!(
            solve(&f, SolverConfig::with_mode(mode)).unwrap(),
            SolveResult::Unsat
        );
    }
}

#[test]
fn pigeonhole_4_3_is_unsat() {
    let f = pigeonhole(4, 3);
    assert_eq!(brute_force_solve(&f).unwrap(), None);
    for mode in MODES {
        let mut solver = Solver::new(&f, SolverConfig::with_mode(mode)).unwrap();
        solver.set_proof(ProofLog::in_memory());
        assert_eq!(solver.solve().unwrap(), SolveResult::Unsat);
        let proof = parse_drat(&solver.take_proof_text().unwrap()).unwrap();
        assert!(check_rup_proof(&f, &proof).unwrap());
    }
}

#[test]
fn models_satisfy_the_formula() {
    for seed in 0..50 {
        let f = random_3sat(30, 3.0, seed);
        for mode in MODES {
            match solve(&f, SolverConfig::with_mode(mode)).unwrap() {
                SolveResult::Sat(model) => assert!(check_model(&f, model.values()).unwrap()),
                other => panic!("seed {seed}: expected SAT, got {other:?}"),
            }
        }
    }
}

#[test]
fn agrees_with_brute_force() {
    for seed in 0..200 {
        let f = random_3sat(10, 4.3, seed);
        let expected = brute_force_solve(&f).unwrap().is_some();
        for mode in MODES {
            let result = solve(&f, SolverConfig::with_mode(mode)).unwrap();
            assert_eq!(result.is_sat(), expected, "seed {seed} mode {mode}");
        }
    }
}

#[test]
fn fresh_decision_is_var_one_false() {
    let mut solver = Solver::new(&formula(3, &[&[1, 2, 3]]), SolverConfig::default()).unwrap();
    let decision = solver.decide().unwrap();
    assert_eq!(decision, lit(-1));
    let entry = solver.state().trail().entries()[0];
    assert_eq!(entry.level, 1);
    assert_eq!(entry.antecedent, None);
}

#[test]
fn bumped_variable_is_decided_first() {
    let mut solver = Solver::new(&Formula::new(6), SolverConfig::default()).unwrap();
    solver.order.bump_and_decay(&[Var::from_dimacs(5)]);
    assert_eq!(solver.decide().unwrap().var(), Var::from_dimacs(5));
    assert_eq!(solver.decide().unwrap().var(), Var::from_dimacs(1));
    assert_eq!(solver.state().decision_level(), 2);
}

#[test]
fn decide_uses_saved_phase() {
    let mut solver = Solver::new(&Formula::new(2), SolverConfig::default()).unwrap();
    solver.decide_literal(lit(1));
    solver.backtrack(0);
    assert_eq!(solver.decide().unwrap(), lit(1));
}

#[test]
fn decide_reports_full_assignment() {
    let mut solver = Solver::new(&Formula::new(1), SolverConfig::default()).unwrap();
    assert!(solver.decide().is_some());
    assert_eq!(solver.decide(), None);
}

#[test]
fn backtrack_keeps_level_zero_facts() {
    let f = formula(6, &[&[1], &[-1, 2], &[-3, 4]]);
    let mut solver = Solver::new(&f, SolverConfig::default()).unwrap();
    assert_eq!(solver.propagate(), None);
    for x in [3, 5, 6] {
        solver.decide_literal(lit(x));
        assert_eq!(solver.propagate(), None);
    }
    assert_eq!(solver.state().decision_level(), 3);
    solver.backtrack(2);
    assert_eq!(solver.state().decision_level(), 2);
    assert!(!solver.state().assignment().is_assigned(lit(6).var()));
    assert!(solver.state().assignment().is_true(lit(5)));
    solver.backtrack(0);
    let lits: Vec<_> = solver.state().trail().lits().collect();
    assert_eq!(lits, vec![lit(1), lit(2)]);
    solver.state().check_consistency().unwrap();
}

#[test]
fn budget_exhaustion_is_unknown() {
    let f = pigeonhole(8, 7);
    let config = SolverConfig {
        max_conflicts: Some(10),
        ..SolverConfig::default()
    };
    let mut solver = Solver::new(&f, config).unwrap();
    assert_eq!(solver.solve().unwrap(), SolveResult::Unknown);
    assert_eq!(solver.stats().conflicts, 10);

    let config = SolverConfig {
        time_limit: Some(Duration::ZERO),
        ..SolverConfig::default()
    };
    assert_eq!(solve(&f, config).unwrap(), SolveResult::Unknown);
}

#[test]
fn restart_returns_to_level_zero_and_keeps_learnts() {
    let f = pigeonhole(6, 5);
    let config = SolverConfig {
        max_conflicts: Some(200),
        ..SolverConfig::default()
    };
    let mut solver = Solver::new(&f, config).unwrap();
    solver.solve().unwrap();
    let learnts = solver
        .state()
        .clauses()
        .iter()
        .filter(|(_, c)| c.learnt)
        .count();
    assert!(solver.stats().restarts >= 1);
    solver.restart();
    assert_eq!(solver.state().decision_level(), 0);
    let after = solver
        .state()
        .clauses()
        .iter()
        .filter(|(_, c)| c.learnt)
        .count();
    assert_eq!(learnts, after);
}

#[test]
fn audits_stay_clean() {
    for seed in 0..40 {
        let f = random_3sat(60, 4.26, seed);
        let config = SolverConfig {
            mode: PropagationMode::Cfup,
            audit: true,
            ..SolverConfig::default()
        };
        let mut solver = Solver::new(&f, config).unwrap();
        solver.solve().unwrap();
        let audit = solver.audit().unwrap();
        assert_eq!(audit.learnt_checked, solver.stats().learnt_total);
        assert_eq!(audit.learnt_violations, 0);
        assert_eq!(audit.partition.violations, 0);
        solver.state().check_consistency().unwrap();
    }
}

#[test]
fn learnt_lbd_within_bounds() {
    let f = pigeonhole(6, 5);
    let mut solver = Solver::new(&f, SolverConfig::default()).unwrap();
    assert!(solver.solve().unwrap().is_unsat());
    for (_, clause) in solver.state().clauses().iter().filter(|(_, c)| c.learnt) {
        let lbd = clause.lbd.unwrap() as usize;
        assert!(1 <= lbd && lbd <= clause.len());
    }
}

#[test]
fn reduction_runs_on_schedule() {
    let f = pigeonhole(7, 6);
    let config = SolverConfig {
        reduce: ReduceConfig {
            first: 100,
            increment: 50,
        },
        core_lbd_threshold: 2,
        ..SolverConfig::default()
    };
    let mut solver = Solver::new(&f, config).unwrap();
    solver.set_proof(ProofLog::in_memory());
    assert!(solver.solve().unwrap().is_unsat());
    assert!(solver.stats().reductions >= 2);
    assert!(solver.stats().deleted > 0);
    let proof = parse_drat(&solver.take_proof_text().unwrap()).unwrap();
    assert!(check_rup_proof(&f, &proof).unwrap());
}

#[test]
fn conflicting_units_are_unsat() {
    let f = formula(1, &[&[1], &[-1]]);
    assert_eq!(
        solve(&f, SolverConfig::default()).unwrap(),
        SolveResult::Unsat
    );
}

#[test]
fn invalid_config_is_rejected() {
    let config = SolverConfig {
        core_lbd_threshold: 0,
        ..SolverConfig::default()
    };
    assert!(matches!(
        Solver::new(&Formula::new(1), config),
        Err(SolverError::InvalidConfig(_))
    ));
}

#[test]
fn random_decisions_stay_sound() {
    for seed in 0..20 {
        let f = random_3sat(40, 4.0, seed);
        let expected = solve(&f, SolverConfig::default()).unwrap().is_sat();
        let config = SolverConfig {
            random_var_freq: 0.2,
            rng_seed: seed,
            ..SolverConfig::default()
        };
        match solve(&f, config).unwrap() {
            SolveResult::Sat(m) => {
                assert!(expected);
                assert!(check_model(&f, m.values()).unwrap());
            }
            SolveResult::Unsat => assert!(!expected),
            SolveResult::Unknown => unreachable!(),
        }
    }
}
