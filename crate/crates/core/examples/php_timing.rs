use std::time::Instant;

use corefirst::gen::pigeonhole;
use corefirst::{PropagationMode, Solver, SolverConfig};

fn main() {
    for n in 2..=8 {
        for mode in [
            PropagationMode::Bcp,
            PropagationMode::Cfup,
            PropagationMode::Hybrid,
        ] {
            let f = pigeonhole(n + 1, n);
            let start = Instant::now();
            let mut solver = Solver::new(&f, SolverConfig::with_mode(mode)).unwrap();
            let result = solver.solve().unwrap();
            println!(
                "PHP({}, {n}) {mode:>6}: {} conflicts={} core={} in {:.2?}",
                n + 1,
                result.status(),
                solver.stats().conflicts,
                solver.stats().learnt_core,
                start.elapsed()
            );
        }
    }
}
