use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use crate::propagation::Engine;

use super::SearchStats;

/// How the solver picks its propagation engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropagationMode {
    /// Standard BCP throughout.
    Bcp,
    /// Core-first propagation throughout.
    Cfup,
    /// Core-first while the conflict count is at most `theta`, then BCP.
    Hybrid,
}

impl fmt::Display for PropagationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PropagationMode::Bcp => "bcp",
            PropagationMode::Cfup => "cfup",
            PropagationMode::Hybrid => "hybrid",
        })
    }
}

impl FromStr for PropagationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bcp" => Ok(PropagationMode::Bcp),
            "cfup" => Ok(PropagationMode::Cfup),
            "hybrid" => Ok(PropagationMode::Hybrid),
            other => Err(format!(
                "unknown mode {other:?} (expected bcp, cfup or hybrid)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RestartConfig {
    /// Conflicts per unit of the Luby sequence.
    pub luby_base: u64,
}

impl Default for RestartConfig {
    fn default() -> Self {
        RestartConfig { luby_base: 64 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReduceConfig {
    /// Conflicts before the first reduction.
    pub first: u64,
    /// Growth of the gap between reductions, per reduction.
    pub increment: u64,
}

impl Default for ReduceConfig {
    fn default() -> Self {
        ReduceConfig {
            first: 2000,
            increment: 300,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub mode: PropagationMode,
    /// Conflict count after which hybrid mode switches to standard BCP.
    pub theta: u64,
    /// Learnt clauses with LBD at most this are core.
    pub core_lbd_threshold: u32,
    pub restart: RestartConfig,
    pub reduce: ReduceConfig,
    pub max_conflicts: Option<u64>,
    pub time_limit: Option<Duration>,
    pub rng_seed: u64,
    /// Probability of a random decision instead of the VSIDS choice.
    pub random_var_freq: f64,
    pub var_decay: f64,
    pub clause_decay: f64,
    /// Count core-prefix and learnt-clause checks; see [`super::Solver::audit`].
    pub audit: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            mode: PropagationMode::Hybrid,
            theta: 2_000_000,
            core_lbd_threshold: 7,
            restart: RestartConfig::default(),
            reduce: ReduceConfig::default(),
            max_conflicts: None,
            time_limit: None,
            rng_seed: 0,
            random_var_freq: 0.0,
            var_decay: 0.95,
            clause_decay: 0.999,
            audit: false,
        }
    }
}

impl SolverConfig {
    pub fn with_mode(mode: PropagationMode) -> SolverConfig {
        SolverConfig {
            mode,
            ..SolverConfig::default()
        }
    }

    pub fn hybrid(theta: u64) -> SolverConfig {
        SolverConfig {
            mode: PropagationMode::Hybrid,
            theta,
            ..SolverConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.core_lbd_threshold < 1 {
            return Err("core LBD threshold must be at least 1".into());
        }
        if self.restart.luby_base == 0 {
            return Err("restart base must be positive".into());
        }
        if !(0.0..=1.0).contains(&self.random_var_freq) {
            return Err("random decision frequency must lie in [0, 1]".into());
        }
        if !(0.0 < self.var_decay && self.var_decay < 1.0) {
            return Err("variable decay must lie in (0, 1)".into());
        }
        if !(0.0 < self.clause_decay && self.clause_decay < 1.0) {
            return Err("clause decay must lie in (0, 1)".into());
        }
        Ok(())
    }
}

/// Engine for the next propagation round.
pub fn select_propagator(stats: &SearchStats, config: &SolverConfig) -> Engine {
    match config.mode {
        PropagationMode::Bcp => Engine::Standard,
        PropagationMode::Cfup => Engine::CoreFirst,
        PropagationMode::Hybrid if stats.conflicts > config.theta => Engine::Standard,
        PropagationMode::Hybrid => Engine::CoreFirst,
    }
}
