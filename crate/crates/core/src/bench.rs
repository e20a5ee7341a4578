//! Benchmark harness: every instance under every configuration, with a
//! per-run CSV, a SAT/UNSAT/ALL summary of solved counts and total times, and
//! per-instance scatter data against the `base` configuration.

use std::fmt::{self, Write as _};
use std::io::{self, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::cnf::{parse_dimacs, Formula, ParseError};
use crate::gen;
use crate::search::{PropagationMode, SolveResult, Solver, SolverConfig};

/// Name of the configuration scatter plots compare against.
pub const BASE: &str = "base";

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("invalid configuration {0:?}")]
    Config(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub name: String,
    pub solver: SolverConfig,
}

/// Parses a number such as `2000000`, `2e6` or `1.5e6` into a conflict count.
pub fn parse_count(text: &str) -> Option<u64> {
    if let Ok(n) = text.parse::<u64>() {
        return Some(n);
    }
    let x: f64 = text.parse().ok()?;
    (x.is_finite() && x >= 0.0 && x.fract() == 0.0 && x <= u64::MAX as f64).then_some(x as u64)
}

/// Parses a comma-separated configuration list.
///
/// `base` (or `bcp`) is standard propagation throughout, `cfup` is core-first
/// throughout and `theta=X` is the hybrid switching after `X` conflicts.
pub fn parse_configs(list: &str) -> Result<Vec<BenchConfig>, BenchError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|name| {
            let solver = match name {
                "base" | "bcp" => SolverConfig::with_mode(PropagationMode::Bcp),
                "cfup" => SolverConfig::with_mode(PropagationMode::Cfup),
                _ => {
                    let theta = name
                        .strip_prefix("theta=")
                        .and_then(parse_count)
                        .ok_or_else(|| BenchError::Config(name.to_string()))?;
                    SolverConfig::hybrid(theta)
                }
            };
            Ok(BenchConfig {
                name: name.to_string(),
                solver,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub name: String,
    pub formula: Formula,
}

/// Loads every `*.cnf` file of `dir`, sorted by file name.
pub fn load_instances(dir: &Path) -> Result<Vec<Instance>, BenchError> {
    let io_err = |path: &Path, source| BenchError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut paths = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(|e| io_err(dir, e))? {
        let path = entry.map_err(|e| io_err(dir, e))?.path();
        if path.extension().is_some_and(|ext| ext == "cnf") {
            paths.push(path);
        }
    }
    paths.sort();
    paths
        .into_iter()
        .map(|path| {
            let text = std::fs::read_to_string(&path).map_err(|e| io_err(&path, e))?;
            let formula = parse_dimacs(&text).map_err(|source| BenchError::Parse {
                path: path.display().to_string(),
                source,
            })?;
            let name = path
                .file_name()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned();
            Ok(Instance { name, formula })
        })
        .collect()
}

/// A desk-scale mix of random and crafted instances: random 3-SAT near the
/// threshold, planted satisfiable 3-SAT and pigeonhole formulas.
pub fn generate_mix(count: usize, seed: u64) -> Vec<Instance> {
    (0..count)
        .map(|i| {
            let s = seed.wrapping_mul(1_000_003).wrapping_add(i as u64);
            let (name, formula) = match i % 5 {
                0 | 1 => {
                    let n = 50 + 10 * (i % 7);
                    (format!("rand3_n{n}"), gen::random_3sat(n, 4.26, s))
                }
                2 | 3 => {
                    let n = 100 + 20 * (i % 5);
                    (format!("planted3_n{n}"), gen::planted_3sat(n, 4.2, s))
                }
                _ => {
                    let holes = 3 + (i / 5) % 5;
                    (
                        format!("php_{}_{holes}", holes + 1),
                        gen::pigeonhole(holes + 1, holes),
                    )
                }
            };
            Instance {
                name: format!("{i:03}_{name}.cnf"),
                formula,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Sat,
    Unsat,
    Unknown,
}

impl Status {
    pub fn solved(self) -> bool {
        self != Status::Unknown
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Sat => "SAT",
            Status::Unsat => "UNSAT",
            Status::Unknown => "UNKNOWN",
        })
    }
}

impl std::str::FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "SAT" => Ok(Status::Sat),
            "UNSAT" => Ok(Status::Unsat),
            "UNKNOWN" => Ok(Status::Unknown),
            _ => Err(format!("unknown status {s:?}")),
        }
    }
}

impl From<&SolveResult> for Status {
    fn from(result: &SolveResult) -> Status {
        match result {
            SolveResult::Sat(_) => Status::Sat,
            SolveResult::Unsat => Status::Unsat,
            SolveResult::Unknown => Status::Unknown,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub instance: String,
    pub config: String,
    pub status: Status,
    pub seconds: f64,
    pub conflicts: u64,
}

/// Runs one instance under one configuration with a wall-clock limit.
pub fn run_one(instance: &Instance, config: &BenchConfig, timeout: Duration) -> BenchRow {
    let start = Instant::now();
    let solver_config = SolverConfig {
        time_limit: Some(timeout),
        ..config.solver.clone()
    };
    let (status, conflicts) = match Solver::new(&instance.formula, solver_config) {
        Ok(mut solver) => {
            let status = solver
                .solve()
                .map(|r| Status::from(&r))
                .unwrap_or(Status::Unknown);
            (status, solver.stats().conflicts)
        }
        Err(_) => (Status::Unknown, 0),
    };
    BenchRow {
        instance: instance.name.clone(),
        config: config.name.clone(),
        status,
        seconds: start.elapsed().as_secs_f64(),
        conflicts,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub configs: Vec<String>,
    pub timeout: Duration,
    /// Sorted by instance, then by configuration order.
    pub rows: Vec<BenchRow>,
}

/// Runs every instance under every configuration on `jobs` threads.
pub fn run_bench(
    instances: &[Instance],
    configs: &[BenchConfig],
    timeout: Duration,
    jobs: usize,
) -> BenchReport {
    let tasks: Vec<(&Instance, &BenchConfig)> = instances
        .iter()
        .flat_map(|i| configs.iter().map(move |c| (i, c)))
        .collect();
    let run = || -> Vec<BenchRow> {
        tasks
            .par_iter()
            .map(|(instance, config)| run_one(instance, config, timeout))
            .collect()
    };
    let mut rows = match rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
    {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    };
    let order = |name: &str| configs.iter().position(|c| c.name == name);
    rows.sort_by(|a, b| {
        a.instance
            .cmp(&b.instance)
            .then(order(&a.config).cmp(&order(&b.config)))
    });
    BenchReport {
        configs: configs.iter().map(|c| c.name.clone()).collect(),
        timeout,
        rows,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    Sat,
    Unsat,
    All,
}

impl Category {
    pub const ALL: [Category; 3] = [Category::Sat, Category::Unsat, Category::All];

    fn label(self) -> &'static str {
        match self {
            Category::Sat => "SAT",
            Category::Unsat => "UNSAT",
            Category::All => "ALL",
        }
    }

    fn includes(self, status: Status) -> bool {
        match self {
            Category::Sat => status == Status::Sat,
            Category::Unsat => status == Status::Unsat,
            Category::All => status.solved(),
        }
    }
}

/// Solved count and total solving time of one category under one
/// configuration.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Cell {
    pub solved: usize,
    pub seconds: f64,
}

/// One (instance, base time, config time) point; unsolved runs sit at the
/// timeout.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatterPoint {
    pub instance: String,
    pub base_seconds: f64,
    pub config_seconds: f64,
}

impl BenchReport {
    pub fn cell(&self, category: Category, config: &str) -> Cell {
        self.rows
            .iter()
            .filter(|r| r.config == config && category.includes(r.status))
            .fold(Cell::default(), |acc, r| Cell {
                solved: acc.solved + 1,
                seconds: acc.seconds + r.seconds,
            })
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "instance,config,status,seconds,conflicts")?;
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{:.6},{}",
                r.instance, r.config, r.status, r.seconds, r.conflicts
            )?;
        }
        Ok(())
    }

    /// The summary as a text table: SAT/UNSAT/ALL, each with a Solved and a
    /// Time row, one column per configuration.
    pub fn render_summary(&self) -> String {
        let mut header = vec![String::new(), String::new()];
        header.extend(self.configs.iter().cloned());
        let mut table = vec![header];
        for category in Category::ALL {
            let cells: Vec<Cell> = self
                .configs
                .iter()
                .map(|c| self.cell(category, c))
                .collect();
            let mut solved = vec![category.label().to_string(), "Solved".to_string()];
            solved.extend(cells.iter().map(|c| c.solved.to_string()));
            let mut time = vec![String::new(), "Time".to_string()];
            time.extend(cells.iter().map(|c| format!("{:.2}", c.seconds)));
            table.push(solved);
            table.push(time);
        }

        let widths: Vec<usize> = (0..table[0].len())
            .map(|col| table.iter().map(|row| row[col].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &table {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(i, (cell, &w))| {
                    if i < 2 {
                        format!("{cell:<w$}")
                    } else {
                        format!("{cell:>w$}")
                    }
                })
                .collect();
            let _ = writeln!(out, "{}", line.join(" | ").trim_end());
        }
        out
    }

    /// Summary as CSV: `category,metric,<config>...`.
    pub fn write_summary_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "category,metric,{}", self.configs.join(","))?;
        for category in Category::ALL {
            let cells: Vec<Cell> = self
                .configs
                .iter()
                .map(|c| self.cell(category, c))
                .collect();
            let solved: Vec<String> = cells.iter().map(|c| c.solved.to_string()).collect();
            let time: Vec<String> = cells.iter().map(|c| format!("{:.6}", c.seconds)).collect();
            writeln!(out, "{},Solved,{}", category.label(), solved.join(","))?;
            writeln!(out, "{},Time,{}", category.label(), time.join(","))?;
        }
        Ok(())
    }

    /// Per-instance times of `base` against `config`, with unsolved runs
    /// clamped to the timeout. `None` when either configuration is missing.
    pub fn scatter(&self, config: &str) -> Option<Vec<ScatterPoint>> {
        if !self.configs.iter().any(|c| c == BASE) || !self.configs.iter().any(|c| c == config) {
            return None;
        }
        let limit = self.timeout.as_secs_f64();
        let clamp = |r: &BenchRow| {
            if r.status.solved() {
                r.seconds.min(limit)
            } else {
                limit
            }
        };
        let mut points = Vec::new();
        let mut base: Option<&BenchRow> = None;
        for row in &self.rows {
            if row.config == BASE {
                base = Some(row);
            } else if row.config == config {
                let b = base.filter(|b| b.instance == row.instance)?;
                points.push(ScatterPoint {
                    instance: row.instance.clone(),
                    base_seconds: clamp(b),
                    config_seconds: clamp(row),
                });
            }
        }
        Some(points)
    }

    pub fn write_scatter_csv<W: Write>(&self, config: &str, mut out: W) -> io::Result<bool> {
        let Some(points) = self.scatter(config) else {
            return Ok(false);
        };
        writeln!(out, "instance,base_seconds,config_seconds")?;
        for p in points {
            writeln!(
                out,
                "{},{:.6},{:.6}",
                p.instance, p.base_seconds, p.config_seconds
            )?;
        }
        Ok(true)
    }
}

/// File name for the scatter data of `config`: `<stem>_<config>.<ext>` with
/// `=` replaced by `-`.
pub fn scatter_path(base: &Path, config: &str) -> std::path::PathBuf {
    let stem = base.file_stem().unwrap_or_default().to_string_lossy();
    let ext = base
        .extension()
        .map(|e| format!(".{}", e.to_string_lossy()))
        .unwrap_or_default();
    let tag: String = config
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '.' {
                c
            } else {
                '-'
            }
        })
        .collect();
    base.with_file_name(format!("{stem}_{tag}{ext}"))
}
