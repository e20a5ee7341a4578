use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use corefirst::bench::{self, BASE};
use corefirst::proof::ProofLog;
use corefirst::{parse_dimacs, write_dimacs, PropagationMode, SolveResult, Solver, SolverConfig};

#[derive(Parser)]
#[command(
    name = "corefirst",
    version,
    about = "CDCL SAT solver with core-first unit propagation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one DIMACS CNF file. Exit code 10 = SAT, 20 = UNSAT, 0 = UNKNOWN.
    Solve(SolveArgs),
    /// Run every instance of a directory under several configurations.
    Bench(BenchArgs),
    /// Write a mix of generated benchmark instances to a directory.
    Gen(GenArgs),
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long, default_value = "hybrid")]
    mode: PropagationMode,
    /// Conflicts before hybrid mode falls back to standard propagation.
    #[arg(long, default_value = "2000000", value_parser = count)]
    theta: u64,
    /// Learnt clauses with LBD at most this are core.
    #[arg(long, default_value_t = 7)]
    core_lbd: u32,
    /// Write a DRAT proof to this file.
    #[arg(long)]
    proof: Option<PathBuf>,
    #[arg(long, value_parser = count)]
    max_conflicts: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print search statistics as comment lines.
    #[arg(long)]
    stats: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    dir: PathBuf,
    /// Per-run wall-clock limit in seconds.
    #[arg(long)]
    timeout: f64,
    #[arg(long, default_value = "base,theta=1e6,theta=2e6,theta=3e6")]
    configs: String,
    /// Per-run CSV: instance,config,status,seconds,conflicts.
    #[arg(long)]
    out: PathBuf,
    /// Scatter CSV against `base`; one file per other configuration, named
    /// `<stem>_<config>.csv`.
    #[arg(long)]
    scatter: Option<PathBuf>,
    /// Summary table as CSV.
    #[arg(long)]
    summary: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn count(text: &str) -> Result<u64, String> {
    bench::parse_count(text).ok_or_else(|| format!("expected a non-negative integer, got {text:?}"))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Bench(args) => run_bench(args).map(|()| 0),
        Command::Gen(args) => run_gen(args).map(|()| 0),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run_solve(args: SolveArgs) -> Result<u8> {
    let start = Instant::now();
    let text = std::fs::read_to_string(&args.file)
        .with_context(|| format!("cannot read {}", args.file.display()))?;
    let formula = parse_dimacs(&text).with_context(|| args.file.display().to_string())?;
    let config = SolverConfig {
        mode: args.mode,
        theta: args.theta,
        core_lbd_threshold: args.core_lbd,
        max_conflicts: args.max_conflicts,
        rng_seed: args.seed,
        ..SolverConfig::default()
    };
    let mut solver = Solver::new(&formula, config)?;
    if let Some(path) = &args.proof {
        let file =
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
        solver.set_proof(ProofLog::to_writer(file));
    }
    let result = solver.solve()?;

    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    if args.stats {
        let s = solver.stats();
        writeln!(out, "c conflicts:    {}", s.conflicts)?;
        writeln!(out, "c decisions:    {}", s.decisions)?;
        writeln!(out, "c propagations: {}", s.propagations)?;
        writeln!(out, "c restarts:     {}", s.restarts)?;
        writeln!(
            out,
            "c core learnt:  {} of {}",
            s.learnt_core, s.learnt_total
        )?;
        writeln!(out, "c wall time:    {:.3}s", start.elapsed().as_secs_f64())?;
    }
    let code = match &result {
        SolveResult::Sat(model) => {
            writeln!(out, "s SATISFIABLE")?;
            write_model(&mut out, &model.to_dimacs())?;
            10
        }
        SolveResult::Unsat => {
            writeln!(out, "s UNSATISFIABLE")?;
            20
        }
        SolveResult::Unknown => {
            writeln!(out, "s UNKNOWN")?;
            0
        }
    };
    out.flush()?;
    Ok(code)
}

fn write_model<W: Write>(out: &mut W, lits: &[i64]) -> io::Result<()> {
    let mut line = String::from("v");
    for lit in lits.iter().copied().chain(std::iter::once(0)) {
        let token = format!(" {lit}");
        if line.len() + token.len() > 78 {
            writeln!(out, "{line}")?;
            line = String::from("v");
        }
        line.push_str(&token);
    }
    writeln!(out, "{line}")
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn run_bench(args: BenchArgs) -> Result<()> {
    if !(args.timeout.is_finite() && args.timeout > 0.0) {
        bail!("timeout must be a positive number of seconds");
    }
    let configs = bench::parse_configs(&args.configs)?;
    if configs.is_empty() {
        bail!("no configurations given");
    }
    if args.scatter.is_some() && !configs.iter().any(|c| c.name == BASE) {
        bail!("--scatter needs a `{BASE}` configuration to compare against");
    }
    let instances = bench::load_instances(&args.dir)?;
    if instances.is_empty() {
        bail!("no .cnf files in {}", args.dir.display());
    }
    let report = bench::run_bench(
        &instances,
        &configs,
        Duration::from_secs_f64(args.timeout),
        args.jobs,
    );

    let mut out = create(&args.out)?;
    report.write_csv(&mut out)?;
    out.flush()?;
    if let Some(path) = &args.summary {
        let mut out = create(path)?;
        report.write_summary_csv(&mut out)?;
        out.flush()?;
    }
    if let Some(base) = &args.scatter {
        for config in report.configs.iter().filter(|c| *c != BASE) {
            let path = bench::scatter_path(base, config);
            let mut out = create(&path)?;
            report.write_scatter_csv(config, &mut out)?;
            out.flush()?;
        }
    }
    print!("{}", report.render_summary());
    Ok(())
}

fn run_gen(args: GenArgs) -> Result<()> {
    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("cannot create {}", args.out.display()))?;
    for instance in bench::generate_mix(args.count, args.seed) {
        let path = args.out.join(&instance.name);
        std::fs::write(&path, write_dimacs(&instance.formula))
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}
