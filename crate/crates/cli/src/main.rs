//! Command-line driver: catalog inspection, orthogonality-graph export,
//! the q_s solvers, closed-form bounds, Monte-Carlo experiments, and a
//! one-shot reproduction of the headline table.
//!
//! Exit codes: 0 success, 1 usage error, 2 input validation error,
//! 3 timeout without a proven optimum (the best-known result is still
//! emitted).

use clap::{Args, Parser, Subcommand, ValueEnum};
use ksmerit::bounds::{bound_to_f64, rank_bound, theorem1_bound};
use ksmerit::catalog::{load_builtin, parse_vector_set, VectorSet, BUILTIN_NAMES};
use ksmerit::graph::OrthoGraph;
use ksmerit::montecarlo::{
    annulus_capture_experiment, cap_hit_check, cap_independence_check, cap_labeling,
    overlap_distribution_test, seeded_center, McConfig,
};
use ksmerit::solver::{
    brute_force_qs, independence_bound, solve_qs_exact, solve_qs_heuristic, transversal_bound,
    validate_labeling,
};
use num_rational::BigRational;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

#[derive(Parser)]
#[command(
    name = "ksmerit",
    version,
    about = "Contextuality robustness figures of merit for Kochen-Specker ray sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect the built-in ray-set catalog
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Emit the orthogonality graph of a ray set
    Graph {
        #[command(flatten)]
        input: SetInput,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
    },
    /// Compute the contextuality cost q_s and the labeling behind it
    Solve {
        #[command(flatten)]
        input: SetInput,
        #[arg(long, value_enum)]
        mode: SolveMode,
        /// Time budget in seconds for the exact search (0 = unlimited)
        #[arg(long, default_value_t = 600)]
        timeout: u64,
        /// Local-search move budget for the heuristic
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// RNG seed; required in heuristic mode
        #[arg(long)]
        seed: Option<u64>,
        /// Write the full result as JSON to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form quantum bounds on the figure of merit
    Bounds {
        #[command(subcommand)]
        which: BoundsCmd,
    },
    /// Seeded Monte-Carlo experiments behind the geometric arguments
    Mc {
        #[command(subcommand)]
        which: McCmd,
    },
    /// Recompute the catalog comparison table in one shot
    ReproduceTable {
        /// Per-row time budget in seconds, split across the independence,
        /// transversal and exact-q_s searches (0 = unlimited)
        #[arg(long, default_value_t = 600)]
        timeout: u64,
        /// Seed for heuristic fallbacks on rows the exact solver cannot
        /// finish in time
        #[arg(long, default_value_t = 3)]
        seed: u64,
        /// Heuristic move budget for fallback rows
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Names, ray counts and dimensions of the built-in sets
    List,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SetInput {
    /// Built-in set name (see `catalog list`)
    #[arg(long)]
    set: Option<String>,
    /// Vector-set JSON file
    #[arg(long = "in", value_name = "FILE")]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum SolveMode {
    /// Branch-and-bound with optimality proof
    Exact,
    /// Seeded annealing; upper bound only
    Heuristic,
    /// Full 3^n enumeration (n <= 15)
    Oracle,
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Rank-1 bound (1 - 1/d)^(d-1) - 2^(1-d) + (1/d)(1 - 1/d)^(d-1)
    Rank1 {
        #[arg(long)]
        d: usize,
    },
    /// Rank-r bound I_{1/2}(r, d-r) - I_{r/d}(r, d-r)
    Rank {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: usize,
    },
    /// CSV of (d, rank-1 bound) pairs for 2 <= d <= dmax
    Scan {
        #[arg(long)]
        dmax: usize,
    },
}

#[derive(Subcommand)]
enum McCmd {
    /// KS-test projector overlaps of Haar states against Beta(r, d-r)
    Beta {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        par: Parallelism,
    },
    /// Check that every context offers overlap >= 1/d to random states
    Caphit {
        #[command(flatten)]
        input: SetInput,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        par: Parallelism,
    },
    /// Check that no orthogonal pair shares the overlap > 1/2 cap
    Capind {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        par: Parallelism,
    },
    /// Rotate a set by Haar unitaries and measure annulus capture
    Annulus {
        #[command(flatten)]
        input: SetInput,
        /// Lower overlap threshold (default 1/d)
        #[arg(long)]
        t1: Option<f64>,
        /// Upper overlap threshold (default 1/2)
        #[arg(long)]
        t2: Option<f64>,
        #[arg(long, default_value_t = 2_000)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        par: Parallelism,
    },
    /// Threshold-label a set around a seeded Haar-random center
    Label {
        #[command(flatten)]
        input: SetInput,
        /// Lower overlap threshold (default 1/d)
        #[arg(long)]
        t1: Option<f64>,
        /// Upper overlap threshold (default 1/2)
        #[arg(long)]
        t2: Option<f64>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Parallelism {
    /// Worker threads (default: KSMERIT_THREADS or all cores)
    #[arg(long, env = "KSMERIT_THREADS")]
    threads: Option<usize>,
}

impl Parallelism {
    fn count(&self) -> usize {
        self.threads.unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
    }
}

/// Writes a line to stdout, treating a broken pipe (e.g. `| head`) as a
/// clean exit rather than a panic.
fn print_line(args: std::fmt::Arguments) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_fmt(args).and_then(|()| out.write_all(b"\n")) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("failed writing to stdout: {e}");
    }
}

macro_rules! outln {
    ($($arg:tt)*) => { print_line(format_args!($($arg)*)) };
}

enum CliError {
    Usage(String),
    Input(String),
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> CliError {
        CliError::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version are successful terminations, not misuse.
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Catalog { action } => {
            match action {
                CatalogAction::List => catalog_list()?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Graph { input, out, format } => {
            let set = resolve_set(&input)?;
            let graph = OrthoGraph::build(&set);
            let text = match format {
                GraphFormat::Dot => graph.to_dot(),
                GraphFormat::Json => graph.to_json(),
            };
            emit(out.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve {
            input,
            mode,
            timeout,
            budget,
            seed,
            out,
        } => solve_command(&input, mode, timeout, budget, seed, out.as_deref()),
        Command::Bounds { which } => {
            bounds_command(&which)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Mc { which } => {
            mc_command(which)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ReproduceTable {
            timeout,
            seed,
            budget,
        } => {
            reproduce_table(timeout, seed, budget)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn catalog_list() -> Result<(), CliError> {
    outln!("{:<16} {:>6} {:>10}", "name", "rays", "dimension");
    for name in BUILTIN_NAMES {
        let set = load_builtin(name)?;
        outln!("{:<16} {:>6} {:>10}", name, set.len(), set.dimension());
    }
    Ok(())
}

fn resolve_set(input: &SetInput) -> Result<VectorSet, CliError> {
    if let Some(name) = &input.set {
        return Ok(load_builtin(name)?);
    }
    let path = input.file.as_ref().expect("clap group requires one source");
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_vector_set(&text)?)
}

fn emit(out: Option<&std::path::Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            fs::write(path, text)
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
        }
        None => outln!("{text}"),
    }
    Ok(())
}

/// Seconds to an optional duration; 0 means unlimited.
fn time_budget(seconds: u64) -> Option<Duration> {
    (seconds > 0).then(|| Duration::from_secs(seconds))
}

/// `p/q ≈ decimal`, always both forms for exact quantities.
fn fmt_ratio(value: &BigRational) -> String {
    format!(
        "{}/{} ≈ {}",
        value.numer(),
        value.denom(),
        sig6(bound_to_f64(value))
    )
}

/// Six significant digits, plain decimal notation.
fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn solve_command(
    input: &SetInput,
    mode: SolveMode,
    timeout: u64,
    budget: u64,
    seed: Option<u64>,
    out: Option<&std::path::Path>,
) -> Result<ExitCode, CliError> {
    let set = resolve_set(input)?;
    let graph = OrthoGraph::build(&set);
    if graph.omega_mismatch() {
        eprintln!(
            "warning: clique number {} differs from dimension {}; contexts are not full bases",
            graph.clique_number(),
            set.dimension()
        );
    }
    let contexts = graph.enumerate_contexts();
    let result = match mode {
        SolveMode::Exact => solve_qs_exact(&graph, &contexts, time_budget(timeout))?,
        SolveMode::Heuristic => {
            let seed = seed.ok_or_else(|| {
                CliError::Usage("--seed is required in heuristic mode".to_string())
            })?;
            solve_qs_heuristic(&graph, &contexts, budget, seed)?
        }
        SolveMode::Oracle => brute_force_qs(&graph, &contexts)?,
    };
    outln!(
        "set: {} ({} rays, dimension {})",
        set.name(),
        set.len(),
        set.dimension()
    );
    outln!(
        "contexts: {} of size {}",
        contexts.len(),
        graph.clique_number()
    );
    outln!("qs = {}", result.qs);
    outln!("q = {}", fmt_ratio(&result.q()));
    outln!("transversal size: {}", result.transversal.len());
    outln!("independent part: {}", result.independent_part.len());
    outln!("optimal: {}", result.optimal);
    outln!(
        "nodes: {}, time: {} ms, proven lower bound: {}",
        result.stats.nodes, result.stats.millis, result.stats.lower_bound
    );
    if let Some(path) = out {
        fs::write(path, result.to_json())
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
        eprintln!("wrote {}", path.display());
    }
    if mode == SolveMode::Exact && !result.optimal {
        eprintln!("timed out before proving optimality; reported values are an upper bound");
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn bounds_command(which: &BoundsCmd) -> Result<(), CliError> {
    match which {
        BoundsCmd::Rank1 { d } => {
            let value = theorem1_bound(*d)?;
            outln!("rank-1 bound, d = {d}: {}", fmt_ratio(&value));
        }
        BoundsCmd::Rank { d, r } => {
            let value = rank_bound(*d, *r)?;
            outln!("rank-{r} bound, d = {d}: {}", fmt_ratio(&value));
        }
        BoundsCmd::Scan { dmax } => {
            if *dmax < 2 {
                return Err(CliError::Input(
                    "scan needs --dmax of at least 2".to_string(),
                ));
            }
            outln!("d,bound,decimal");
            for d in 2..=*dmax {
                let value = theorem1_bound(d)?;
                outln!(
                    "{d},{}/{},{}",
                    value.numer(),
                    value.denom(),
                    sig6(bound_to_f64(&value))
                );
            }
        }
    }
    Ok(())
}

fn mc_command(which: McCmd) -> Result<(), CliError> {
    match which {
        McCmd::Beta {
            d,
            r,
            samples,
            seed,
            par,
        } => {
            let cfg = McConfig::new(d, r, samples, seed)?;
            let report = overlap_distribution_test(&cfg, par.count())?;
            outln!("{}", report.to_json());
        }
        McCmd::Caphit {
            input,
            trials,
            seed,
            par,
        } => {
            let set = resolve_set(&input)?;
            let report = cap_hit_check(&set, trials, seed, par.count())?;
            outln!("{}", report.to_json());
        }
        McCmd::Capind {
            d,
            trials,
            seed,
            par,
        } => {
            let report = cap_independence_check(d, trials, seed, par.count())?;
            outln!("{}", report.to_json());
        }
        McCmd::Annulus {
            input,
            t1,
            t2,
            trials,
            seed,
            par,
        } => {
            let set = resolve_set(&input)?;
            let t1 = t1.unwrap_or(1.0 / set.dimension() as f64);
            let t2 = t2.unwrap_or(0.5);
            let report = annulus_capture_experiment(&set, t1, t2, trials, seed, par.count())?;
            outln!("{}", report.to_json());
        }
        McCmd::Label {
            input,
            t1,
            t2,
            seed,
            out,
        } => {
            let set = resolve_set(&input)?;
            let t1 = t1.unwrap_or(1.0 / set.dimension() as f64);
            let t2 = t2.unwrap_or(0.5);
            let center = seeded_center(set.dimension(), seed);
            let labeling = cap_labeling(&set, &center, t1, t2)?;
            let graph = OrthoGraph::build(&set);
            let contexts = graph.enumerate_contexts();
            let report = validate_labeling(&graph, &contexts, &labeling)?;
            let text = serde_json::to_string_pretty(&serde_json::json!({
                "experiment": "cap_labeling",
                "set": set.name(),
                "seed": seed,
                "t1": t1,
                "t2": t2,
                "center": center.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
                "labels": labeling.0.iter().map(|l| l.as_str()).collect::<Vec<_>>(),
                "valid": report.valid,
            }))
            .expect("report JSON cannot fail");
            emit(out.as_deref(), &text)?;
        }
    }
    Ok(())
}

struct TableRow {
    name: &'static str,
    dimension: usize,
    transversal: String,
    independence: String,
    merit: String,
    status: &'static str,
}

fn reproduce_table(timeout: u64, seed: u64, budget: u64) -> Result<(), CliError> {
    // Each row runs up to three exact searches; share the budget evenly.
    let per_search = if timeout == 0 {
        None
    } else {
        Some(Duration::from_secs((timeout / 3).max(1)))
    };
    let mut rows = Vec::new();
    for name in BUILTIN_NAMES {
        let set = load_builtin(name)?;
        let graph = OrthoGraph::build(&set);
        let contexts = graph.enumerate_contexts();

        let alpha = independence_bound(&graph, per_search);
        let tau = transversal_bound(&graph, &contexts, per_search)?;
        let exact = solve_qs_exact(&graph, &contexts, per_search)?;
        let (result, status) = if exact.optimal {
            (exact, "exact")
        } else {
            let heur = solve_qs_heuristic(&graph, &contexts, budget, seed)?;
            let best = if heur.qs <= exact.qs { heur } else { exact };
            (best, "heuristic-upper-bound")
        };

        // Unproven searches still carry witnesses: any labeling's
        // transversal bounds tau from above, its ONE part bounds alpha
        // from below.
        let transversal = if tau.optimal {
            tau.size.to_string()
        } else {
            format!("≤ {}", tau.size.min(result.transversal.len()))
        };
        let independence = if alpha.optimal {
            alpha.size.to_string()
        } else {
            format!("≥ {}", alpha.size.max(result.independent_part.len()))
        };
        let merit = if status == "exact" {
            fmt_ratio(&result.q())
        } else {
            format!("≤ {}", fmt_ratio(&result.q()))
        };
        rows.push(TableRow {
            name,
            dimension: set.dimension(),
            transversal,
            independence,
            merit,
            status,
        });
    }
    outln!(
        "{:<16} {:>4} {:>12} {:>13} {:<24} {}",
        "name", "dim", "transversal", "independence", "merit", "status"
    );
    for row in rows {
        outln!(
            "{:<16} {:>4} {:>12} {:>13} {:<24} {}",
            row.name, row.dimension, row.transversal, row.independence, row.merit, row.status
        );
    }
    Ok(())
}
