//! Command-line front end. Every subcommand prints one JSON [`RunReport`] on
//! stdout; notes and errors go to stderr.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::colourful::{shortest_colourful_cycle_with, trial_rng, Backend, SieveOptions, StopRule};
use crate::error::{Error, Result};
use crate::gf2k::FieldCtx;
use crate::graph::{parse_instance, Instance};
use crate::oracle::{
    cycle_cover_label_sum, oracle_longest_cycle_through, oracle_shortest_colourful_by, permanent_bruteforce,
    LabelledArc, LabelledMultigraph, RainbowRule,
};
use crate::reductions::{bipartite_long_cycle, check_params, general_long_cycle, GeneralParams};

pub const THREADS_ENV: &str = "LONGCYCLE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "longcycle", version, about = "Long cycles through a specified edge")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shortest cycle through the specified edge with a k-rainbow subset of weight >= t.
    Colourful(ColourfulArgs),
    /// Is there a cycle of length >= k through the specified edge?
    LongCycle(LongCycleArgs),
    /// Long-cycle detection in a bipartite graph.
    Bipartite(BipartiteArgs),
    /// Exact brute-force answers for small instances.
    Oracle(OracleArgs),
    /// Feasibility report for (alpha, beta, epsilon).
    CheckParams(CheckParamsArgs),
}

#[derive(Debug, Args)]
pub struct SeedArg {
    /// RNG seed; generated and echoed in the report when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BackendArg {
    Evaluation,
    Berkowitz,
}

#[derive(Debug, Args)]
pub struct ColourfulArgs {
    pub instance: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=63))]
    pub k: u64,
    #[arg(long, default_value_t = 0)]
    pub t: usize,
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, value_enum, default_value_t = BackendArg::Evaluation)]
    pub backend: BackendArg,
    #[command(flatten)]
    pub seed: SeedArg,
}

#[derive(Debug, Args)]
pub struct LongCycleArgs {
    pub instance: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
    pub k: u64,
    #[arg(long, default_value_t = 0.5774)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0856)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.01)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 32)]
    pub outer: usize,
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub inner: u64,
    #[command(flatten)]
    pub seed: SeedArg,
}

#[derive(Debug, Args)]
pub struct BipartiteArgs {
    pub instance: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[command(flatten)]
    pub seed: SeedArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum OracleMode {
    ShortestColourful,
    LongestCycle,
    CoverSum,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RuleArg {
    /// The rainbow subset must contain the specified edge.
    ContainsSpecified,
    /// Any rainbow subset of the cycle.
    Any,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub instance: PathBuf,
    #[arg(long, value_enum)]
    pub mode: OracleMode,
    /// Required for shortest-colourful.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=63))]
    pub k: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub t: usize,
    #[arg(long, value_enum, default_value_t = RuleArg::ContainsSpecified)]
    pub rule: RuleArg,
    /// Seeds the random arc labels of cover-sum.
    #[command(flatten)]
    pub seed: SeedArg,
}

#[derive(Debug, Args)]
pub struct CheckParamsArgs {
    #[arg(long, default_value_t = 0.5774)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0856)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.01)]
    pub epsilon: f64,
    /// Also report the integer quantities at this k.
    #[arg(long)]
    pub k: Option<usize>,
}

/// Machine-readable result of one command. Deterministic given the instance,
/// seed and flags, apart from `wall_ms`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub args: Vec<String>,
    pub seed: Option<u64>,
    pub seed_generated: bool,
    pub parameters: Value,
    pub answer: Value,
    pub summary: Value,
    pub wall_ms: f64,
}

struct Outcome {
    parameters: Value,
    answer: Value,
    summary: Value,
}

fn length_value(len: Option<usize>) -> Value {
    len.map_or_else(|| json!("infinity"), |l| json!(l))
}

fn load(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_instance(&text)
}

fn resolve_seed(arg: &SeedArg) -> (u64, bool) {
    match arg.seed {
        Some(s) => (s, false),
        None => {
            let s = rand::random::<u64>();
            eprintln!("note: no --seed given, using {s}");
            (s, true)
        }
    }
}

fn colourful(a: &ColourfulArgs, seed: u64) -> Result<Outcome> {
    let inst = load(&a.instance)?;
    let backend = match a.backend {
        BackendArg::Evaluation => Backend::Evaluation,
        BackendArg::Berkowitz => Backend::Berkowitz,
    };
    let opts = SieveOptions {
        backend,
        ..SieveOptions::default()
    };
    let res = shortest_colourful_cycle_with(
        &inst.graph,
        a.k as usize,
        a.t,
        a.trials as usize,
        seed,
        opts,
        StopRule::Never,
    )?;
    Ok(Outcome {
        parameters: json!({ "k": a.k, "t": a.t, "trials": a.trials, "backend": backend }),
        answer: length_value(res.length),
        summary: json!({
            "trials_used": res.trials_used,
            "per_trial": res.per_trial_lengths.iter().map(|&l| length_value(l)).collect::<Vec<_>>(),
        }),
    })
}

fn long_cycle(a: &LongCycleArgs, seed: u64) -> Result<Outcome> {
    let inst = load(&a.instance)?;
    let params = GeneralParams {
        alpha: a.alpha,
        beta: a.beta,
        epsilon: a.epsilon,
    };
    let k = a.k as usize;
    let report = check_params(&params, Some(k));
    if !report.feasible {
        let detail = serde_json::to_string(&report).unwrap_or_default();
        return Err(Error::InvalidInput(format!(
            "infeasible parameters; check-params reports {detail}"
        )));
    }
    let out = general_long_cycle(
        inst.graph.graph(),
        inst.graph.specified(),
        k,
        &params,
        a.outer,
        a.inner as usize,
        seed,
    )?;
    if k > inst.graph.n() {
        eprintln!("note: k = {k} exceeds n = {}, so no such cycle exists", inst.graph.n());
    }
    Ok(Outcome {
        parameters: json!({
            "k": k,
            "alpha": a.alpha,
            "beta": a.beta,
            "epsilon": a.epsilon,
            "outer_trials": a.outer,
            "inner_trials": a.inner,
            "k_prime": out.k_prime,
            "t_range": [out.t_range.0, out.t_range.1],
        }),
        answer: json!(out.found),
        summary: serde_json::to_value(&out).map_err(|e| Error::invalid(e.to_string()))?,
    })
}

fn bipartite(a: &BipartiteArgs, seed: u64) -> Result<Outcome> {
    let inst = load(&a.instance)?;
    let out = bipartite_long_cycle(
        inst.graph.graph(),
        inst.graph.specified(),
        a.k as usize,
        inst.bipartition.as_ref(),
        a.trials as usize,
        seed,
    )?;
    Ok(Outcome {
        parameters: json!({ "k": a.k, "k_prime": out.k_prime, "trials": a.trials }),
        answer: json!(out.found),
        summary: json!({ "length": length_value(out.length), "trials_used": out.trials_used }),
    })
}

fn oracle(a: &OracleArgs, seed: u64) -> Result<Outcome> {
    let inst = load(&a.instance)?;
    let g = &inst.graph;
    match a.mode {
        OracleMode::ShortestColourful => {
            let k =
                a.k.ok_or_else(|| Error::invalid("--k is required for shortest-colourful"))? as usize;
            let rule = match a.rule {
                RuleArg::ContainsSpecified => RainbowRule::ContainsSpecified,
                RuleArg::Any => RainbowRule::Any,
            };
            let len = oracle_shortest_colourful_by(g, k, a.t, rule)?;
            Ok(Outcome {
                parameters: json!({ "mode": "shortest-colourful", "k": k, "t": a.t, "rule": format!("{rule:?}") }),
                answer: length_value(len),
                summary: Value::Null,
            })
        }
        OracleMode::LongestCycle => {
            let len = oracle_longest_cycle_through(g.graph(), g.specified())?;
            Ok(Outcome {
                parameters: json!({ "mode": "longest-cycle" }),
                answer: json!(len),
                summary: Value::Null,
            })
        }
        OracleMode::CoverSum => {
            // both orientations of every edge plus a loop per vertex, random labels
            let ctx = FieldCtx::for_order(g.n() as u64)?;
            let mut rng = trial_rng(seed, 0);
            let mut arcs = Vec::new();
            for &(u, v) in g.graph().edges() {
                for (x, y) in [(u, v), (v, u)] {
                    arcs.push(LabelledArc {
                        init: x - 1,
                        ter: y - 1,
                        label: ctx.sample(&mut rng),
                    });
                }
            }
            for x in 0..g.n() {
                arcs.push(LabelledArc {
                    init: x,
                    ter: x,
                    label: ctx.sample(&mut rng),
                });
            }
            let d = LabelledMultigraph { n: g.n(), arcs };
            let sum = cycle_cover_label_sum(&ctx, &d)?;
            let perm = permanent_bruteforce(&ctx, &d.label_sum_matrix(&ctx))?;
            Ok(Outcome {
                parameters: json!({ "mode": "cover-sum", "kappa": ctx.kappa(), "arcs": d.arcs.len() }),
                answer: json!(sum.bits()),
                summary: json!({ "permanent": perm.bits(), "agree": sum == perm }),
            })
        }
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> std::result::Result<RunReport, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = Cli::try_parse_from(&argv).map_err(CliError::Usage)?;
    let args: Vec<String> = argv.iter().skip(1).map(|s| s.to_string_lossy().into_owned()).collect();
    configure_threads().map_err(CliError::Run)?;

    let start = Instant::now();
    let (name, seed, outcome) = match &cli.command {
        Command::Colourful(a) => {
            let s = resolve_seed(&a.seed);
            ("colourful", Some(s), colourful(a, s.0))
        }
        Command::LongCycle(a) => {
            let s = resolve_seed(&a.seed);
            ("long-cycle", Some(s), long_cycle(a, s.0))
        }
        Command::Bipartite(a) => {
            let s = resolve_seed(&a.seed);
            ("bipartite", Some(s), bipartite(a, s.0))
        }
        Command::Oracle(a) => {
            let s = if matches!(a.mode, OracleMode::CoverSum) {
                Some(resolve_seed(&a.seed))
            } else {
                None
            };
            ("oracle", s, oracle(a, s.map_or(0, |s| s.0)))
        }
        Command::CheckParams(a) => {
            let params = GeneralParams {
                alpha: a.alpha,
                beta: a.beta,
                epsilon: a.epsilon,
            };
            let report = check_params(&params, a.k);
            let out = serde_json::to_value(&report)
                .map(|v| Outcome {
                    parameters: json!({ "alpha": a.alpha, "beta": a.beta, "epsilon": a.epsilon, "k": a.k }),
                    answer: json!(report.feasible),
                    summary: v,
                })
                .map_err(|e| Error::invalid(e.to_string()));
            ("check-params", None, out)
        }
    };
    let outcome = outcome.map_err(CliError::Run)?;
    Ok(RunReport {
        command: name.to_string(),
        args,
        seed: seed.map(|s| s.0),
        seed_generated: seed.is_some_and(|s| s.1),
        parameters: outcome.parameters,
        answer: outcome.answer,
        summary: outcome.summary,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

#[derive(Debug)]
pub enum CliError {
    Usage(clap::Error),
    Run(Error),
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t >= 1)
        .ok_or_else(|| Error::invalid(format!("{THREADS_ENV}={raw:?} is not a positive integer")))?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

/// Entry point for the binary: prints the report and maps errors to exit codes
/// (2 for usage errors, 1 for everything else).
pub fn main_from_env() -> ExitCode {
    match run(std::env::args_os()) {
        Ok(report) => match serde_json::to_string_pretty(&report) {
            Ok(text) => {
                let mut out = std::io::stdout().lock();
                match writeln!(out, "{text}").and_then(|()| out.flush()) {
                    // a closed reader is not our failure
                    Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                        eprintln!("error: {e}");
                        ExitCode::FAILURE
                    }
                    _ => ExitCode::SUCCESS,
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::FAILURE
            }
        },
        Err(CliError::Usage(e)) => {
            let code = e.exit_code();
            let _ = e.print();
            ExitCode::from(code.clamp(0, 255) as u8)
        }
        Err(CliError::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
