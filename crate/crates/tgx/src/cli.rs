//! `tgx` command line.
//!
//! Exit codes: 0 on success, 1 when validation finds violations or an algorithm fails on
//! valid input, 2 on usage, IO or parse errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use tgx_core::analysis::{vertex_frequency, FrequencyTable, RegularityRule};
use tgx_core::classes::{
    gen_broadcast, gen_random_frequent, gen_sequential, gen_star_lower_bound, gen_transport,
    random_connected_graph, random_routes, random_sequential_instance, BroadcastPolicy,
};
use tgx_core::oracle::{exists_exploration_within, fastest_exploration, OracleOutcome, Threshold, DEFAULT_VERTEX_LIMIT};
use tgx_core::planner::explore;
use tgx_core::validation::{
    validate_always_connected, validate_broadcast, validate_exploration, validate_sequential, validate_temporal_walk,
    validate_transport, ValidationReport,
};
use tgx_core::{Error as CoreError, StaticGraph, TemporalGraph};

use crate::format::{self, FormatError};

#[derive(Parser, Debug)]
#[command(name = "tgx", version, about = "Exploration of temporal graphs")]
struct Cli {
    /// Suppress reports and warnings; only the exit code is meaningful.
    #[arg(long, short, global = true)]
    quiet: bool,

    /// Print reports as a flat JSON object.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Per-edge frequency table as `u v f [r]` lines.
    Freq {
        graph: PathBuf,
        /// Add the regularity column.
        #[arg(long)]
        regularity: bool,
        /// Use the two-point regularity rule instead of the three-point rule.
        #[arg(long, requires = "regularity")]
        two_point: bool,
        /// Print the broadcast frequency of this vertex instead (directed broadcast graphs).
        #[arg(long, conflicts_with = "regularity")]
        vertex: Option<usize>,
    },
    /// Spanning-tree exploration with a bound report.
    Explore {
        graph: PathBuf,
        #[arg(long)]
        start: usize,
        /// Write the temporal walk as TW1.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact fastest exploration (small graphs only).
    Oracle {
        graph: PathBuf,
        #[arg(long)]
        start: usize,
        /// Refuse graphs with more vertices than this (at most 31).
        #[arg(long, default_value_t = DEFAULT_VERTEX_LIMIT)]
        limit: usize,
        /// Write an optimal walk as TW1.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Answer whether an exploration of length below `ELL` exists.
        #[arg(long, value_name = "ELL")]
        within: Option<usize>,
        /// With `--within`, accept length equal to `ELL` too.
        #[arg(long, requires = "within")]
        inclusive: bool,
    },
    /// Generate instances of the supported graph classes.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Check a file against the rules of its class.
    #[command(subcommand)]
    Validate(ValidateCommand),
    /// Time the frequency table and the planner on random frequent graphs.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [8usize, 16, 32, 64, 128])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        f: usize,
        #[arg(long, default_value_t = 0.2)]
        density: f64,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
}

#[derive(Args, Debug)]
struct SeedArg {
    /// RNG seed.
    #[arg(long, env = "TGX_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct OutArg {
    /// Output file; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Policy {
    RoundRobin,
    Greedy,
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Star lower-bound instance. Center is vertex 0; explore from vertex 1, the leaf
    /// that is active every timestep.
    Star {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Periodic transport network from RT1 routes, or from random routes.
    Transport {
        /// Read routes from this RT1 file.
        #[arg(long, conflicts_with_all = ["n", "max_routes", "max_period"])]
        routes: Option<PathBuf>,
        /// Vertices of random routes.
        #[arg(long, required_unless_present = "routes")]
        n: Option<usize>,
        #[arg(long, default_value_t = 4)]
        max_routes: usize,
        #[arg(long, default_value_t = 8)]
        max_period: usize,
        #[arg(long)]
        lifetime: usize,
        /// Write the routes used as RT1.
        #[arg(long)]
        routes_out: Option<PathBuf>,
        #[command(flatten)]
        seed: SeedArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Sequential graph over a random symmetric directed graph.
    Seq {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        /// Defaults to `max in-degree * (2n - 2)`.
        #[arg(long)]
        lifetime: Option<usize>,
        /// Write the in-edge permutations as SQ1.
        #[arg(long)]
        schedule_out: Option<PathBuf>,
        #[command(flatten)]
        seed: SeedArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Broadcast network over a random connected graph (or `K_n` with `--complete`).
    Broadcast {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.4, conflicts_with = "complete")]
        density: f64,
        #[arg(long)]
        complete: bool,
        #[arg(long, value_enum, default_value_t = Policy::RoundRobin)]
        policy: Policy,
        #[arg(long)]
        lifetime: usize,
        #[command(flatten)]
        seed: SeedArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Random f-frequent graph.
    RandomFrequent {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        f: usize,
        #[arg(long, default_value_t = 0.3)]
        density: f64,
        /// Defaults to `4 f n`.
        #[arg(long)]
        lifetime: Option<usize>,
        #[command(flatten)]
        seed: SeedArg,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand, Debug)]
enum ValidateCommand {
    /// Temporal walk well-formedness.
    Walk { graph: PathBuf, walk: PathBuf },
    /// Temporal walk that starts at `--start` and visits every vertex.
    Exploration {
        graph: PathBuf,
        walk: PathBuf,
        #[arg(long)]
        start: usize,
    },
    /// Sequential graph against SQ1 permutations.
    Sequential { graph: PathBuf, schedule: PathBuf },
    /// Broadcast network rules.
    Broadcast { graph: PathBuf },
    /// Every snapshot is connected.
    Connected { graph: PathBuf },
    /// Transport network against RT1 routes.
    Transport { graph: PathBuf, routes: PathBuf },
}

/// Errors that map to exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct UsageError(String);

struct Ctx<'a> {
    quiet: bool,
    json: bool,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn warn(&mut self, msg: &str) {
        if !self.quiet {
            let _ = writeln!(self.err, "warning: {msg}");
        }
    }

    fn print(&mut self, text: &str) -> anyhow::Result<()> {
        if !self.quiet {
            self.out.write_all(text.as_bytes())?;
        }
        Ok(())
    }

    /// Writes to `path`, or to stdout regardless of `--quiet` when no path is given.
    fn emit(&mut self, path: Option<&Path>, text: &str) -> anyhow::Result<()> {
        match path {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
            None => self.out.write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn report(&mut self, entries: Vec<(&str, Value)>) -> anyhow::Result<()> {
        let text = if self.json {
            let map: Map<String, Value> = entries.into_iter().map(|(k, v)| (k.to_owned(), v)).collect();
            format!("{}\n", Value::Object(map))
        } else {
            entries
                .into_iter()
                .map(|(k, v)| match v {
                    Value::String(s) => format!("{k}: {s}\n"),
                    v => format!("{k}: {v}\n"),
                })
                .collect()
        };
        self.print(&text)
    }

    fn read(&mut self, path: &Path) -> anyhow::Result<String> {
        fs::read_to_string(path).map_err(|e| UsageError(format!("reading {}: {e}", path.display())).into())
    }

    fn graph(&mut self, path: &Path) -> anyhow::Result<TemporalGraph> {
        let g = format::parse_tg1(&self.read(path)?).map_err(|e| located(path, e))?;
        let empty = g.empty_timesteps();
        if !empty.is_empty() {
            let list: Vec<String> = empty.iter().map(usize::to_string).collect();
            self.warn(&format!("{}: {} empty snapshot(s) at t = {}", path.display(), empty.len(), list.join(",")));
        }
        Ok(g)
    }

    fn validation(&mut self, report: &ValidationReport) -> anyhow::Result<i32> {
        if self.json {
            let rules: Vec<Value> = report.violations.iter().map(|v| json!(v.to_string())).collect();
            self.report(vec![("ok", json!(report.ok())), ("violations", Value::Array(rules))])?;
        } else {
            let mut text: String = report.violations.iter().map(|v| format!("{v}\n")).collect();
            if report.ok() {
                text.push_str("ok\n");
            }
            self.print(&text)?;
        }
        Ok(if report.ok() { 0 } else { 1 })
    }
}

fn located(path: &Path, e: FormatError) -> anyhow::Error {
    UsageError(format!("{}: {e}", path.display())).into()
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let mut ctx = Ctx { quiet: cli.quiet, json: cli.json, out, err };
    match dispatch(&mut ctx, cli.command) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e:#}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> i32 {
    if e.downcast_ref::<UsageError>().is_some() || e.downcast_ref::<std::io::Error>().is_some() {
        return 2;
    }
    match e.downcast_ref::<CoreError>() {
        Some(CoreError::InvalidParameter(_) | CoreError::VertexOutOfRange { .. } | CoreError::OracleLimit { .. }) => 2,
        _ => 1,
    }
}

fn dispatch(ctx: &mut Ctx<'_>, command: Command) -> anyhow::Result<i32> {
    match command {
        Command::Freq { graph, regularity, two_point, vertex } => {
            let g = ctx.graph(&graph)?;
            if let Some(v) = vertex {
                let f = vertex_frequency(&g, v)?;
                ctx.report(vec![("vertex", json!(v)), ("frequency", json!(f))])?;
                return Ok(0);
            }
            let ft = if regularity {
                let rule = if two_point { RegularityRule::TwoPoint } else { RegularityRule::ThreePoint };
                FrequencyTable::with_regularity(&g, rule)
            } else {
                FrequencyTable::compute(&g)
            };
            let mut text = String::new();
            for (e, f, r) in ft.rows() {
                match r {
                    Some(r) => text.push_str(&format!("{} {} {f} {r}\n", e.u, e.v)),
                    None => text.push_str(&format!("{} {} {f}\n", e.u, e.v)),
                }
            }
            ctx.print(&text)?;
            Ok(0)
        }
        Command::Explore { graph, start, out } => {
            let g = ctx.graph(&graph)?;
            let ex = explore(&g, start)?;
            if let Some(p) = &out {
                ctx.emit(Some(p), &format::write_tw1(&ex.walk))?;
            }
            ctx.report(ex.report.entries().iter().map(|&(k, v)| (k, json!(v))).collect())?;
            Ok(0)
        }
        Command::Oracle { graph, start, limit, witness, within, inclusive } => {
            let g = ctx.graph(&graph)?;
            if let Some(ell) = within {
                let threshold = if inclusive { Threshold::Inclusive } else { Threshold::Strict };
                let yes = exists_exploration_within(&g, start, ell, threshold, limit)?;
                ctx.report(vec![("exists", json!(yes))])?;
                return Ok(0);
            }
            match fastest_exploration(&g, start, limit)? {
                OracleOutcome::Optimal { length, witness: w } => {
                    if let Some(p) = &witness {
                        ctx.emit(Some(p), &format::write_tw1(&w))?;
                    }
                    ctx.report(vec![("optimum", json!(length))])?;
                }
                OracleOutcome::Infeasible => {
                    if ctx.json {
                        ctx.report(vec![("optimum", Value::Null)])?;
                    } else {
                        ctx.print("infeasible\n")?;
                    }
                }
            }
            Ok(0)
        }
        Command::Gen(g) => generate(ctx, g),
        Command::Validate(v) => validate(ctx, v),
        Command::Bench { sizes, f, density, reps, seed } => bench(ctx, &sizes, f, density, reps.max(1), seed.seed),
    }
}

fn generate(ctx: &mut Ctx<'_>, command: GenCommand) -> anyhow::Result<i32> {
    let (g, out) = match command {
        GenCommand::Star { n, r, out } => (gen_star_lower_bound(n, r)?.graph, out),
        GenCommand::Transport { routes, n, max_routes, max_period, lifetime, routes_out, seed, out } => {
            let (n, routes) = match routes {
                Some(p) => format::parse_rt1(&ctx.read(&p)?).map_err(|e| located(&p, e))?,
                None => {
                    let n = n.ok_or_else(|| anyhow!(UsageError("--n is required without --routes".into())))?;
                    (n, random_routes(n, max_routes, max_period, seed.seed)?)
                }
            };
            if let Some(p) = &routes_out {
                ctx.emit(Some(p), &format::write_rt1(n, &routes))?;
            }
            (gen_transport(&routes, n, lifetime)?, out)
        }
        GenCommand::Seq { n, density, lifetime, schedule_out, seed, out } => {
            let (underlying, sched) = random_sequential_instance(n, density, seed.seed)?;
            let max_in = sched.perms.iter().map(Vec::len).max().unwrap_or(1);
            let lifetime = lifetime.unwrap_or(max_in * (2 * n - 2));
            if let Some(p) = &schedule_out {
                ctx.emit(Some(p), &format::write_sq1(&sched))?;
            }
            (gen_sequential(&underlying, &sched, lifetime)?, out)
        }
        GenCommand::Broadcast { n, density, complete, policy, lifetime, seed, out } => {
            let underlying = if complete { StaticGraph::complete(n) } else { random_connected_graph(n, density, seed.seed)? };
            let policy = match policy {
                Policy::RoundRobin => BroadcastPolicy::RoundRobin,
                Policy::Greedy => BroadcastPolicy::GreedyRandom { seed: seed.seed },
            };
            (gen_broadcast(&underlying, policy, lifetime)?.0, out)
        }
        GenCommand::RandomFrequent { n, f, density, lifetime, seed, out } => {
            let lifetime = lifetime.unwrap_or(4 * f * n);
            (gen_random_frequent(n, f, density, lifetime, seed.seed)?, out)
        }
    };
    ctx.emit(out.out.as_deref(), &format::write_tg1(&g))?;
    Ok(0)
}

fn validate(ctx: &mut Ctx<'_>, command: ValidateCommand) -> anyhow::Result<i32> {
    let report = match command {
        ValidateCommand::Walk { graph, walk } => {
            let g = ctx.graph(&graph)?;
            let tw = format::parse_tw1(&ctx.read(&walk)?).map_err(|e| located(&walk, e))?;
            validate_temporal_walk(&g, &tw)
        }
        ValidateCommand::Exploration { graph, walk, start } => {
            let g = ctx.graph(&graph)?;
            let tw = format::parse_tw1(&ctx.read(&walk)?).map_err(|e| located(&walk, e))?;
            validate_exploration(&g, &tw, start)
        }
        ValidateCommand::Sequential { graph, schedule } => {
            let g = ctx.graph(&graph)?;
            let s = format::parse_sq1(&ctx.read(&schedule)?).map_err(|e| located(&schedule, e))?;
            validate_sequential(&g, &s)
        }
        ValidateCommand::Broadcast { graph } => validate_broadcast(&ctx.graph(&graph)?).0,
        ValidateCommand::Connected { graph } => validate_always_connected(&ctx.graph(&graph)?),
        ValidateCommand::Transport { graph, routes } => {
            let g = ctx.graph(&graph)?;
            let (_, routes) = format::parse_rt1(&ctx.read(&routes)?).map_err(|e| located(&routes, e))?;
            validate_transport(&g, &routes)
        }
    };
    ctx.validation(&report)
}

fn bench(ctx: &mut Ctx<'_>, sizes: &[usize], f: usize, density: f64, reps: usize, seed: u64) -> anyhow::Result<i32> {
    let mut text = String::from("n T edges freq_us explore_us\n");
    for &n in sizes {
        let lifetime = 4 * f * n;
        let g = gen_random_frequent(n, f, density, lifetime, seed)?;
        let clock = Instant::now();
        for _ in 0..reps {
            std::hint::black_box(FrequencyTable::compute(&g));
        }
        let freq = clock.elapsed().as_micros() / reps as u128;
        let clock = Instant::now();
        for _ in 0..reps {
            std::hint::black_box(explore(&g, 0)?);
        }
        let plan = clock.elapsed().as_micros() / reps as u128;
        text.push_str(&format!("{n} {lifetime} {} {freq} {plan}\n", g.edges().len()));
    }
    ctx.print(&text)?;
    Ok(0)
}
