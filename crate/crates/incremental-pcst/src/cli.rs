//! Batch front-end: generate instances, run the ordering algorithms, emit
//! profiles and competitiveness reports.
//!
//! Subcommands: `solve`, `verify`, `frontier`, `generate`, `sweep`. All
//! numeric flags take exact rationals (`p/q` or integers); `--alpha`
//! additionally accepts multiples of instance metrics, e.g. `chi`,
//! `3*chi`, `1/2*gamma`. Module errors are reported as one-line JSON on
//! stderr with exit code 2; `verify` and `sweep` exit 1 when a
//! competitiveness check fails.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::{One, Signed};
use serde_json::json;

use crate::error::{Error, Result};
use crate::format;
use crate::graph::{IncrementalSolution, Instance};
use crate::graph_greedy::density_greedy_graph;
use crate::instances::GeneratorSpec;
use crate::rational::{format_rational, parse_rational, pow2, Rational};
use crate::scaling::{capacity_scaling, pareto_frontier, ScalingTrace};
use crate::tree_greedy::{density_greedy_tree, GreedyTrace};
use crate::verify::{alg_profile, verify_competitive};
use crate::DEFAULT_ENUMERATION_BOUND;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    #[value(name = "tree-greedy")]
    TreeGreedy,
    #[value(name = "graph-greedy")]
    GraphGreedy,
    #[value(name = "capacity-scaling")]
    CapacityScaling,
}

impl Algorithm {
    fn name(&self) -> &'static str {
        match self {
            Algorithm::TreeGreedy => "tree-greedy",
            Algorithm::GraphGreedy => "graph-greedy",
            Algorithm::CapacityScaling => "capacity-scaling",
        }
    }
}

/// Additive slack, either literal or relative to an instance metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphaSpec {
    Literal(Rational),
    ChiTimes(Rational),
    GammaTimes(Rational),
}

impl AlphaSpec {
    pub fn parse(s: &str) -> std::result::Result<AlphaSpec, String> {
        let s = s.trim();
        let (factor, metric) = match s.split_once('*') {
            Some((f, m)) => (parse_rational(f)?, m.trim()),
            None if s == "chi" || s == "gamma" => (Rational::one(), s),
            None => return Ok(AlphaSpec::Literal(parse_rational(s)?)),
        };
        match metric {
            "chi" => Ok(AlphaSpec::ChiTimes(factor)),
            "gamma" => Ok(AlphaSpec::GammaTimes(factor)),
            other => Err(format!("unknown metric `{other}`, expected chi or gamma")),
        }
    }

    pub fn resolve(&self, inst: &Instance, max_edges: usize) -> Result<Rational> {
        match self {
            AlphaSpec::Literal(r) => Ok(r.clone()),
            AlphaSpec::ChiTimes(f) => Ok(f * inst.eccentricity()),
            AlphaSpec::GammaTimes(f) => Ok(f * inst.longest_root_path(max_edges)?),
        }
    }

    fn display(&self) -> String {
        match self {
            AlphaSpec::Literal(r) => format_rational(r),
            AlphaSpec::ChiTimes(f) => format!("{}*chi", format_rational(f)),
            AlphaSpec::GammaTimes(f) => format!("{}*gamma", format_rational(f)),
        }
    }
}

fn alpha_arg(s: &str) -> std::result::Result<AlphaSpec, String> {
    AlphaSpec::parse(s)
}

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s)
}

/// Instance source plus run parameters shared by the subcommands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: InputSource,
    pub algorithm: Algorithm,
    pub alpha: Option<AlphaSpec>,
    pub mu: Option<Rational>,
    pub ell: Option<u32>,
    pub out_dir: PathBuf,
    pub max_edges: usize,
}

#[derive(Debug, Clone)]
pub enum InputSource {
    File(PathBuf),
    Generator(GeneratorSpec),
}

impl InputSource {
    fn load(&self) -> Result<Instance> {
        match self {
            InputSource::File(path) => {
                let text = std::fs::read_to_string(path)?;
                format::parse_instance(&text)
            }
            InputSource::Generator(spec) => spec.generate(),
        }
    }
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Instance file in the text format.
    #[arg(long, conflicts_with = "family")]
    input: Option<PathBuf>,
    /// Instance family to generate instead of reading a file.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, value_parser = rational_arg)]
    chi: Option<Rational>,
    #[arg(long, value_parser = rational_arg)]
    delta: Option<Rational>,
    #[arg(long, value_parser = rational_arg)]
    eps: Option<Rational>,
    /// Prize of the heavy leaf (steep-fork family).
    #[arg(long, value_parser = rational_arg)]
    prize: Option<Rational>,
    /// Number of light arms (heavy-star family).
    #[arg(long)]
    arms: Option<usize>,
    /// Number of merged components (diamonds family).
    #[arg(long)]
    copies: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

impl InputArgs {
    fn source(&self) -> Result<InputSource> {
        if let Some(path) = &self.input {
            return Ok(InputSource::File(path.clone()));
        }
        let family = self.family.as_deref().ok_or_else(|| {
            Error::BadParameter("either --input or --family is required".into())
        })?;
        let need_rat = |name: &str, v: &Option<Rational>| -> Result<Rational> {
            v.clone()
                .ok_or_else(|| Error::BadParameter(format!("family {family} needs --{name}")))
        };
        let need_num = |name: &str, v: Option<usize>| -> Result<usize> {
            v.ok_or_else(|| Error::BadParameter(format!("family {family} needs --{name}")))
        };
        let spec = match family {
            "fork" => GeneratorSpec::Fork {
                chi: need_rat("chi", &self.chi)?,
                delta: need_rat("delta", &self.delta)?,
            },
            "skewed-fork" => GeneratorSpec::SkewedFork {
                eps: need_rat("eps", &self.eps)?,
            },
            "heavy-star" => GeneratorSpec::HeavyStar {
                chi: need_rat("chi", &self.chi)?,
                arms: need_num("arms", self.arms)?,
            },
            "steep-fork" => GeneratorSpec::SteepFork {
                prize: need_rat("prize", &self.prize)?,
            },
            "hub-bypass" => GeneratorSpec::HubBypass {
                eps: need_rat("eps", &self.eps)?,
            },
            "diamonds" => GeneratorSpec::Diamonds {
                copies: need_num("copies", self.copies)?,
            },
            "random-tree" => GeneratorSpec::RandomTree {
                n: need_num("n", self.n)?,
                seed: self.seed.unwrap_or(0),
            },
            "random-graph" => GeneratorSpec::RandomGraph {
                n: need_num("n", self.n)?,
                m: need_num("m", self.m)?,
                seed: self.seed.unwrap_or(0),
            },
            other => {
                return Err(Error::BadParameter(format!("unknown family `{other}`")))
            }
        };
        Ok(InputSource::Generator(spec))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ipcst",
    about = "Incremental prize-collecting Steiner trees: orderings, profiles \
             and exact competitiveness checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run an ordering algorithm; writes ordering.txt, trace.jsonl and
    /// profile.csv.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        algorithm: Algorithm,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        max_edges: usize,
    },
    /// Run an algorithm and check (alpha, mu)-competitiveness; writes
    /// report.json and compare.csv. Exit code 0 iff the check holds.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        algorithm: Algorithm,
        /// Additive slack: `p/q`, `chi`, `gamma`, or `f*chi` / `f*gamma`.
        #[arg(long, value_parser = alpha_arg, conflicts_with = "ell")]
        alpha: Option<AlphaSpec>,
        #[arg(long, value_parser = rational_arg, conflicts_with = "ell")]
        mu: Option<Rational>,
        /// Capacity-scaling guarantee level: sets alpha = (4l-1)*chi and
        /// mu = 2^(l+2)/(2^l - 1).
        #[arg(long)]
        ell: Option<u32>,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        max_edges: usize,
    },
    /// Export the exact optimum profile; writes frontier.csv.
    Frontier {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        max_edges: usize,
    },
    /// Generate an instance file; writes instance.txt.
    Generate {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Verify a (seed range x algorithm x (alpha, mu)) grid on a random
    /// family and aggregate the verdicts. Exit code 0 iff every check holds.
    Sweep {
        /// Random family: random-tree or random-graph.
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        seed_start: u64,
        #[arg(long)]
        seed_end: u64,
        #[arg(long = "algorithm", value_enum, required = true)]
        algorithms: Vec<Algorithm>,
        #[arg(long = "alpha", value_parser = alpha_arg, required = true)]
        alphas: Vec<AlphaSpec>,
        #[arg(long = "mu", value_parser = rational_arg, required = true)]
        mus: Vec<Rational>,
        /// Parallel workers for independent seeds.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        max_edges: usize,
    },
}

enum RunOutput {
    Greedy {
        solution: IncrementalSolution,
        trace: GreedyTrace,
        with_blocks: bool,
    },
    Scaling {
        solution: IncrementalSolution,
        trace: ScalingTrace,
    },
}

impl RunOutput {
    fn solution(&self) -> &IncrementalSolution {
        match self {
            RunOutput::Greedy { solution, .. } => solution,
            RunOutput::Scaling { solution, .. } => solution,
        }
    }

    fn trace_jsonl(&self) -> String {
        match self {
            RunOutput::Greedy {
                trace, with_blocks, ..
            } => format::write_greedy_trace(trace, *with_blocks),
            RunOutput::Scaling { trace, .. } => format::write_scaling_trace(trace),
        }
    }
}

fn run_algorithm(inst: &Instance, algorithm: Algorithm, max_edges: usize) -> Result<RunOutput> {
    match algorithm {
        Algorithm::TreeGreedy => {
            let (solution, trace) = density_greedy_tree(inst)?;
            Ok(RunOutput::Greedy {
                solution,
                trace,
                with_blocks: false,
            })
        }
        Algorithm::GraphGreedy => {
            let (solution, trace) = density_greedy_graph(inst, max_edges)?;
            Ok(RunOutput::Greedy {
                solution,
                trace,
                with_blocks: true,
            })
        }
        Algorithm::CapacityScaling => {
            let (solution, trace) = capacity_scaling(inst, max_edges)?;
            Ok(RunOutput::Scaling { solution, trace })
        }
    }
}

fn write_artifact(dir: &Path, name: &str, content: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, content)?;
    Ok(path)
}

/// Runs an ordering algorithm and writes its artifacts.
pub fn cmd_solve(config: &RunConfig) -> Result<()> {
    let inst = config.input.load()?;
    let output = run_algorithm(&inst, config.algorithm, config.max_edges)?;
    let profile = alg_profile(&inst, output.solution());
    write_artifact(
        &config.out_dir,
        "ordering.txt",
        &format::write_ordering(output.solution().order()),
    )?;
    write_artifact(&config.out_dir, "trace.jsonl", &output.trace_jsonl())?;
    write_artifact(
        &config.out_dir,
        "profile.csv",
        &format::write_profile_csv(&profile),
    )?;
    println!(
        "{} ordered {} edges; artifacts in {}",
        config.algorithm.name(),
        output.solution().len(),
        config.out_dir.display()
    );
    Ok(())
}

fn scaling_guarantee(ell: u32) -> Result<(Rational, Rational)> {
    if ell == 0 {
        return Err(Error::BadParameter("ell must be at least 1".into()));
    }
    let alpha_factor = Rational::from_integer((4 * ell as i64 - 1).into());
    let mu = pow2(ell + 2) / (pow2(ell) - Rational::one());
    Ok((alpha_factor, mu))
}

/// Runs an algorithm and verifies (alpha, mu)-competitiveness. Returns the
/// verdict; artifacts are written either way.
pub fn cmd_verify(config: &RunConfig) -> Result<bool> {
    let inst = config.input.load()?;
    let output = run_algorithm(&inst, config.algorithm, config.max_edges)?;
    let (alpha, mu) = match (&config.alpha, &config.mu, config.ell) {
        (Some(a), Some(m), _) => (a.resolve(&inst, config.max_edges)?, m.clone()),
        (None, None, Some(ell)) => {
            let (factor, mu) = scaling_guarantee(ell)?;
            (factor * inst.eccentricity(), mu)
        }
        _ => {
            return Err(Error::BadParameter(
                "verify needs --alpha and --mu, or --ell".into(),
            ))
        }
    };
    if alpha.is_negative() {
        return Err(Error::BadParameter("alpha must be nonnegative".into()));
    }
    let report = verify_competitive(&inst, output.solution(), &alpha, &mu, config.max_edges)?;
    let frontier = pareto_frontier(&inst, config.max_edges)?;
    let profile = alg_profile(&inst, output.solution());
    write_artifact(
        &config.out_dir,
        "report.json",
        &format::write_report_json(&report),
    )?;
    write_artifact(
        &config.out_dir,
        "compare.csv",
        &format::write_comparison_csv(&frontier, &profile, &alpha),
    )?;
    println!(
        "{} with alpha={} mu={}: {}",
        config.algorithm.name(),
        format_rational(&alpha),
        format_rational(&mu),
        if report.holds() { "holds" } else { "violated" }
    );
    Ok(report.holds())
}

/// Exports the exact optimum profile.
pub fn cmd_frontier(input: &InputSource, out_dir: &Path, max_edges: usize) -> Result<()> {
    let inst = input.load()?;
    let frontier = pareto_frontier(&inst, max_edges)?;
    write_artifact(out_dir, "frontier.csv", &format::write_frontier_csv(&frontier))?;
    println!(
        "frontier with {} points; artifacts in {}",
        frontier.points().len(),
        out_dir.display()
    );
    Ok(())
}

/// Emits an instance file for a generator spec.
pub fn cmd_generate(input: &InputSource, out_dir: &Path) -> Result<()> {
    let inst = input.load()?;
    write_artifact(out_dir, "instance.txt", &format::serialize_instance(&inst))?;
    println!(
        "instance with {} vertices, {} edges; artifacts in {}",
        inst.vertex_count(),
        inst.edge_count(),
        out_dir.display()
    );
    Ok(())
}

struct SweepRow {
    seed: u64,
    algorithm: Algorithm,
    alpha_spec: String,
    alpha: Rational,
    mu: Rational,
    holds: bool,
}

type SeedRows = Vec<(u64, Vec<SweepRow>)>;

#[allow(clippy::too_many_arguments)]
fn sweep_seed(
    family: &str,
    n: usize,
    m: Option<usize>,
    seed: u64,
    algorithms: &[Algorithm],
    alphas: &[AlphaSpec],
    mus: &[Rational],
    max_edges: usize,
) -> Result<Vec<SweepRow>> {
    let spec = match family {
        "random-tree" => GeneratorSpec::RandomTree { n, seed },
        "random-graph" => GeneratorSpec::RandomGraph {
            n,
            m: m.ok_or_else(|| Error::BadParameter("random-graph sweeps need --m".into()))?,
            seed,
        },
        other => {
            return Err(Error::BadParameter(format!(
                "sweeps run on random families, not `{other}`"
            )))
        }
    };
    let inst = spec.generate()?;
    let mut rows = Vec::new();
    for &algorithm in algorithms {
        let output = run_algorithm(&inst, algorithm, max_edges)?;
        for alpha_spec in alphas {
            let alpha = alpha_spec.resolve(&inst, max_edges)?;
            for mu in mus {
                let report =
                    verify_competitive(&inst, output.solution(), &alpha, mu, max_edges)?;
                rows.push(SweepRow {
                    seed,
                    algorithm,
                    alpha_spec: alpha_spec.display(),
                    alpha: alpha.clone(),
                    mu: mu.clone(),
                    holds: report.holds(),
                });
            }
        }
    }
    Ok(rows)
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    family: &str,
    n: usize,
    m: Option<usize>,
    seeds: std::ops::RangeInclusive<u64>,
    algorithms: &[Algorithm],
    alphas: &[AlphaSpec],
    mus: &[Rational],
    jobs: usize,
    out_dir: &Path,
    max_edges: usize,
) -> Result<bool> {
    let seed_list: Vec<u64> = seeds.collect();
    let jobs = jobs.max(1).min(seed_list.len().max(1));
    let mut by_seed: BTreeMap<u64, Vec<SweepRow>> = BTreeMap::new();
    let chunks: Vec<&[u64]> = seed_list.chunks(seed_list.len().div_ceil(jobs)).collect();
    let results: Vec<Result<SeedRows>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|chunk| {
                scope.spawn(move || {
                    let mut out = Vec::new();
                    for &seed in chunk {
                        let rows =
                            sweep_seed(family, n, m, seed, algorithms, alphas, mus, max_edges)?;
                        out.push((seed, rows));
                    }
                    Ok(out)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for result in results {
        for (seed, rows) in result? {
            by_seed.insert(seed, rows);
        }
    }

    let mut csv = String::from("seed,algorithm,alpha,mu,verdict\n");
    let mut tally: BTreeMap<(String, String, String), (usize, usize)> = BTreeMap::new();
    let mut all_hold = true;
    for rows in by_seed.values() {
        for row in rows {
            let _ = writeln!(
                csv,
                "{},{},{},{},{}",
                row.seed,
                row.algorithm.name(),
                format_rational(&row.alpha),
                format_rational(&row.mu),
                if row.holds { "holds" } else { "violated" }
            );
            let key = (
                row.algorithm.name().to_string(),
                row.alpha_spec.clone(),
                format_rational(&row.mu),
            );
            let entry = tally.entry(key).or_insert((0, 0));
            entry.1 += 1;
            if row.holds {
                entry.0 += 1;
            } else {
                all_hold = false;
            }
        }
    }
    write_artifact(out_dir, "sweep.csv", &csv)?;
    for ((algorithm, alpha, mu), (passed, total)) in &tally {
        println!("{algorithm} alpha={alpha} mu={mu}: {passed}/{total} hold");
    }
    Ok(all_hold)
}

fn dispatch(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Solve {
            input,
            algorithm,
            out,
            max_edges,
        } => {
            let config = RunConfig {
                input: input.source()?,
                algorithm,
                alpha: None,
                mu: None,
                ell: None,
                out_dir: out,
                max_edges,
            };
            cmd_solve(&config)?;
            Ok(true)
        }
        Command::Verify {
            input,
            algorithm,
            alpha,
            mu,
            ell,
            out,
            max_edges,
        } => {
            let config = RunConfig {
                input: input.source()?,
                algorithm,
                alpha,
                mu,
                ell,
                out_dir: out,
                max_edges,
            };
            cmd_verify(&config)
        }
        Command::Frontier {
            input,
            out,
            max_edges,
        } => {
            cmd_frontier(&input.source()?, &out, max_edges)?;
            Ok(true)
        }
        Command::Generate { input, out } => {
            cmd_generate(&input.source()?, &out)?;
            Ok(true)
        }
        Command::Sweep {
            family,
            n,
            m,
            seed_start,
            seed_end,
            algorithms,
            alphas,
            mus,
            jobs,
            out,
            max_edges,
        } => cmd_sweep(
            &family,
            n,
            m,
            seed_start..=seed_end,
            &algorithms,
            &alphas,
            &mus,
            jobs,
            &out,
            max_edges,
        ),
    }
}

/// Entry point used by the binary and by tests. Returns the process exit
/// code: 0 on success, 1 when a verification fails, 2 on errors.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help / --version as "errors" with exit code 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!(
                "{}",
                json!({ "error": e.code(), "message": e.to_string() })
            );
            2
        }
    }
}

pub fn run() -> i32 {
    run_from(std::env::args_os())
}
