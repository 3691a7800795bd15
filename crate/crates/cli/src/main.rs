use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, bail};
use clap::{Args, Parser, Subcommand};
use shopsp_cli::{Algorithm, BenchOptions, SolveOptions, Suite, check_result, run_bench, solve};
use shopsp_core::comb::PathEngine;
use shopsp_core::instgen::{
    RandomParams, ThreeDmInstance, Topology, generate_from_3dm, generate_random, read_instance,
    read_result, write_instance, write_result,
};
use shopsp_core::{Ratio, ShopKind, Time};

#[derive(Parser)]
#[command(
    name = "shopsp",
    version,
    about = "Shop scheduling with s-t path selection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and write the schedule document.
    Solve(SolveArgs),
    /// Generate an instance document.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Check a schedule document against an instance.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        sched: PathBuf,
    },
    /// Run a benchmark suite; prints TSV and exits nonzero on violations.
    Bench {
        #[arg(long)]
        suite: PathBuf,
        /// Also write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the TSV report here instead of stdout.
        #[arg(long)]
        tsv: Option<PathBuf>,
        /// Record per-run wall-clock times.
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    alg: Algorithm,
    #[arg(long, default_value = shopsp_cli::DEFAULT_EPS)]
    eps: Ratio,
    #[arg(long = "in")]
    input: PathBuf,
    /// Defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    engine: EngineArg,
    /// SAE subset size N.
    #[arg(long)]
    subset_size: Option<usize>,
    /// SAR constant α.
    #[arg(long, default_value = "1")]
    alpha: Ratio,
    /// Operation cap of the exact scheduler.
    #[arg(long, default_value_t = 12)]
    max_ops: usize,
    /// Path cap of the oracle.
    #[arg(long, default_value_t = 10_000)]
    max_paths: usize,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum EngineArg {
    Auto,
    Fptas,
    Exact,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ShopArg {
    Open,
    Job,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum TopologyArg {
    Layered,
    Uniform,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random instance with an embedded s-t path.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "open")]
        shop: ShopArg,
        #[arg(long, default_value_t = 2)]
        machines: usize,
        #[arg(long, default_value_t = 7)]
        vertices: usize,
        #[arg(long, default_value_t = 14)]
        arcs: usize,
        #[arg(long, default_value_t = 0)]
        min_duration: Time,
        #[arg(long, default_value_t = 9)]
        max_duration: Time,
        #[arg(long, value_enum, default_value = "layered")]
        topology: TopologyArg,
        /// Arc count of the embedded path.
        #[arg(long)]
        backbone: Option<usize>,
        /// Job shop: maximum operations per job.
        #[arg(long, default_value_t = 2)]
        max_ops: usize,
        /// Job shop: allow a job to revisit a machine.
        #[arg(long)]
        allow_repeats: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Open-shop instance from a 3-dimensional matching instance.
    #[command(name = "3dm")]
    ThreeDm {
        #[arg(long)]
        n: usize,
        /// JSON list of [a, b, c] triples.
        #[arg(long)]
        triples: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> anyhow::Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => Ok(std::io::stdout().write_all(bytes)?),
    }
}

fn load_instance(path: &Path) -> anyhow::Result<shopsp_core::Instance> {
    read_instance(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Solve(a) => {
            let instance = load_instance(&a.input)?;
            let opts = SolveOptions {
                eps: a.eps,
                engine: match a.engine {
                    EngineArg::Auto => PathEngine::Auto,
                    EngineArg::Fptas => PathEngine::Fptas,
                    EngineArg::Exact => PathEngine::Exact,
                },
                sae_subset_size: a.subset_size,
                sar_alpha: a.alpha,
                exact_max_ops: a.max_ops,
                oracle_max_paths: a.max_paths,
            };
            let result = solve(&instance, a.alg, &opts)?;
            let problems = check_result(&instance, &result, true);
            if !problems.is_empty() {
                bail!(
                    "internal error, emitted schedule is invalid: {}",
                    problems.join("; ")
                );
            }
            emit(a.out.as_deref(), &write_result(&result))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen(GenCommand::Random {
            seed,
            shop,
            machines,
            vertices,
            arcs,
            min_duration,
            max_duration,
            topology,
            backbone,
            max_ops,
            allow_repeats,
            out,
        }) => {
            let params = RandomParams {
                shop: match shop {
                    ShopArg::Open => ShopKind::Open,
                    ShopArg::Job => ShopKind::Job,
                },
                machines,
                vertices,
                arcs,
                min_duration,
                max_duration,
                topology: match topology {
                    TopologyArg::Layered => Topology::Layered,
                    TopologyArg::Uniform => Topology::Uniform,
                },
                backbone,
                max_ops,
                allow_repeats,
                seed,
            };
            emit(out.as_deref(), &write_instance(&generate_random(&params)?))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen(GenCommand::ThreeDm { n, triples, out }) => {
            let list: Vec<[usize; 3]> = serde_json::from_slice(&read(&triples)?)
                .with_context(|| format!("parsing {}", triples.display()))?;
            let tdm = ThreeDmInstance::new(n, list)?;
            emit(out.as_deref(), &write_instance(&generate_from_3dm(&tdm)))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { input, sched } => {
            let instance = load_instance(&input)?;
            let result = read_result(&read(&sched)?)
                .with_context(|| format!("parsing {}", sched.display()))?;
            let problems = check_result(&instance, &result, false);
            if problems.is_empty() {
                println!("ok makespan {}", result.makespan);
                Ok(ExitCode::SUCCESS)
            } else {
                for p in &problems {
                    println!("violation: {p}");
                }
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Bench {
            suite,
            json,
            tsv,
            timing,
        } => {
            let doc: Suite = serde_json::from_slice(&read(&suite)?)
                .with_context(|| format!("parsing {}", suite.display()))?;
            let opts = BenchOptions {
                base_dir: suite.parent().map(Path::to_path_buf).unwrap_or_default(),
                timing,
            };
            let report = run_bench(&doc, &opts)?;
            emit(tsv.as_deref(), report.to_tsv().as_bytes())?;
            if let Some(p) = json {
                emit(Some(&p), report.to_json().as_bytes())?;
            }
            let failures = report.failures();
            if failures > 0 {
                eprintln!("{failures} run(s) violated a bound or failed validation");
                return Ok(ExitCode::FAILURE);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
