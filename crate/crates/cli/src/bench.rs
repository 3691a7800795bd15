//! Approximation-ratio benchmark over a suite of instances.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use shopsp_core::instgen::{
    RandomParams, ThreeDmInstance, generate_from_3dm, generate_random, read_instance,
};
use shopsp_core::oracle::solve_exact;
use shopsp_core::{Error, Instance, Time};

use crate::{Algorithm, SolveOptions, check_result, solve};

/// Benchmark suite document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Suite {
    #[serde(default)]
    pub options: SolveOptions,
    pub algorithms: Vec<Algorithm>,
    #[serde(default)]
    pub instances: Vec<SuiteEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SuiteEntry {
    /// Instance document, relative to the suite file.
    File(PathBuf),
    Random(RandomParams),
    /// `count` instances with seeds `params.seed`, `params.seed + 1`, ...
    RandomBatch {
        params: RandomParams,
        count: u64,
    },
    #[serde(rename = "3dm")]
    ThreeDm {
        n: usize,
        triples: Vec<[usize; 3]>,
    },
}

#[derive(Debug, Clone, Default)]
pub struct BenchOptions {
    /// Directory that relative instance paths are resolved against.
    pub base_dir: PathBuf,
    /// Record wall-clock times; reports are then no longer reproducible.
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violation,
    Unsupported,
    Infeasible,
    /// Oracle caps exceeded.
    Skipped,
    Error,
}

impl Status {
    fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
            Status::Unsupported => "unsupported",
            Status::Infeasible => "infeasible",
            Status::Skipped => "skipped",
            Status::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub instance: String,
    pub algorithm: Algorithm,
    pub status: Status,
    pub makespan: Option<Time>,
    pub opt: Option<Time>,
    /// makespan / opt, 4 decimals.
    pub ratio: Option<String>,
    pub bound: Option<String>,
    pub problems: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u128>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub algorithm: Algorithm,
    pub runs: usize,
    /// Runs with a known optimum.
    pub rated: usize,
    pub max_ratio: Option<String>,
    pub mean_ratio: Option<String>,
    pub violations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub options: SolveOptions,
    pub algorithms: Vec<Algorithm>,
    pub rows: Vec<Row>,
    pub summary: Vec<Summary>,
}

impl Report {
    /// Violations and errors; the process exit code is nonzero iff this is
    /// positive.
    pub fn failures(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| matches!(r.status, Status::Violation | Status::Error))
            .count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize") + "\n"
    }

    pub fn to_tsv(&self) -> String {
        let o = &self.options;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# eps={} engine={} sae_subset_size={} sar_alpha={} exact_max_ops={} oracle_max_paths={}",
            o.eps,
            serde_json::to_value(o.engine)
                .expect("engine serializes")
                .as_str()
                .unwrap_or("?"),
            o.sae_subset_size
                .map_or("auto".to_string(), |n| n.to_string()),
            o.sar_alpha,
            o.exact_max_ops,
            o.oracle_max_paths,
        );
        let timing = self.rows.iter().any(|r| r.runtime_ms.is_some());
        out.push_str("instance\talgorithm\tstatus\tmakespan\topt\tratio\tbound\tproblems");
        if timing {
            out.push_str("\truntime_ms");
        }
        out.push('\n');
        let na = |v: Option<String>| v.unwrap_or_else(|| "n/a".into());
        for r in &self.rows {
            let _ = write!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.instance,
                r.algorithm,
                r.status.name(),
                na(r.makespan.map(|v| v.to_string())),
                na(r.opt.map(|v| v.to_string())),
                na(r.ratio.clone()),
                na(r.bound.clone()),
                if r.problems.is_empty() {
                    "-".into()
                } else {
                    r.problems.join("; ")
                },
            );
            if timing {
                let _ = write!(out, "\t{}", na(r.runtime_ms.map(|v| v.to_string())));
            }
            out.push('\n');
        }
        out.push_str("\nalgorithm\truns\trated\tmax_ratio\tmean_ratio\tviolations\n");
        for s in &self.summary {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                s.algorithm,
                s.runs,
                s.rated,
                na(s.max_ratio.clone()),
                na(s.mean_ratio.clone()),
                s.violations
            );
        }
        out
    }
}

fn load(entry: &SuiteEntry, base: &Path, out: &mut Vec<(String, Instance)>) -> anyhow::Result<()> {
    match entry {
        SuiteEntry::File(path) => {
            let full = base.join(path);
            let bytes =
                std::fs::read(&full).map_err(|e| anyhow::anyhow!("{}: {e}", full.display()))?;
            let inst =
                read_instance(&bytes).map_err(|e| anyhow::anyhow!("{}: {e}", full.display()))?;
            out.push((path.display().to_string(), inst));
        }
        SuiteEntry::Random(p) => out.push((format!("random:seed={}", p.seed), generate_random(p)?)),
        SuiteEntry::RandomBatch { params, count } => {
            for i in 0..*count {
                let p = RandomParams {
                    seed: params.seed.wrapping_add(i),
                    ..params.clone()
                };
                out.push((format!("random:seed={}", p.seed), generate_random(&p)?));
            }
        }
        SuiteEntry::ThreeDm { n, triples } => {
            let tdm = ThreeDmInstance::new(*n, triples.clone())?;
            out.push((
                format!("3dm:n={n},triples={}", triples.len()),
                generate_from_3dm(&tdm),
            ));
        }
    }
    Ok(())
}

fn ratio_str(num: Time, den: Time) -> String {
    format!("{:.4}", num as f64 / den as f64)
}

/// Runs every algorithm on every instance of the suite, comparing against
/// the oracle optimum when it is within the caps.
pub fn run_bench(suite: &Suite, opts: &BenchOptions) -> anyhow::Result<Report> {
    let mut instances = Vec::new();
    for entry in &suite.instances {
        load(entry, &opts.base_dir, &mut instances)?;
    }
    let so = &suite.options;
    let mut rows = Vec::new();
    for (name, inst) in &instances {
        let opt = solve_exact(inst, so.oracle_limits())
            .ok()
            .map(|r| r.makespan);
        for &alg in &suite.algorithms {
            let started = Instant::now();
            let outcome = solve(inst, alg, so);
            let runtime_ms = opts.timing.then(|| started.elapsed().as_millis());
            let bound = so.proven_ratio(alg, inst);
            let mut row = Row {
                instance: name.clone(),
                algorithm: alg,
                status: Status::Ok,
                makespan: None,
                opt,
                ratio: None,
                bound: bound.map(|b| b.to_string()),
                problems: Vec::new(),
                runtime_ms,
            };
            match outcome {
                Ok(result) => {
                    row.makespan = Some(result.makespan);
                    row.problems = check_result(inst, &result, true);
                    if let Some(opt) = opt {
                        if opt > 0 {
                            row.ratio = Some(ratio_str(result.makespan, opt));
                        }
                        if result.makespan < opt {
                            row.problems.push(format!("makespan below optimum {opt}"));
                        }
                        if let Some(b) = bound
                            && !b.times_ge(opt, result.makespan)
                        {
                            row.problems.push(format!("ratio bound {b} exceeded"));
                        }
                    }
                    if !row.problems.is_empty() {
                        row.status = Status::Violation;
                    }
                }
                Err(Error::Unsupported { reason, .. }) => {
                    row.status = Status::Unsupported;
                    row.problems.push(reason);
                }
                Err(Error::Infeasible) => row.status = Status::Infeasible,
                Err(Error::TooLarge { .. }) if alg == Algorithm::Oracle => {
                    row.status = Status::Skipped
                }
                Err(e) => {
                    row.status = Status::Error;
                    row.problems.push(e.to_string());
                }
            }
            rows.push(row);
        }
    }

    let mut by_alg: BTreeMap<Algorithm, Vec<&Row>> = BTreeMap::new();
    for r in &rows {
        by_alg.entry(r.algorithm).or_default().push(r);
    }
    let summary = suite
        .algorithms
        .iter()
        .filter_map(|alg| by_alg.remove(alg).map(|rs| (alg, rs)))
        .map(|(&algorithm, rs)| {
            let rated: Vec<(Time, Time)> = rs
                .iter()
                .filter_map(|r| Some((r.makespan?, r.opt.filter(|&o| o > 0)?)))
                .collect();
            let max = rated
                .iter()
                .copied()
                .max_by(|a, b| (a.0 as u128 * b.1 as u128).cmp(&(b.0 as u128 * a.1 as u128)));
            let mean = (!rated.is_empty()).then(|| {
                let sum: f64 = rated.iter().map(|&(c, o)| c as f64 / o as f64).sum();
                format!("{:.4}", sum / rated.len() as f64)
            });
            Summary {
                algorithm,
                runs: rs.len(),
                rated: rated.len(),
                max_ratio: max.map(|(c, o)| ratio_str(c, o)),
                mean_ratio: mean,
                violations: rs
                    .iter()
                    .filter(|r| matches!(r.status, Status::Violation | Status::Error))
                    .count(),
            }
        })
        .collect();

    Ok(Report {
        options: suite.options.clone(),
        algorithms: suite.algorithms.clone(),
        rows,
        summary,
    })
}
