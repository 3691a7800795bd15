//! Front end for `shopsp-core`: algorithm dispatch, result checking and the
//! benchmark harness behind the `shopsp` binary.

pub mod bench;

use std::fmt;

use serde::{Deserialize, Serialize};
use shopsp_core::comb::{PathEngine, SaeConfig, UarConfig, solve_sae, solve_sd, solve_uar};
use shopsp_core::model::{lower_bound, upper_bound, validate_schedule};
use shopsp_core::oracle::{OracleLimits, solve_exact};
use shopsp_core::shop::ExactLimits;
use shopsp_core::{Instance, Ratio, Result, SolveResult};

pub use bench::{BenchOptions, Report, Suite, run_bench};

pub const DEFAULT_EPS: &str = "0.25";

#[derive(
    Debug,
    Clone,
    Copy,
    PartialEq,
    Eq,
    Hash,
    PartialOrd,
    Ord,
    Serialize,
    Deserialize,
    clap::ValueEnum,
)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Sd,
    Gar,
    Rar,
    Jjar,
    Sar,
    Sae,
    Oracle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::Sd,
        Algorithm::Gar,
        Algorithm::Rar,
        Algorithm::Jjar,
        Algorithm::Sar,
        Algorithm::Sae,
        Algorithm::Oracle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Sd => "sd",
            Algorithm::Gar => "gar",
            Algorithm::Rar => "rar",
            Algorithm::Jjar => "jjar",
            Algorithm::Sar => "sar",
            Algorithm::Sae => "sae",
            Algorithm::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

/// Knobs shared by `solve` and `bench`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolveOptions {
    pub eps: Ratio,
    pub engine: PathEngine,
    /// SAE subset size; `None` picks min(theoretical N, 3).
    pub sae_subset_size: Option<usize>,
    /// SAR α, stored as a rational.
    pub sar_alpha: Ratio,
    /// Positive-duration operation cap of the exact scheduler.
    pub exact_max_ops: usize,
    pub oracle_max_paths: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        let limits = OracleLimits::default();
        SolveOptions {
            eps: DEFAULT_EPS.parse().expect("default eps parses"),
            engine: PathEngine::Auto,
            sae_subset_size: None,
            sar_alpha: Ratio::ONE,
            exact_max_ops: limits.exact.max_ops,
            oracle_max_paths: limits.max_paths,
        }
    }
}

impl SolveOptions {
    pub fn oracle_limits(&self) -> OracleLimits {
        OracleLimits {
            max_paths: self.oracle_max_paths,
            exact: ExactLimits {
                max_ops: self.exact_max_ops,
            },
        }
    }

    fn uar_config(&self, alg: Algorithm, instance: &Instance) -> Result<UarConfig> {
        let mut cfg = match alg {
            Algorithm::Gar => UarConfig::gar(self.eps),
            Algorithm::Rar => UarConfig::rar(self.eps)?,
            Algorithm::Jjar => UarConfig::jjar(self.eps)?,
            Algorithm::Sar => UarConfig::sar(
                self.eps,
                self.sar_alpha.to_f64(),
                instance.machines(),
                instance.max_ops_per_job(),
            )?,
            _ => unreachable!("not a UAR preset"),
        };
        cfg.engine = self.engine;
        Ok(cfg)
    }

    pub fn sae_config(&self, instance: &Instance) -> SaeConfig {
        let mut cfg = match self.sae_subset_size {
            Some(n) => SaeConfig::with_subset_size(self.eps, n),
            None => SaeConfig::new(self.eps, instance.machines()),
        };
        cfg.engine = self.engine;
        cfg.exact_limits = ExactLimits {
            max_ops: self.exact_max_ops,
        };
        cfg
    }

    /// Proven worst-case ratio of `alg` on `instance`, if any.
    pub fn proven_ratio(&self, alg: Algorithm, instance: &Instance) -> Option<Ratio> {
        match alg {
            Algorithm::Sd => Some(Ratio::integer(instance.machines() as u64)),
            Algorithm::Gar | Algorithm::Rar | Algorithm::Jjar => {
                self.uar_config(alg, instance).ok()?.nominal_ratio()
            }
            Algorithm::Oracle => Some(Ratio::ONE),
            Algorithm::Sar | Algorithm::Sae => None,
        }
    }
}

pub fn solve(instance: &Instance, alg: Algorithm, opts: &SolveOptions) -> Result<SolveResult> {
    match alg {
        Algorithm::Sd => solve_sd(instance),
        Algorithm::Gar | Algorithm::Rar | Algorithm::Jjar | Algorithm::Sar => {
            solve_uar(instance, &opts.uar_config(alg, instance)?)
        }
        Algorithm::Sae => solve_sae(instance, &opts.sae_config(instance)),
        Algorithm::Oracle => solve_exact(instance, opts.oracle_limits()),
    }
}

/// Feasibility problems of `result`: the path must be a simple s–t path,
/// the job set must be its arcs and the schedule must pass validation.
/// With `bounds`, the makespan must also lie between the trivial lower
/// bound and the total work of the job set.
pub fn check_result(instance: &Instance, result: &SolveResult, bounds: bool) -> Vec<String> {
    let mut problems = Vec::new();
    if let Err(e) = instance.graph().check_simple_path(&result.path) {
        problems.push(format!("path: {e}"));
        return problems;
    }
    let mut expected = result.path.clone();
    expected.sort_unstable();
    if expected != result.job_set {
        problems.push("job set differs from the path's arcs".into());
    }
    if let Err(vs) = validate_schedule(instance, &result.job_set, &result.schedule) {
        problems.extend(vs.iter().map(|v| v.to_string()));
    }
    if result.makespan != result.schedule.makespan {
        problems.push("result makespan differs from its schedule".into());
    }
    if bounds && problems.is_empty() {
        let lb = lower_bound(instance, &result.job_set);
        let ub = upper_bound(instance, &result.job_set);
        if result.makespan < lb {
            problems.push(format!(
                "makespan {} below lower bound {lb}",
                result.makespan
            ));
        }
        if result.makespan > ub {
            problems.push(format!(
                "makespan {} above total work {ub}",
                result.makespan
            ));
        }
    }
    problems
}
