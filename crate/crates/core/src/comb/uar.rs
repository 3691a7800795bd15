use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Instance, SolveResult, Time};
use crate::path::WeightVectorMap;
use crate::rational::Ratio;
use crate::shop::SchedulerKind;

use super::PathEngine;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Gar,
    Rar,
    Jjar,
    Sar,
    Custom,
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::Gar => "gar",
            Preset::Rar => "rar",
            Preset::Jjar => "jjar",
            Preset::Sar => "sar",
            Preset::Custom => "custom",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UarConfig {
    pub preset: Preset,
    pub scheduler: SchedulerKind,
    /// Jobs with length ≥ ρ·C' are re-weighted.
    pub rho: Ratio,
    /// Target accuracy; also sets the big weight M.
    pub eps: Ratio,
    /// Accuracy handed to the min-max path routine.
    pub path_eps: Ratio,
    pub engine: PathEngine,
}

impl UarConfig {
    pub fn custom(scheduler: SchedulerKind, rho: Ratio, eps: Ratio) -> Self {
        UarConfig {
            preset: Preset::Custom,
            scheduler,
            rho,
            eps,
            path_eps: eps,
            engine: PathEngine::Auto,
        }
    }

    /// GS on O2 with ρ = 1; within 1 + ε.
    pub fn gar(eps: Ratio) -> Self {
        UarConfig {
            preset: Preset::Gar,
            ..Self::custom(SchedulerKind::GsO2, Ratio::ONE, eps)
        }
    }

    /// Dense open shop with ρ = 1/2; within 2 + ε. The final schedule is at
    /// most twice the path's max load, so the path call uses ε/2.
    pub fn rar(eps: Ratio) -> Result<Self> {
        Ok(UarConfig {
            preset: Preset::Rar,
            path_eps: eps.div_int(2)?,
            ..Self::custom(SchedulerKind::DenseOpen, Ratio::new(1, 2)?, eps)
        })
    }

    /// Jackson's rule on J2|op≤2 with ρ = 2/3; within 3/2 + ε. The path call
    /// uses 2ε/3 for the same reason as RAR.
    pub fn jjar(eps: Ratio) -> Result<Self> {
        Ok(UarConfig {
            preset: Preset::Jjar,
            path_eps: eps.checked_mul(Ratio::new(2, 3)?)?,
            ..Self::custom(SchedulerKind::JacksonJ2, Ratio::new(2, 3)?, eps)
        })
    }

    /// Dense job shop with ρ = ln ln(mμ) / (2α ln²(mμ)). For mμ < 3 the
    /// double logarithm is not positive and ρ = 1/2 is used instead.
    pub fn sar(eps: Ratio, alpha: f64, machines: usize, max_ops: usize) -> Result<Self> {
        if alpha.is_nan() || alpha <= 0.0 {
            return Err(Error::InvalidInput("alpha must be positive".into()));
        }
        let x = (machines * max_ops) as f64;
        let rho = if x < 3.0 {
            Ratio::new(1, 2)?
        } else {
            let l = x.ln();
            Ratio::approximate(l.ln() / (2.0 * alpha * l * l))?
        };
        Ok(UarConfig {
            preset: Preset::Sar,
            ..Self::custom(SchedulerKind::DenseJob, rho, eps)
        })
    }

    /// Proven ratio of the preset, when there is one.
    pub fn nominal_ratio(&self) -> Option<Ratio> {
        let base = match self.preset {
            Preset::Gar => Ratio::ONE,
            Preset::Rar => Ratio::integer(2),
            Preset::Jjar => Ratio::new(3, 2).ok()?,
            Preset::Sar | Preset::Custom => return None,
        };
        base.checked_add(self.eps).ok()
    }
}

/// A UAR run with its iteration record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UarTrace {
    pub result: SolveResult,
    /// Number of re-weighting rounds (0 when the loop never runs).
    pub iterations: usize,
    /// Jobs re-weighted to M, in the order they were added.
    pub removed: Vec<usize>,
    /// C' of every path found, initial one included.
    pub makespans: Vec<Time>,
    /// Best makespan after each path found.
    pub best_so_far: Vec<Time>,
    /// Paths returned by the path routine, initial one included.
    pub paths: Vec<Vec<usize>>,
}

pub fn solve_uar(instance: &Instance, config: &UarConfig) -> Result<SolveResult> {
    solve_uar_traced(instance, config).map(|t| t.result)
}

/// Iterative re-weighting scheme.
///
/// Weights start as per-machine loads. After each path is scheduled with
/// makespan C', if no re-weighted job is on the path and some job on it has
/// length ≥ ρ·C', every not-yet-removed job with length ≥ ρ·C' gets weight
/// M on all criteria and the path is recomputed. The best schedule seen is
/// returned.
pub fn solve_uar_traced(instance: &Instance, config: &UarConfig) -> Result<UarTrace> {
    if config.scheduler.shop() != instance.shop() {
        return Err(Error::Unsupported {
            scheduler: config.scheduler.name(),
            reason: format!(
                "expects shop type {}, got {}",
                config.scheduler.shop(),
                instance.shop()
            ),
        });
    }
    if config.eps.is_zero() || config.path_eps.is_zero() {
        return Err(Error::InvalidInput("eps must be positive".into()));
    }
    let m = instance.machines();
    let graph = instance.graph();
    let n = instance.jobs().len();
    let lengths: Vec<Time> = instance.jobs().iter().map(|j| j.total()).collect();

    let mut weights =
        WeightVectorMap::new(m, instance.jobs().iter().map(|j| j.loads(m)).collect())?;
    let big = Ratio::ONE
        .checked_add(config.eps)?
        .mul_floor(instance.total_work())?
        .checked_add(1)
        .ok_or(Error::Overflow("big weight M"))?;

    let path = config
        .engine
        .find(graph, &weights, &[], config.path_eps)?
        .ok_or(Error::Infeasible)?;
    let mut current = path.arcs;
    let mut c_prime = config.scheduler.run(&instance.jobs_of(&current), m)?;
    let mut best = SolveResult::new(current.clone(), c_prime.clone());
    let mut removed_mask = vec![false; n];
    let mut trace = UarTrace {
        result: best.clone(),
        iterations: 0,
        removed: Vec::new(),
        makespans: vec![c_prime.makespan],
        best_so_far: vec![best.makespan],
        paths: vec![current.clone()],
    };

    loop {
        let touches_removed = current.iter().any(|&a| removed_mask[a]);
        let has_long = current
            .iter()
            .any(|&a| config.rho.le_ratio_of(c_prime.makespan, lengths[a]));
        if touches_removed || !has_long {
            break;
        }
        for j in 0..n {
            if !removed_mask[j] && config.rho.le_ratio_of(c_prime.makespan, lengths[j]) {
                weights.set_all(j, big);
                removed_mask[j] = true;
                trace.removed.push(j);
            }
        }
        trace.iterations += 1;
        assert!(trace.iterations <= n, "each round removes at least one job");

        let Some(path) = config.engine.find(graph, &weights, &[], config.path_eps)? else {
            break;
        };
        current = path.arcs;
        c_prime = config.scheduler.run(&instance.jobs_of(&current), m)?;
        trace.makespans.push(c_prime.makespan);
        trace.paths.push(current.clone());
        if c_prime.makespan < best.makespan {
            best = SolveResult::new(current.clone(), c_prime.clone());
        }
        trace.best_so_far.push(best.makespan);
    }
    trace.result = best;
    Ok(trace)
}
