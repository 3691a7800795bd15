use crate::error::{Error, Result};
use crate::model::{Instance, ShopKind, SolveResult};
use crate::path::WeightVectorMap;
use crate::rational::Ratio;
use crate::shop::{ExactLimits, schedule_sw_om};

use super::{PathEngine, solve_sd};

/// Default cap on the enumerated subset size.
pub const DEFAULT_SUBSET_CAP: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaeConfig {
    pub eps: Ratio,
    /// Enumerated job subsets have at most this many jobs.
    pub subset_size: usize,
    pub exact_limits: ExactLimits,
    pub engine: PathEngine,
}

impl SaeConfig {
    /// N = min(theoretical N, [`DEFAULT_SUBSET_CAP`]).
    pub fn new(eps: Ratio, machines: usize) -> Self {
        let cap = DEFAULT_SUBSET_CAP as u128;
        let n = theoretical_subset_size(machines, eps).map_or(cap, |n| n.min(cap));
        SaeConfig {
            eps,
            subset_size: n as usize,
            exact_limits: ExactLimits::default(),
            engine: PathEngine::Auto,
        }
    }

    pub fn with_subset_size(eps: Ratio, subset_size: usize) -> Self {
        SaeConfig {
            eps,
            subset_size,
            exact_limits: ExactLimits::default(),
            engine: PathEngine::Auto,
        }
    }

    /// Uses the theoretical N, refusing when it would need more than
    /// `budget` subsets for `jobs` jobs. When N exceeds the job count the
    /// single subset of all jobs is used.
    pub fn with_theoretical_n(
        eps: Ratio,
        machines: usize,
        jobs: usize,
        budget: u128,
    ) -> Result<Self> {
        let n = theoretical_subset_size(machines, eps);
        let subset_size = match n {
            Some(n) if n <= jobs as u128 => {
                let count =
                    (0..=n).try_fold(0u128, |acc, k| acc.checked_add(binomial(jobs as u128, k)?));
                if count.is_none_or(|c| c > budget) {
                    return Err(Error::TooLarge {
                        what: "subset count",
                        count: count.unwrap_or(u128::MAX),
                        limit: budget,
                    });
                }
                n as usize
            }
            _ => jobs + 1,
        };
        Ok(SaeConfig::with_subset_size(eps, subset_size))
    }
}

/// N = m · (m(3+ε)/ε)^(2^(m(3+ε)/ε)), or `None` when it does not fit in
/// 128 bits.
pub fn theoretical_subset_size(machines: usize, eps: Ratio) -> Option<u128> {
    let e = eps.to_f64();
    if e <= 0.0 {
        return None;
    }
    let r = machines as f64 * (3.0 + e) / e;
    let log2_n = (machines as f64).log2() + 2f64.powf(r) * r.log2();
    if !log2_n.is_finite() || log2_n >= 127.0 {
        return None;
    }
    Some((machines as f64 * r.powf(2f64.powf(r))).ceil() as u128)
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Lexicographic k-subsets of 0..n.
struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Subsets { n, current }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for x in i + 1..k {
                    next[x] = next[x - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaeTrace {
    pub result: SolveResult,
    /// Subsets enumerated, smallest sizes first.
    pub subsets: usize,
    /// Subsets that admitted a path.
    pub feasible_subsets: usize,
    /// True when no subset admitted a path and SD was used.
    pub fallback: bool,
    /// True when the winning schedule had its large jobs placed greedily.
    pub heuristic: bool,
}

pub fn solve_sae(instance: &Instance, config: &SaeConfig) -> Result<SolveResult> {
    solve_sae_traced(instance, config).map(|t| t.result)
}

/// Subset enumeration scheme for open shops.
///
/// For every job subset of size at most N, jobs outside it that are larger
/// (by their largest operation) than the subset's smallest member get weight M, a
/// min-max path through all of the subset's arcs is computed at accuracy
/// ε/3, and its jobs are scheduled by the large/small split scheduler.
pub fn solve_sae_traced(instance: &Instance, config: &SaeConfig) -> Result<SaeTrace> {
    if instance.shop() != ShopKind::Open {
        return Err(Error::Unsupported {
            scheduler: "sae",
            reason: "subset enumeration is defined for open shops".into(),
        });
    }
    if config.eps.is_zero() {
        return Err(Error::InvalidInput("eps must be positive".into()));
    }
    let m = instance.machines();
    let n = instance.jobs().len();
    let base: Vec<Vec<u64>> = instance.jobs().iter().map(|j| j.loads(m)).collect();
    let sizes: Vec<u64> = instance.jobs().iter().map(|j| j.max_op()).collect();
    let third = config.eps.div_int(3)?;
    let big = Ratio::ONE
        .checked_add(third)?
        .mul_floor(instance.total_work())?
        .checked_add(1)
        .ok_or(Error::Overflow("big weight M"))?;

    let subsets: Box<dyn Iterator<Item = Vec<usize>>> = if config.subset_size > n {
        Box::new(std::iter::once((0..n).collect()))
    } else {
        Box::new((0..=config.subset_size).flat_map(move |k| Subsets::new(n, k)))
    };

    let mut best: Option<(SolveResult, bool)> = None;
    let mut count = 0;
    let mut feasible = 0;
    for subset in subsets {
        count += 1;
        let mut weights = WeightVectorMap::new(m, base.clone())?;
        if let Some(smallest) = subset.iter().map(|&j| sizes[j]).min() {
            for (k, &size) in sizes.iter().enumerate() {
                if size > smallest && !subset.contains(&k) {
                    weights.set_all(k, big);
                }
            }
        }
        let Some(path) = config
            .engine
            .find(instance.graph(), &weights, &subset, third)?
        else {
            continue;
        };
        feasible += 1;
        let jobs = instance.jobs_of(&path.arcs);
        let sw = schedule_sw_om(&jobs, m, config.eps, config.exact_limits)?;
        if best
            .as_ref()
            .is_none_or(|(b, _)| sw.schedule.makespan < b.makespan)
        {
            best = Some((SolveResult::new(path.arcs, sw.schedule), !sw.exact_large));
        }
    }

    match best {
        Some((result, heuristic)) => Ok(SaeTrace {
            result,
            subsets: count,
            feasible_subsets: feasible,
            fallback: false,
            heuristic,
        }),
        None => Ok(SaeTrace {
            result: solve_sd(instance)?,
            subsets: count,
            feasible_subsets: 0,
            fallback: true,
            heuristic: true,
        }),
    }
}
