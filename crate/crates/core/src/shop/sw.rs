use crate::error::Result;
use crate::model::{Assignment, Job, Schedule, ShopKind, Time};
use crate::rational::Ratio;

use super::{ExactLimits, place_zero_ops, schedule_dense_open, schedule_exact_small};

/// Outcome of the large/small split scheduler.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwSchedule {
    pub schedule: Schedule,
    /// k of the chosen threshold α_k.
    pub alpha_index: usize,
    /// Ids of the jobs classified as large.
    pub large_jobs: Vec<usize>,
    /// False when the large jobs exceeded the exact-solver cap and were
    /// scheduled greedily; no approximation guarantee is claimed then.
    pub exact_large: bool,
}

/// Open-shop scheduler that splits jobs into large and small ones.
///
/// With P = max machine load and b = ε / (m(3+ε)), candidate thresholds are
/// α_k = b^(2^k) for k = 0..⌈m(3+ε)/ε⌉. The first k whose middle band
/// (small-job ops with α²P < p ≤ αP) totals at most ε/(3+ε)·P is used. A job
/// is large if some op is ≥ αP. Large jobs are scheduled exactly, then small
/// ops are packed greedily into the idle gaps that fit them and densely
/// after the large block.
pub fn schedule_sw_om(
    jobs: &[Job],
    machines: usize,
    eps: Ratio,
    limits: ExactLimits,
) -> Result<SwSchedule> {
    let mut loads = vec![0 as Time; machines];
    for job in jobs {
        for op in &job.ops {
            loads[op.machine] += op.duration;
        }
    }
    let pmax = loads.iter().copied().max().unwrap_or(0);
    if pmax == 0 {
        let mut assignments = Vec::new();
        place_zero_ops(jobs, ShopKind::Open, &mut assignments);
        return Ok(SwSchedule {
            schedule: Schedule::from_assignments(assignments),
            alpha_index: 0,
            large_jobs: Vec::new(),
            exact_large: true,
        });
    }

    let (large, alpha_index) = split(jobs, machines, eps, pmax);
    let large_jobs: Vec<Job> = large.iter().map(|&x| jobs[x].clone()).collect();
    let small_jobs: Vec<Job> = (0..jobs.len())
        .filter(|x| !large.contains(x))
        .map(|x| jobs[x].clone())
        .collect();

    let (block, exact_large) =
        match schedule_exact_small(&large_jobs, machines, ShopKind::Open, limits) {
            Ok(s) => (s, true),
            Err(_) => (schedule_dense_open(&large_jobs, machines), false),
        };

    let mut assignments = block.assignments.clone();
    assignments.extend(fill_gaps(&small_jobs, machines, &block));
    Ok(SwSchedule {
        schedule: Schedule::from_assignments(assignments),
        alpha_index,
        large_jobs: large_jobs.iter().map(|j| j.id).collect(),
        exact_large,
    })
}

/// Returns (indices of large jobs, chosen k).
fn split(jobs: &[Job], machines: usize, eps: Ratio, pmax: Time) -> (Vec<usize>, usize) {
    let e = eps.to_f64();
    let base = e / (machines as f64 * (3.0 + e));
    let ln_base = base.ln();
    let rounds = ((machines as f64 * (3.0 + e)) / e).ceil().max(1.0) as usize;
    let ln_p = (pmax as f64).ln();
    // Compare p against α·P in log space; α_k underflows f64 quickly.
    let at_least = |p: Time, ln_alpha: f64| p > 0 && (p as f64).ln() >= ln_alpha + ln_p;
    let at_most = |p: Time, ln_alpha: f64| p == 0 || (p as f64).ln() <= ln_alpha + ln_p;

    let mut best: Option<(u128, usize, Vec<usize>)> = None;
    for k in 0..rounds {
        let ln_alpha = ln_base * 2f64.powi(k.min(1000) as i32);
        let large: Vec<usize> = (0..jobs.len())
            .filter(|&j| jobs[j].ops.iter().any(|o| at_least(o.duration, ln_alpha)))
            .collect();
        let band: u128 = (0..jobs.len())
            .filter(|j| !large.contains(j))
            .flat_map(|j| jobs[j].ops.iter())
            .filter(|o| {
                o.duration > 0
                    && !at_most(o.duration, 2.0 * ln_alpha)
                    && at_most(o.duration, ln_alpha)
            })
            .map(|o| o.duration as u128)
            .sum();
        // band ≤ ε/(3+ε)·P  ⇔  band·(3d + n) ≤ n·P
        let (n, d) = (eps.num() as u128, eps.den() as u128);
        if band * (3 * d + n) <= n * pmax as u128 {
            return (large, k);
        }
        if best.as_ref().is_none_or(|b| band < b.0) {
            best = Some((band, k, large));
        }
    }
    let (_, k, large) = best.expect("at least one round");
    (large, k)
}

/// Greedy placement of small-job ops around the fixed large-job block.
fn fill_gaps(jobs: &[Job], machines: usize, block: &Schedule) -> Vec<Assignment> {
    let mut reserved: Vec<Vec<(Time, Time)>> = vec![Vec::new(); machines];
    for a in block.assignments.iter().filter(|a| a.duration > 0) {
        reserved[a.machine].push((a.start, a.end()));
    }
    for r in &mut reserved {
        r.sort_unstable();
    }
    let mut order: Vec<usize> = (0..jobs.len()).collect();
    order.sort_by_key(|&j| jobs[j].id);
    let mut pending: Vec<Vec<usize>> = jobs
        .iter()
        .map(|j| {
            (0..j.ops.len())
                .filter(|&k| j.ops[k].duration > 0)
                .collect()
        })
        .collect();
    let mut remaining: usize = pending.iter().map(Vec::len).sum();
    let mut machine_free = vec![0 as Time; machines];
    let mut job_free = vec![0 as Time; jobs.len()];
    let mut out = Vec::new();
    let mut t: Time = 0;

    while remaining > 0 {
        for i in 0..machines {
            if machine_free[i] > t || reserved[i].iter().any(|&(s, e)| s <= t && t < e) {
                continue;
            }
            let gap_end = reserved[i]
                .iter()
                .find(|&&(s, _)| s > t)
                .map(|&(s, _)| s)
                .unwrap_or(Time::MAX);
            let pick = order.iter().copied().find_map(|j| {
                if job_free[j] > t {
                    return None;
                }
                pending[j]
                    .iter()
                    .position(|&k| {
                        jobs[j].ops[k].machine == i && jobs[j].ops[k].duration <= gap_end - t
                    })
                    .map(|pos| (j, pos))
            });
            if let Some((j, pos)) = pick {
                let k = pending[j].remove(pos);
                let op = jobs[j].ops[k];
                out.push(Assignment {
                    job: jobs[j].id,
                    op: k,
                    machine: i,
                    start: t,
                    duration: op.duration,
                });
                machine_free[i] = t + op.duration;
                job_free[j] = t + op.duration;
                remaining -= 1;
            }
        }
        if remaining == 0 {
            break;
        }
        t = machine_free
            .iter()
            .chain(&job_free)
            .copied()
            .chain(reserved.iter().flatten().map(|&(_, e)| e))
            .filter(|&x| x > t)
            .min()
            .expect("a later event exists while ops remain");
    }
    place_zero_ops(jobs, ShopKind::Open, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::super::testutil::{check, open_jobs};
    use super::*;

    fn eps() -> Ratio {
        Ratio::new(1, 4).unwrap()
    }

    #[test]
    fn single_huge_job_is_exact() {
        let jobs = open_jobs(&[&[7, 5, 9]]);
        let r = schedule_sw_om(&jobs, 3, eps(), ExactLimits::default()).unwrap();
        assert_eq!(r.schedule.makespan, 21);
        assert_eq!(r.large_jobs, vec![0]);
        assert!(r.exact_large);
    }

    #[test]
    fn empty_and_all_zero() {
        let r = schedule_sw_om(&[], 2, eps(), ExactLimits::default()).unwrap();
        assert_eq!(r.schedule.makespan, 0);
        let jobs = open_jobs(&[&[0, 0], &[0, 0]]);
        let r = schedule_sw_om(&jobs, 2, eps(), ExactLimits::default()).unwrap();
        assert_eq!(r.schedule.makespan, 0);
        check(&jobs, 2, ShopKind::Open, &r.schedule);
    }

    #[test]
    fn mixed_sizes_are_feasible() {
        let jobs = open_jobs(&[
            &[40, 2, 1],
            &[1, 38, 3],
            &[1, 1, 1],
            &[2, 1, 2],
            &[1, 2, 1],
            &[3, 1, 30],
        ]);
        let r = schedule_sw_om(&jobs, 3, eps(), ExactLimits::default()).unwrap();
        check(&jobs, 3, ShopKind::Open, &r.schedule);
        assert!(r.schedule.makespan >= 45);
        assert!(r.large_jobs.contains(&0) && r.large_jobs.contains(&1));
    }

    #[test]
    fn uniform_tiny_jobs() {
        let jobs = open_jobs(&[&[1, 1], &[1, 1], &[1, 1], &[1, 1], &[1, 1], &[1, 1]]);
        let r = schedule_sw_om(&jobs, 2, eps(), ExactLimits::default()).unwrap();
        check(&jobs, 2, ShopKind::Open, &r.schedule);
        assert_eq!(r.schedule.makespan, 6);
    }

    #[test]
    fn oversized_large_set_falls_back() {
        let jobs = open_jobs(&[&[5, 5], &[5, 5], &[5, 5], &[5, 5]]);
        let r = schedule_sw_om(&jobs, 2, eps(), ExactLimits { max_ops: 3 }).unwrap();
        assert!(!r.exact_large);
        check(&jobs, 2, ShopKind::Open, &r.schedule);
    }
}
