use crate::model::{Assignment, Job, Schedule, ShopKind, Time};

use super::place_zero_ops;

/// Greedy dense open-shop schedule: whenever a machine is free, it starts
/// the smallest-id free job that still needs it. Machines are scanned in
/// index order at each event instant.
pub fn schedule_dense_open(jobs: &[Job], machines: usize) -> Schedule {
    let order = id_order(jobs);
    let mut pending: Vec<Vec<bool>> = jobs
        .iter()
        .map(|j| {
            let mut p = vec![false; machines];
            for op in &j.ops {
                if op.duration > 0 {
                    p[op.machine] = true;
                }
            }
            p
        })
        .collect();
    let mut remaining: usize = pending.iter().flatten().filter(|&&p| p).count();
    let mut machine_free = vec![0 as Time; machines];
    let mut job_free = vec![0 as Time; jobs.len()];
    let mut assignments = Vec::new();
    let mut t: Time = 0;

    while remaining > 0 {
        for i in 0..machines {
            if machine_free[i] > t {
                continue;
            }
            let pick = order
                .iter()
                .copied()
                .find(|&j| job_free[j] <= t && pending[j][i]);
            if let Some(j) = pick {
                let (k, op) = jobs[j]
                    .ops
                    .iter()
                    .enumerate()
                    .find(|(_, o)| o.machine == i && o.duration > 0)
                    .expect("pending op exists");
                assignments.push(Assignment {
                    job: jobs[j].id,
                    op: k,
                    machine: i,
                    start: t,
                    duration: op.duration,
                });
                machine_free[i] = t + op.duration;
                job_free[j] = t + op.duration;
                pending[j][i] = false;
                remaining -= 1;
            }
        }
        if remaining == 0 {
            break;
        }
        t = next_event(t, &machine_free, &job_free);
    }
    place_zero_ops(jobs, ShopKind::Open, &mut assignments);
    let schedule = Schedule::from_assignments(assignments);
    debug_assert!(schedule.makespan <= racsmany_bound(jobs, &schedule));
    schedule
}

/// Greedy dense job-shop schedule over next-pending operations, same
/// tie-breaking as [`schedule_dense_open`].
pub fn schedule_dense_job(jobs: &[Job], machines: usize) -> Schedule {
    let order = id_order(jobs);
    let mut next = vec![0usize; jobs.len()];
    let mut machine_free = vec![0 as Time; machines];
    let mut job_free = vec![0 as Time; jobs.len()];
    let mut assignments = Vec::new();
    let mut t: Time = 0;

    let advance_zeros = |j: usize, next: &mut [usize], ready: Time, out: &mut Vec<Assignment>| {
        while let Some(op) = jobs[j].ops.get(next[j]) {
            if op.duration > 0 {
                break;
            }
            out.push(Assignment {
                job: jobs[j].id,
                op: next[j],
                machine: op.machine,
                start: ready,
                duration: 0,
            });
            next[j] += 1;
        }
    };
    for j in 0..jobs.len() {
        advance_zeros(j, &mut next, 0, &mut assignments);
    }

    loop {
        if (0..jobs.len()).all(|j| next[j] == jobs[j].ops.len()) {
            break;
        }
        #[allow(clippy::needless_range_loop)]
        for i in 0..machines {
            if machine_free[i] > t {
                continue;
            }
            let pick = order.iter().copied().find(|&j| {
                job_free[j] <= t && jobs[j].ops.get(next[j]).is_some_and(|o| o.machine == i)
            });
            if let Some(j) = pick {
                let k = next[j];
                let op = jobs[j].ops[k];
                assignments.push(Assignment {
                    job: jobs[j].id,
                    op: k,
                    machine: i,
                    start: t,
                    duration: op.duration,
                });
                let end = t + op.duration;
                machine_free[i] = end;
                job_free[j] = end;
                next[j] += 1;
                advance_zeros(j, &mut next, end, &mut assignments);
            }
        }
        if (0..jobs.len()).all(|j| next[j] == jobs[j].ops.len()) {
            break;
        }
        t = next_event(t, &machine_free, &job_free);
    }
    Schedule::from_assignments(assignments)
}

fn id_order(jobs: &[Job]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..jobs.len()).collect();
    order.sort_by_key(|&j| jobs[j].id);
    order
}

fn next_event(t: Time, machine_free: &[Time], job_free: &[Time]) -> Time {
    machine_free
        .iter()
        .chain(job_free)
        .copied()
        .filter(|&x| x > t)
        .min()
        .expect("something is running while work remains")
}

/// Σ_j p_lj + Σ_i p_ik for the operation O_lk that finishes last: a dense
/// open-shop schedule never exceeds this.
pub fn racsmany_bound(jobs: &[Job], schedule: &Schedule) -> Time {
    let Some(last) = schedule
        .assignments
        .iter()
        .filter(|a| a.duration > 0)
        .max_by_key(|a| (a.end(), std::cmp::Reverse((a.machine, a.job))))
    else {
        return 0;
    };
    let machine_load: Time = jobs.iter().map(|j| j.load_on(last.machine)).sum();
    let job_total = jobs
        .iter()
        .find(|j| j.id == last.job)
        .map(Job::total)
        .unwrap_or(0);
    machine_load + job_total
}
