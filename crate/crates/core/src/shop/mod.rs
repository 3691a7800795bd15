//! Shop-scheduling subroutines.
//!
//! Every scheduler takes a slice of [`Job`]s (the jobs on a chosen path)
//! and returns a [`Schedule`] keyed by job id. Zero-duration operations
//! occupy no machine time: open-shop ones are placed at time 0, job-shop
//! ones the instant their chain predecessor finishes.

mod dense;
mod exact;
mod gs;
mod johnson;
mod sw;

pub use dense::{racsmany_bound, schedule_dense_job, schedule_dense_open};
pub use exact::{ExactLimits, schedule_exact_small};
pub use gs::{gs_makespan, schedule_gs_o2};
pub use johnson::{
    jackson_order_bound, johnson_makespan, johnson_order, schedule_jackson_j2, schedule_johnson_f2,
};
pub use sw::{SwSchedule, schedule_sw_om};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Assignment, Job, Schedule, ShopKind, Time};

/// Scheduler plugged into the combination algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchedulerKind {
    GsO2,
    DenseOpen,
    JacksonJ2,
    DenseJob,
}

impl SchedulerKind {
    pub fn name(&self) -> &'static str {
        match self {
            SchedulerKind::GsO2 => "gs_o2",
            SchedulerKind::DenseOpen => "dense_open",
            SchedulerKind::JacksonJ2 => "jackson_j2",
            SchedulerKind::DenseJob => "dense_job",
        }
    }

    pub fn shop(&self) -> ShopKind {
        match self {
            SchedulerKind::GsO2 | SchedulerKind::DenseOpen => ShopKind::Open,
            SchedulerKind::JacksonJ2 | SchedulerKind::DenseJob => ShopKind::Job,
        }
    }

    pub fn run(&self, jobs: &[Job], machines: usize) -> Result<Schedule> {
        match self {
            SchedulerKind::GsO2 => {
                require_machines("gs_o2", machines, 2)?;
                schedule_gs_o2(jobs)
            }
            SchedulerKind::DenseOpen => Ok(schedule_dense_open(jobs, machines)),
            SchedulerKind::JacksonJ2 => {
                require_machines("jackson_j2", machines, 2)?;
                schedule_jackson_j2(jobs)
            }
            SchedulerKind::DenseJob => Ok(schedule_dense_job(jobs, machines)),
        }
    }
}

fn require_machines(scheduler: &'static str, machines: usize, expected: usize) -> Result<()> {
    if machines != expected {
        return Err(Error::Unsupported {
            scheduler,
            reason: format!("needs m = {expected}, got {machines}"),
        });
    }
    Ok(())
}

/// Start times for zero-duration operations given the positive ones.
fn place_zero_ops(jobs: &[Job], shop: ShopKind, assignments: &mut Vec<Assignment>) {
    for job in jobs {
        let mut ends: Vec<Option<Time>> = vec![None; job.ops.len()];
        for a in assignments.iter().filter(|a| a.job == job.id) {
            ends[a.op] = Some(a.end());
        }
        let mut ready = 0;
        for (k, op) in job.ops.iter().enumerate() {
            if op.duration == 0 {
                let start = if shop == ShopKind::Open { 0 } else { ready };
                assignments.push(Assignment {
                    job: job.id,
                    op: k,
                    machine: op.machine,
                    start,
                    duration: 0,
                });
            } else if let Some(end) = ends[k] {
                ready = end;
            }
        }
    }
}

/// Semi-active job-shop timetable from fixed per-machine operation
/// sequences of `(job index, op index)`. Returns `None` if the sequences
/// conflict with the job chains.
fn timetable(jobs: &[Job], machines: usize, sequences: &[Vec<(usize, usize)>]) -> Option<Schedule> {
    let mut next_op = vec![0usize; jobs.len()];
    let mut job_free = vec![0 as Time; jobs.len()];
    let mut machine_free = vec![0 as Time; machines];
    let mut cursor = vec![0usize; machines];
    let mut assignments = Vec::new();

    // Skip zero ops in the chain eagerly.
    let skip_zeros =
        |j: usize, next_op: &mut [usize], job_free: &[Time], out: &mut Vec<Assignment>| {
            while next_op[j] < jobs[j].ops.len() && jobs[j].ops[next_op[j]].duration == 0 {
                let op = jobs[j].ops[next_op[j]];
                out.push(Assignment {
                    job: jobs[j].id,
                    op: next_op[j],
                    machine: op.machine,
                    start: job_free[j],
                    duration: 0,
                });
                next_op[j] += 1;
            }
        };
    for j in 0..jobs.len() {
        skip_zeros(j, &mut next_op, &job_free, &mut assignments);
    }

    loop {
        let mut progressed = false;
        for i in 0..machines {
            while let Some(&(j, k)) = sequences[i].get(cursor[i]) {
                if jobs[j].ops[k].duration == 0 {
                    cursor[i] += 1;
                    continue;
                }
                if next_op[j] != k {
                    break;
                }
                let op = jobs[j].ops[k];
                let start = machine_free[i].max(job_free[j]);
                assignments.push(Assignment {
                    job: jobs[j].id,
                    op: k,
                    machine: i,
                    start,
                    duration: op.duration,
                });
                machine_free[i] = start + op.duration;
                job_free[j] = start + op.duration;
                next_op[j] += 1;
                cursor[i] += 1;
                skip_zeros(j, &mut next_op, &job_free, &mut assignments);
                progressed = true;
            }
        }
        if (0..machines).all(|i| cursor[i] == sequences[i].len()) {
            break;
        }
        if !progressed {
            return None;
        }
    }
    if next_op.iter().zip(jobs).any(|(&n, j)| n != j.ops.len()) {
        return None;
    }
    Some(Schedule::from_assignments(assignments))
}

/// Dense-ness check by replay: at every event instant, no idle machine
/// could have started a waiting operation. Zero-duration ops are ignored.
pub fn is_dense(jobs: &[Job], shop: ShopKind, schedule: &Schedule) -> bool {
    let mut instants: Vec<Time> = schedule
        .assignments
        .iter()
        .flat_map(|a| [a.start, a.end()])
        .collect();
    instants.push(0);
    instants.sort_unstable();
    instants.dedup();
    let find = |job: usize, op: usize| {
        schedule
            .assignments
            .iter()
            .find(|a| a.job == job && a.op == op)
            .copied()
    };
    for &t in &instants {
        let running = |a: &Assignment| a.duration > 0 && a.start <= t && t < a.end();
        let machine_busy = |i: usize| {
            schedule
                .assignments
                .iter()
                .any(|a| a.machine == i && running(a))
        };
        for job in jobs {
            let job_busy = schedule
                .assignments
                .iter()
                .any(|a| a.job == job.id && running(a));
            if job_busy {
                continue;
            }
            for (k, op) in job.ops.iter().enumerate() {
                if op.duration == 0 {
                    continue;
                }
                let Some(a) = find(job.id, k) else {
                    return false;
                };
                if a.start <= t {
                    continue;
                }
                let startable = match shop {
                    ShopKind::Open => true,
                    ShopKind::Job => (0..k).all(|p| find(job.id, p).is_some_and(|x| x.end() <= t)),
                };
                if startable && !machine_busy(op.machine) {
                    return false;
                }
            }
        }
    }
    true
}
