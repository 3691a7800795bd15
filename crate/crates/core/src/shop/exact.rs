use crate::error::{Error, Result};
use crate::model::{Assignment, Job, Schedule, ShopKind, Time, job_bounds};

use super::{place_zero_ops, schedule_dense_job, schedule_dense_open};

/// Size cap for the exact solver, counted in positive-duration operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactLimits {
    pub max_ops: usize,
}

impl Default for ExactLimits {
    fn default() -> Self {
        ExactLimits { max_ops: 12 }
    }
}

#[derive(Debug, Clone, Copy)]
struct Op {
    job: usize,
    index: usize,
    machine: usize,
    duration: Time,
}

struct Search<'a> {
    shop: ShopKind,
    ops: &'a [Op],
    chains: Vec<Vec<usize>>,
    machine_free: Vec<Time>,
    job_free: Vec<Time>,
    machine_left: Vec<Time>,
    job_left: Vec<Time>,
    next_in_chain: Vec<usize>,
    done: Vec<bool>,
    starts: Vec<Time>,
    makespan: Time,
    best: Time,
    best_starts: Option<Vec<Time>>,
    floor: Time,
}

impl Search<'_> {
    fn candidates(&self) -> Vec<usize> {
        match self.shop {
            ShopKind::Open => (0..self.ops.len()).filter(|&o| !self.done[o]).collect(),
            ShopKind::Job => self
                .chains
                .iter()
                .enumerate()
                .filter_map(|(j, chain)| chain.get(self.next_in_chain[j]).copied())
                .collect(),
        }
    }

    fn est(&self, o: usize) -> Time {
        let op = self.ops[o];
        self.machine_free[op.machine].max(self.job_free[op.job])
    }

    fn bound(&self) -> Time {
        let m = self
            .machine_free
            .iter()
            .zip(&self.machine_left)
            .map(|(f, l)| f + l)
            .max()
            .unwrap_or(0);
        let j = self
            .job_free
            .iter()
            .zip(&self.job_left)
            .map(|(f, l)| f + l)
            .max()
            .unwrap_or(0);
        self.makespan.max(m).max(j)
    }

    /// Branching over active schedules: take the op with the earliest
    /// completion, then every op competing for its machine or its job that
    /// could start before that completion.
    fn run(&mut self, depth: usize) {
        if self.best <= self.floor {
            return;
        }
        if depth == self.ops.len() {
            if self.makespan < self.best {
                self.best = self.makespan;
                self.best_starts = Some(self.starts.clone());
            }
            return;
        }
        let cands = self.candidates();
        let pivot = cands
            .iter()
            .copied()
            .min_by_key(|&o| {
                let op = self.ops[o];
                (self.est(o) + op.duration, op.machine, op.job, op.index)
            })
            .expect("unscheduled ops remain");
        let pivot_end = self.est(pivot) + self.ops[pivot].duration;
        let (pm, pj) = (self.ops[pivot].machine, self.ops[pivot].job);
        let mut branch: Vec<usize> = cands
            .into_iter()
            .filter(|&o| {
                let op = self.ops[o];
                (op.machine == pm || op.job == pj) && self.est(o) < pivot_end
            })
            .collect();
        branch.sort_by_key(|&o| (self.est(o), self.ops[o].machine, self.ops[o].job));

        for o in branch {
            let op = self.ops[o];
            let start = self.est(o);
            let end = start + op.duration;
            let saved = (
                self.machine_free[op.machine],
                self.job_free[op.job],
                self.makespan,
            );
            self.machine_free[op.machine] = end;
            self.job_free[op.job] = end;
            self.machine_left[op.machine] -= op.duration;
            self.job_left[op.job] -= op.duration;
            self.makespan = self.makespan.max(end);
            self.done[o] = true;
            self.next_in_chain[op.job] += usize::from(self.shop == ShopKind::Job);
            self.starts[o] = start;

            if self.bound() < self.best {
                self.run(depth + 1);
            }

            self.next_in_chain[op.job] -= usize::from(self.shop == ShopKind::Job);
            self.done[o] = false;
            self.machine_left[op.machine] += op.duration;
            self.job_left[op.job] += op.duration;
            (
                self.machine_free[op.machine],
                self.job_free[op.job],
                self.makespan,
            ) = saved;
        }
    }
}

/// Minimum-makespan schedule by branch and bound over operation orderings.
///
/// Refuses inputs with more than `limits.max_ops` positive operations. The
/// greedy dense schedule seeds the incumbent; the trivial lower bound stops
/// the search as soon as it is met.
pub fn schedule_exact_small(
    jobs: &[Job],
    machines: usize,
    shop: ShopKind,
    limits: ExactLimits,
) -> Result<Schedule> {
    let mut ops = Vec::new();
    let mut chains = vec![Vec::new(); jobs.len()];
    for (j, job) in jobs.iter().enumerate() {
        for (k, op) in job.ops.iter().enumerate() {
            if op.machine >= machines {
                return Err(Error::InvalidInput(format!(
                    "job {} uses machine {} but m = {machines}",
                    job.id, op.machine
                )));
            }
            if op.duration > 0 {
                chains[j].push(ops.len());
                ops.push(Op {
                    job: j,
                    index: k,
                    machine: op.machine,
                    duration: op.duration,
                });
            }
        }
    }
    if ops.len() > limits.max_ops {
        return Err(Error::TooLarge {
            what: "operation count for the exact solver",
            count: ops.len() as u128,
            limit: limits.max_ops as u128,
        });
    }

    let greedy = match shop {
        ShopKind::Open => schedule_dense_open(jobs, machines),
        ShopKind::Job => schedule_dense_job(jobs, machines),
    };
    let (floor, _) = job_bounds(jobs, machines);
    if greedy.makespan <= floor {
        return Ok(greedy);
    }

    let mut machine_left = vec![0; machines];
    let mut job_left = vec![0; jobs.len()];
    for op in &ops {
        machine_left[op.machine] += op.duration;
        job_left[op.job] += op.duration;
    }
    let mut search = Search {
        shop,
        ops: &ops,
        chains,
        machine_free: vec![0; machines],
        job_free: vec![0; jobs.len()],
        machine_left,
        job_left,
        next_in_chain: vec![0; jobs.len()],
        done: vec![false; ops.len()],
        starts: vec![0; ops.len()],
        makespan: 0,
        best: greedy.makespan,
        best_starts: None,
        floor,
    };
    search.run(0);

    let Some(starts) = search.best_starts else {
        return Ok(greedy);
    };
    let mut assignments: Vec<Assignment> = ops
        .iter()
        .zip(&starts)
        .map(|(op, &start)| Assignment {
            job: jobs[op.job].id,
            op: op.index,
            machine: op.machine,
            start,
            duration: op.duration,
        })
        .collect();
    place_zero_ops(jobs, shop, &mut assignments);
    Ok(Schedule::from_assignments(assignments))
}
