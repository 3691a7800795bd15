use crate::error::{Error, Result};
use crate::model::{Assignment, Job, Schedule, ShopKind, Time};

use super::place_zero_ops;

/// max(max_j (p1j + p2j), Σ p1j, Σ p2j): the optimal O2 makespan.
pub fn gs_makespan(jobs: &[Job]) -> Time {
    let mut loads = [0 as Time; 2];
    let mut longest = 0;
    for job in jobs {
        let (a, b) = (job.load_on(0), job.load_on(1));
        loads[0] += a;
        loads[1] += b;
        longest = longest.max(a + b);
    }
    longest.max(loads[0]).max(loads[1])
}

/// Optimal two-machine open-shop schedule.
///
/// Built with the longest-alternate-processing-time list rule: when a
/// machine frees up it takes, among free jobs needing it, one that has not
/// been processed anywhere yet with the longest operation on the other
/// machine; jobs already half done come last. This attains
/// [`gs_makespan`].
pub fn schedule_gs_o2(jobs: &[Job]) -> Result<Schedule> {
    let mut times = Vec::with_capacity(jobs.len());
    for job in jobs {
        if job.ops.iter().any(|o| o.machine > 1) {
            return Err(Error::Unsupported {
                scheduler: "gs_o2",
                reason: format!("job {} uses a machine other than M1/M2", job.id),
            });
        }
        times.push([job.load_on(0), job.load_on(1)]);
    }
    let n = jobs.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&j| jobs[j].id);

    let mut pending: Vec<[bool; 2]> = times.iter().map(|p| [p[0] > 0, p[1] > 0]).collect();
    let mut untouched: Vec<bool> = vec![true; n];
    let mut remaining = pending.iter().flatten().filter(|&&p| p).count();
    let mut machine_free = [0 as Time; 2];
    let mut job_free = vec![0 as Time; n];
    let mut assignments = Vec::new();
    let mut t: Time = 0;

    while remaining > 0 {
        for i in 0..2 {
            if machine_free[i] > t {
                continue;
            }
            let other = 1 - i;
            let pick = order
                .iter()
                .copied()
                .filter(|&j| job_free[j] <= t && pending[j][i])
                .min_by_key(|&j| {
                    let fresh = untouched[j] && pending[j][other];
                    (
                        !fresh,
                        std::cmp::Reverse(if fresh { times[j][other] } else { 0 }),
                    )
                });
            if let Some(j) = pick {
                let k = jobs[j]
                    .ops
                    .iter()
                    .position(|o| o.machine == i && o.duration > 0)
                    .expect("pending op");
                let p = times[j][i];
                assignments.push(Assignment {
                    job: jobs[j].id,
                    op: k,
                    machine: i,
                    start: t,
                    duration: p,
                });
                machine_free[i] = t + p;
                job_free[j] = t + p;
                pending[j][i] = false;
                untouched[j] = false;
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
            .filter(|&x| x > t)
            .min()
            .expect("progress");
    }
    place_zero_ops(jobs, ShopKind::Open, &mut assignments);
    Ok(Schedule::from_assignments(assignments))
}
