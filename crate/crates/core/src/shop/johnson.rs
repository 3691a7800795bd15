use crate::error::{Error, Result};
use crate::model::{Assignment, Job, Schedule, Time};

use super::timetable;

/// Johnson's rule for F2||Cmax: jobs with p1 < p2 first by ascending p1,
/// then the rest by descending p2. Ties keep input order.
pub fn johnson_order(times: &[[Time; 2]]) -> Vec<usize> {
    let (mut head, mut tail): (Vec<usize>, Vec<usize>) =
        (0..times.len()).partition(|&j| times[j][0] < times[j][1]);
    head.sort_by_key(|&j| times[j][0]);
    tail.sort_by_key(|&j| std::cmp::Reverse(times[j][1]));
    head.extend(tail);
    head
}

/// Permutation flow-shop makespan of `order`.
fn flow_makespan(times: &[[Time; 2]], order: &[usize]) -> Time {
    let (mut c1, mut c2) = (0, 0);
    for &j in order {
        c1 += times[j][0];
        c2 = c2.max(c1) + times[j][1];
    }
    c2
}

/// Optimal F2 makespan via Johnson's rule.
pub fn johnson_makespan(times: &[[Time; 2]]) -> Time {
    flow_makespan(times, &johnson_order(times))
}

/// Two-machine flow shop: every job is the chain M1 → M2.
pub fn schedule_johnson_f2(jobs: &[Job]) -> Result<Schedule> {
    let mut times = Vec::with_capacity(jobs.len());
    for job in jobs {
        let ok = job.ops.len() == 2 && job.ops[0].machine == 0 && job.ops[1].machine == 1;
        if !ok {
            return Err(Error::Unsupported {
                scheduler: "johnson_f2",
                reason: format!("job {} is not a M1 -> M2 chain", job.id),
            });
        }
        times.push([job.ops[0].duration, job.ops[1].duration]);
    }
    let order = johnson_order(&times);
    let (mut c1, mut c2) = (0, 0);
    let mut assignments = Vec::with_capacity(2 * jobs.len());
    for &j in &order {
        let [a, b] = times[j];
        assignments.push(Assignment {
            job: jobs[j].id,
            op: 0,
            machine: 0,
            start: c1,
            duration: a,
        });
        c1 += a;
        let start = c2.max(c1);
        assignments.push(Assignment {
            job: jobs[j].id,
            op: 1,
            machine: 1,
            start,
            duration: b,
        });
        c2 = start + b;
    }
    Ok(Schedule::from_assignments(assignments))
}

/// Which Jackson class a job falls in. Single-op jobs join the class that
/// starts on their machine, with a zero partner operation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Route {
    OneTwo,
    TwoOne,
}

fn classify(job: &Job) -> Result<(Route, [Time; 2])> {
    let err = |reason: String| Error::Unsupported {
        scheduler: "jackson_j2",
        reason,
    };
    if job.ops.is_empty() || job.ops.len() > 2 {
        return Err(err(format!(
            "job {} has {} operations",
            job.id,
            job.ops.len()
        )));
    }
    if job.ops.iter().any(|o| o.machine > 1) {
        return Err(err(format!(
            "job {} uses a machine other than M1/M2",
            job.id
        )));
    }
    if job.ops.len() == 2 && job.ops[0].machine == job.ops[1].machine {
        return Err(err(format!("job {} visits the same machine twice", job.id)));
    }
    let route = if job.ops[0].machine == 0 {
        Route::OneTwo
    } else {
        Route::TwoOne
    };
    Ok((route, [job.load_on(0), job.load_on(1)]))
}

/// Jackson's rule for J2|op≤2|Cmax.
///
/// J12 and J21 are each sequenced by Johnson's rule (J21 with machine roles
/// swapped). M1 runs J12 then J21; M2 runs J21 then J12.
pub fn schedule_jackson_j2(jobs: &[Job]) -> Result<Schedule> {
    let mut j12 = Vec::new();
    let mut j21 = Vec::new();
    for (idx, job) in jobs.iter().enumerate() {
        let (route, [p1, p2]) = classify(job)?;
        match route {
            Route::OneTwo => j12.push((idx, [p1, p2])),
            Route::TwoOne => j21.push((idx, [p2, p1])),
        }
    }
    let seq = |group: &[(usize, [Time; 2])]| -> Vec<usize> {
        let times: Vec<[Time; 2]> = group.iter().map(|g| g.1).collect();
        johnson_order(&times)
            .into_iter()
            .map(|x| group[x].0)
            .collect()
    };
    let s12 = seq(&j12);
    let s21 = seq(&j21);

    let op_on = |j: usize, machine: usize| jobs[j].ops.iter().position(|o| o.machine == machine);
    let mut sequences = vec![Vec::new(), Vec::new()];
    for &j in s12.iter().chain(&s21) {
        if let Some(k) = op_on(j, 0) {
            sequences[0].push((j, k));
        }
    }
    for &j in s21.iter().chain(&s12) {
        if let Some(k) = op_on(j, 1) {
            sequences[1].push((j, k));
        }
    }
    Ok(timetable(jobs, 2, &sequences).expect("Jackson sequences respect every chain"))
}

/// `(C¹, C²)`: Johnson makespans after forcing every job onto the route
/// M1 → M2 (resp. M2 → M1) with unchanged durations. Jackson's makespan
/// never exceeds `max(C¹, C²)`.
pub fn jackson_order_bound(jobs: &[Job]) -> Result<(Time, Time)> {
    let mut forward = Vec::with_capacity(jobs.len());
    let mut backward = Vec::with_capacity(jobs.len());
    for job in jobs {
        let (_, [p1, p2]) = classify(job)?;
        forward.push([p1, p2]);
        backward.push([p2, p1]);
    }
    Ok((johnson_makespan(&forward), johnson_makespan(&backward)))
}
