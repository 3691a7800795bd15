//! Graphs, jobs, instances and schedules, plus schedule validation and the
//! trivial makespan bounds of a dense shop schedule.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer time unit.
pub type Time = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShopKind {
    Open,
    Job,
}

impl fmt::Display for ShopKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShopKind::Open => f.write_str("open"),
            ShopKind::Job => f.write_str("job"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
}

/// Directed multigraph with a designated source and sink. Parallel arcs are
/// allowed; paths are always arc-id sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    arcs: Vec<Arc>,
    source: usize,
    sink: usize,
    out_arcs: Vec<Vec<usize>>,
    in_arcs: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from `(tail, head)` pairs; arc `i` gets id `i`.
    pub fn new(
        vertex_count: usize,
        arcs: &[(usize, usize)],
        source: usize,
        sink: usize,
    ) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidInstance(
                "graph needs at least one vertex".into(),
            ));
        }
        if source >= vertex_count || sink >= vertex_count {
            return Err(Error::InvalidInstance(format!(
                "source {source} / sink {sink} out of range for {vertex_count} vertices"
            )));
        }
        if source == sink {
            return Err(Error::InvalidInstance("source and sink coincide".into()));
        }
        let mut out_arcs = vec![Vec::new(); vertex_count];
        let mut in_arcs = vec![Vec::new(); vertex_count];
        let mut list = Vec::with_capacity(arcs.len());
        for (id, &(tail, head)) in arcs.iter().enumerate() {
            if tail >= vertex_count || head >= vertex_count {
                return Err(Error::InvalidInstance(format!(
                    "arc {id} ({tail}->{head}) references a missing vertex"
                )));
            }
            if tail == head {
                return Err(Error::InvalidInstance(format!("arc {id} is a self-loop")));
            }
            out_arcs[tail].push(id);
            in_arcs[head].push(id);
            list.push(Arc { id, tail, head });
        }
        Ok(Graph {
            vertex_count,
            arcs: list,
            source,
            sink,
            out_arcs,
            in_arcs,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: usize) -> &Arc {
        &self.arcs[id]
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    /// Outgoing arc ids of `v`, ascending.
    pub fn out_arcs(&self, v: usize) -> &[usize] {
        &self.out_arcs[v]
    }

    /// Incoming arc ids of `v`, ascending.
    pub fn in_arcs(&self, v: usize) -> &[usize] {
        &self.in_arcs[v]
    }

    /// Checks that `path` is a simple directed s–t path.
    pub fn check_simple_path(&self, path: &[usize]) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        if path.is_empty() {
            return bad("empty path".into());
        }
        let mut seen = vec![false; self.vertex_count];
        let mut at = self.source;
        seen[at] = true;
        for &id in path {
            let Some(arc) = self.arcs.get(id) else {
                return bad(format!("arc {id} does not exist"));
            };
            if arc.tail != at {
                return bad(format!("arc {id} does not leave vertex {at}"));
            }
            at = arc.head;
            if seen[at] {
                return bad(format!("vertex {at} is visited twice"));
            }
            seen[at] = true;
        }
        if at != self.sink {
            return bad(format!("path ends at {at}, not at the sink {}", self.sink));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Operation {
    pub machine: usize,
    pub duration: Time,
}

/// A job. For open shops `ops` holds exactly one operation per machine in
/// machine order; for job shops it is the processing chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Job {
    pub id: usize,
    pub ops: Vec<Operation>,
}

impl Job {
    pub fn new(id: usize, ops: Vec<Operation>) -> Self {
        Job { id, ops }
    }

    /// Open-shop job from per-machine durations.
    pub fn open(id: usize, durations: &[Time]) -> Self {
        let ops = durations
            .iter()
            .enumerate()
            .map(|(machine, &duration)| Operation { machine, duration })
            .collect();
        Job { id, ops }
    }

    /// Job-shop job from a `(machine, duration)` chain.
    pub fn chain(id: usize, chain: &[(usize, Time)]) -> Self {
        let ops = chain
            .iter()
            .map(|&(machine, duration)| Operation { machine, duration })
            .collect();
        Job { id, ops }
    }

    /// Σ_i μ_ij p_ij.
    pub fn total(&self) -> Time {
        self.ops.iter().map(|o| o.duration).sum()
    }

    /// Total processing on machine `i` (μ_ij p_ij).
    pub fn load_on(&self, machine: usize) -> Time {
        self.ops
            .iter()
            .filter(|o| o.machine == machine)
            .map(|o| o.duration)
            .sum()
    }

    /// Per-machine loads for `m` machines.
    pub fn loads(&self, m: usize) -> Vec<Time> {
        let mut loads = vec![0; m];
        for op in &self.ops {
            loads[op.machine] += op.duration;
        }
        loads
    }

    /// Largest single operation, used as the job size by SAE.
    pub fn max_op(&self) -> Time {
        self.ops.iter().map(|o| o.duration).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    shop: ShopKind,
    machines: usize,
    graph: Graph,
    jobs: Vec<Job>,
}

/// Largest admissible total processing time; keeps every derived quantity
/// (big weights, scaled sums) inside 64 bits.
pub const MAX_TOTAL_WORK: Time = 1 << 48;

impl Instance {
    pub fn new(shop: ShopKind, machines: usize, graph: Graph, jobs: Vec<Job>) -> Result<Self> {
        if machines == 0 {
            return Err(Error::InvalidInstance(
                "at least one machine is required".into(),
            ));
        }
        if jobs.len() != graph.arc_count() {
            return Err(Error::InvalidInstance(format!(
                "{} jobs for {} arcs",
                jobs.len(),
                graph.arc_count()
            )));
        }
        let mut total: Time = 0;
        for (idx, job) in jobs.iter().enumerate() {
            if job.id != idx {
                return Err(Error::InvalidInstance(format!(
                    "job at position {idx} has id {}",
                    job.id
                )));
            }
            if let Some(op) = job.ops.iter().find(|o| o.machine >= machines) {
                return Err(Error::InvalidInstance(format!(
                    "job {idx} uses machine {} but m = {machines}",
                    op.machine
                )));
            }
            match shop {
                ShopKind::Open => {
                    let ok = job.ops.len() == machines
                        && job.ops.iter().enumerate().all(|(i, o)| o.machine == i);
                    if !ok {
                        return Err(Error::InvalidInstance(format!(
                            "open-shop job {idx} must have one operation per machine in machine order"
                        )));
                    }
                }
                ShopKind::Job => {
                    if job.ops.is_empty() {
                        return Err(Error::InvalidInstance(format!(
                            "job {idx} has no operations"
                        )));
                    }
                }
            }
            for op in &job.ops {
                total = total
                    .checked_add(op.duration)
                    .filter(|&t| t <= MAX_TOTAL_WORK)
                    .ok_or(Error::Overflow("total processing time"))?;
            }
        }
        Ok(Instance {
            shop,
            machines,
            graph,
            jobs,
        })
    }

    pub fn shop(&self) -> ShopKind {
        self.shop
    }

    pub fn machines(&self) -> usize {
        self.machines
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn jobs(&self) -> &[Job] {
        &self.jobs
    }

    pub fn job(&self, id: usize) -> &Job {
        &self.jobs[id]
    }

    /// Jobs on the given arcs, cloned in path order.
    pub fn jobs_of(&self, arcs: &[usize]) -> Vec<Job> {
        arcs.iter().map(|&a| self.jobs[a].clone()).collect()
    }

    /// Σ_j Σ_i μ_ij p_ij over all jobs of the instance.
    pub fn total_work(&self) -> Time {
        self.jobs.iter().map(Job::total).sum()
    }

    /// Maximum number of operations of any job (μ).
    pub fn max_ops_per_job(&self) -> usize {
        self.jobs.iter().map(|j| j.ops.len()).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment {
    pub job: usize,
    pub op: usize,
    pub machine: usize,
    pub start: Time,
    pub duration: Time,
}

impl Assignment {
    pub fn end(&self) -> Time {
        self.start + self.duration
    }

    /// Zero-length assignments never conflict with anything.
    fn overlaps(&self, other: &Assignment) -> bool {
        self.duration > 0
            && other.duration > 0
            && self.start < other.end()
            && other.start < self.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Schedule {
    pub assignments: Vec<Assignment>,
    pub makespan: Time,
}

impl Schedule {
    /// Builds a schedule and derives the makespan from the assignments.
    pub fn from_assignments(mut assignments: Vec<Assignment>) -> Self {
        assignments.sort_by_key(|a| (a.start, a.machine, a.job, a.op));
        let makespan = assignments.iter().map(Assignment::end).max().unwrap_or(0);
        Schedule {
            assignments,
            makespan,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub path: Vec<usize>,
    pub job_set: Vec<usize>,
    pub schedule: Schedule,
    pub makespan: Time,
}

impl SolveResult {
    pub fn new(path: Vec<usize>, schedule: Schedule) -> Self {
        let mut job_set = path.clone();
        job_set.sort_unstable();
        let makespan = schedule.makespan;
        SolveResult {
            path,
            job_set,
            schedule,
            makespan,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    UnknownJob {
        job: usize,
    },
    UnknownOp {
        job: usize,
        op: usize,
    },
    DuplicateOp {
        job: usize,
        op: usize,
    },
    MissingOp {
        job: usize,
        op: usize,
    },
    OpMismatch {
        job: usize,
        op: usize,
    },
    MachineOverlap {
        machine: usize,
        first: Assignment,
        second: Assignment,
    },
    JobOverlap {
        job: usize,
        first: Assignment,
        second: Assignment,
    },
    OpOrder {
        job: usize,
        op: usize,
    },
    MakespanMismatch {
        reported: Time,
        actual: Time,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownJob { job } => write!(f, "job {job} is not in the job set"),
            Violation::UnknownOp { job, op } => write!(f, "job {job} has no operation {op}"),
            Violation::DuplicateOp { job, op } => write!(f, "job {job} op {op} scheduled twice"),
            Violation::MissingOp { job, op } => write!(f, "job {job} op {op} not scheduled"),
            Violation::OpMismatch { job, op } => {
                write!(f, "job {job} op {op} has wrong machine or duration")
            }
            Violation::MachineOverlap {
                machine,
                first,
                second,
            } => write!(
                f,
                "machine overlap on M{machine}: job {} op {} [{}, {}) vs job {} op {} [{}, {})",
                first.job,
                first.op,
                first.start,
                first.end(),
                second.job,
                second.op,
                second.start,
                second.end()
            ),
            Violation::JobOverlap { job, first, second } => write!(
                f,
                "job overlap for job {job}: op {} [{}, {}) vs op {} [{}, {})",
                first.op,
                first.start,
                first.end(),
                second.op,
                second.start,
                second.end()
            ),
            Violation::OpOrder { job, op } => {
                write!(
                    f,
                    "op order: job {job} op {op} starts before its predecessor ends"
                )
            }
            Violation::MakespanMismatch { reported, actual } => {
                write!(f, "makespan {reported} reported, {actual} actual")
            }
        }
    }
}

/// Checks `schedule` against the shop semantics for the jobs in `job_set`.
/// Returns every violation found; an empty list means the schedule is
/// feasible.
pub fn validate_schedule(
    instance: &Instance,
    job_set: &[usize],
    schedule: &Schedule,
) -> std::result::Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    let members: BTreeSet<usize> = job_set.iter().copied().collect();
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut by_job: Vec<Vec<Assignment>> = vec![Vec::new(); instance.jobs().len()];
    let mut by_machine: Vec<Vec<Assignment>> = vec![Vec::new(); instance.machines()];

    for a in &schedule.assignments {
        if !members.contains(&a.job) || a.job >= instance.jobs().len() {
            violations.push(Violation::UnknownJob { job: a.job });
            continue;
        }
        let job = instance.job(a.job);
        let Some(op) = job.ops.get(a.op) else {
            violations.push(Violation::UnknownOp {
                job: a.job,
                op: a.op,
            });
            continue;
        };
        if op.machine != a.machine || op.duration != a.duration {
            violations.push(Violation::OpMismatch {
                job: a.job,
                op: a.op,
            });
            continue;
        }
        if !seen.insert((a.job, a.op)) {
            violations.push(Violation::DuplicateOp {
                job: a.job,
                op: a.op,
            });
            continue;
        }
        by_job[a.job].push(*a);
        by_machine[a.machine].push(*a);
    }

    for &j in &members {
        if j >= instance.jobs().len() {
            continue;
        }
        for op in 0..instance.job(j).ops.len() {
            if !seen.contains(&(j, op)) {
                violations.push(Violation::MissingOp { job: j, op });
            }
        }
    }

    for (machine, list) in by_machine.iter_mut().enumerate() {
        list.sort_by_key(|a| (a.start, a.job, a.op));
        for (x, first) in list.iter().enumerate() {
            for second in &list[x + 1..] {
                if first.overlaps(second) {
                    violations.push(Violation::MachineOverlap {
                        machine,
                        first: *first,
                        second: *second,
                    });
                }
            }
        }
    }

    for (job, list) in by_job.iter_mut().enumerate() {
        if instance.shop() == ShopKind::Job {
            list.sort_by_key(|a| a.op);
            for pair in list.windows(2) {
                if pair[1].op == pair[0].op + 1 && pair[1].start < pair[0].end() {
                    violations.push(Violation::OpOrder {
                        job,
                        op: pair[1].op,
                    });
                }
            }
        }
        list.sort_by_key(|a| (a.start, a.op));
        for (x, first) in list.iter().enumerate() {
            for second in &list[x + 1..] {
                if first.overlaps(second) {
                    violations.push(Violation::JobOverlap {
                        job,
                        first: *first,
                        second: *second,
                    });
                }
            }
        }
    }

    let actual = schedule
        .assignments
        .iter()
        .map(Assignment::end)
        .max()
        .unwrap_or(0);
    if actual != schedule.makespan {
        violations.push(Violation::MakespanMismatch {
            reported: schedule.makespan,
            actual,
        });
    }

    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// Machine loads Σ_{j∈set} μ_ij p_ij.
pub fn machine_loads(instance: &Instance, job_set: &[usize]) -> Vec<Time> {
    let mut loads = vec![0; instance.machines()];
    for &j in job_set {
        for op in &instance.job(j).ops {
            loads[op.machine] += op.duration;
        }
    }
    loads
}

/// max(max machine load, max job length); no feasible schedule is shorter.
pub fn lower_bound(instance: &Instance, job_set: &[usize]) -> Time {
    let load = machine_loads(instance, job_set)
        .into_iter()
        .max()
        .unwrap_or(0);
    let longest = job_set
        .iter()
        .map(|&j| instance.job(j).total())
        .max()
        .unwrap_or(0);
    load.max(longest)
}

/// Total processing time; every dense schedule finishes by then.
pub fn upper_bound(instance: &Instance, job_set: &[usize]) -> Time {
    job_set.iter().map(|&j| instance.job(j).total()).sum()
}

/// Same bounds for a loose job list.
pub fn job_bounds(jobs: &[Job], machines: usize) -> (Time, Time) {
    let mut loads = vec![0; machines];
    let mut longest = 0;
    let mut total = 0;
    for job in jobs {
        for op in &job.ops {
            loads[op.machine] += op.duration;
        }
        longest = longest.max(job.total());
        total += job.total();
    }
    let lower = loads.into_iter().max().unwrap_or(0).max(longest);
    (lower, total)
}
