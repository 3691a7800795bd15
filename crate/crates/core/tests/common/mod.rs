#![allow(dead_code)]

use shopsp_core::model::{Graph, Instance, Job, ShopKind, Time};

/// All permutations of `items`.
pub fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x.clone());
            out.push(p);
        }
    }
    out
}

/// Cartesian product of option lists.
fn product<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for list in lists {
        let mut next = Vec::new();
        for prefix in &out {
            for x in list {
                let mut p = prefix.clone();
                p.push(x.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Longest path over nodes with weights `dur` and arcs `edges`, or `None`
/// on a cycle.
fn longest(dur: &[Time], edges: &[(usize, usize)]) -> Option<Time> {
    let n = dur.len();
    let mut indeg = vec![0; n];
    let mut succ = vec![Vec::new(); n];
    for &(a, b) in edges {
        succ[a].push(b);
        indeg[b] += 1;
    }
    let mut start = vec![0; n];
    let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut done = 0;
    let mut best = 0;
    while let Some(v) = queue.pop() {
        done += 1;
        let end = start[v] + dur[v];
        best = best.max(end);
        for &w in &succ[v] {
            start[w] = start[w].max(end);
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push(w);
            }
        }
    }
    (done == n).then_some(best)
}

fn chain_edges(seq: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    seq.windows(2).map(|w| (w[0], w[1]))
}

/// Optimal makespan by trying every machine sequence (and, for open shops,
/// every per-job operation order). Zero-length operations are dropped.
pub fn brute_makespan(jobs: &[Job], machines: usize, shop: ShopKind) -> Time {
    let mut dur = Vec::new();
    let mut by_job: Vec<Vec<usize>> = vec![Vec::new(); jobs.len()];
    let mut by_machine: Vec<Vec<usize>> = vec![Vec::new(); machines];
    for (j, job) in jobs.iter().enumerate() {
        for op in &job.ops {
            if op.duration > 0 {
                by_job[j].push(dur.len());
                by_machine[op.machine].push(dur.len());
                dur.push(op.duration);
            }
        }
    }
    let machine_choices: Vec<Vec<Vec<usize>>> =
        by_machine.iter().map(|ops| permutations(ops)).collect();
    let job_choices: Vec<Vec<Vec<usize>>> = by_job
        .iter()
        .map(|ops| match shop {
            ShopKind::Open => permutations(ops),
            ShopKind::Job => vec![ops.clone()],
        })
        .collect();
    let mut best = Time::MAX;
    for ms in product(&machine_choices) {
        for js in product(&job_choices) {
            let edges: Vec<(usize, usize)> = ms
                .iter()
                .chain(js.iter())
                .flat_map(|s| chain_edges(s))
                .collect();
            if let Some(c) = longest(&dur, &edges) {
                best = best.min(c);
            }
        }
    }
    if dur.is_empty() { 0 } else { best }
}

/// Simple s–t paths by recursive search; does not use the library.
pub fn simple_paths(graph: &Graph) -> Vec<Vec<usize>> {
    fn go(
        g: &Graph,
        v: usize,
        seen: &mut Vec<bool>,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if v == g.sink() {
            out.push(path.clone());
            return;
        }
        for a in g.arcs() {
            if a.tail == v && !seen[a.head] {
                seen[a.head] = true;
                path.push(a.id);
                go(g, a.head, seen, path, out);
                path.pop();
                seen[a.head] = false;
            }
        }
    }
    let mut seen = vec![false; graph.vertex_count()];
    seen[graph.source()] = true;
    let mut out = Vec::new();
    go(graph, graph.source(), &mut seen, &mut Vec::new(), &mut out);
    out
}

/// max(max_j (p1j + p2j), Σ p1j, Σ p2j).
pub fn o2_formula(jobs: &[Job]) -> Time {
    let a: Time = jobs.iter().map(|j| j.load_on(0)).sum();
    let b: Time = jobs.iter().map(|j| j.load_on(1)).sum();
    let c = jobs.iter().map(|j| j.total()).max().unwrap_or(0);
    a.max(b).max(c)
}

/// Combination optimum over independently enumerated paths.
pub fn brute_optimum(instance: &Instance) -> Time {
    simple_paths(instance.graph())
        .iter()
        .map(|p| brute_makespan(&instance.jobs_of(p), instance.machines(), instance.shop()))
        .min()
        .expect("instance has a path")
}

/// Small xorshift generator so the oracles do not share the library's RNG.
pub struct Xs(pub u64);

impl Xs {
    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

pub fn random_open_jobs(rng: &mut Xs, n: usize, m: usize, max: Time) -> Vec<Job> {
    (0..n)
        .map(|id| {
            let p: Vec<Time> = (0..m).map(|_| rng.below(max + 1)).collect();
            Job::open(id, &p)
        })
        .collect()
}

/// J2 jobs with one or two operations on distinct machines.
pub fn random_j2_jobs(rng: &mut Xs, n: usize, max: Time) -> Vec<Job> {
    (0..n)
        .map(|id| {
            let first = rng.below(2) as usize;
            let mut chain = vec![(first, 1 + rng.below(max))];
            if rng.below(3) > 0 {
                chain.push((1 - first, 1 + rng.below(max)));
            }
            Job::chain(id, &chain)
        })
        .collect()
}
