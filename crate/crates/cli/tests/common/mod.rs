#![allow(dead_code)]

use shopsp_core::Schedule;
use shopsp_core::model::{Graph, Instance, Job, ShopKind, Time, validate_schedule};
use shopsp_core::path::WeightVectorMap;

/// Small xorshift generator, independent of the library's RNG.
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

    pub fn range(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }
}

/// max(max_j (p1j + p2j), Σ p1j, Σ p2j).
pub fn o2_formula(jobs: &[Job]) -> Time {
    let a: Time = jobs.iter().map(|j| j.load_on(0)).sum();
    let b: Time = jobs.iter().map(|j| j.load_on(1)).sum();
    let c = jobs.iter().map(|j| j.total()).max().unwrap_or(0);
    a.max(b).max(c)
}

/// Simple s–t paths by recursive search.
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

/// Best max-criterion value over simple paths containing `required`.
pub fn brute_minmax(graph: &Graph, wm: &WeightVectorMap, required: &[usize]) -> Option<u64> {
    simple_paths(graph)
        .iter()
        .filter(|p| required.iter().all(|r| p.contains(r)))
        .map(|p| *wm.path_sums(p).unwrap().iter().max().unwrap())
        .min()
}

/// Validates a schedule of a bare job set by chaining the jobs into a path.
pub fn validate_jobs(
    jobs: &[Job],
    m: usize,
    shop: ShopKind,
    schedule: &Schedule,
) -> Result<(), String> {
    let ends: Vec<(usize, usize)> = (0..jobs.len()).map(|i| (i, i + 1)).collect();
    let graph = Graph::new(jobs.len() + 1, &ends, 0, jobs.len()).map_err(|e| e.to_string())?;
    let inst = Instance::new(shop, m, graph, jobs.to_vec()).map_err(|e| e.to_string())?;
    let ids: Vec<usize> = (0..jobs.len()).collect();
    validate_schedule(&inst, &ids, schedule).map_err(|vs| {
        vs.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    })
}

pub fn random_o2_jobs(rng: &mut Xs, n: usize, max: Time) -> Vec<Job> {
    (0..n)
        .map(|id| Job::open(id, &[rng.below(max + 1), rng.below(max + 1)]))
        .collect()
}

/// J2 jobs with one or two operations on distinct machines.
pub fn random_j2_jobs(rng: &mut Xs, n: usize, max: Time) -> Vec<Job> {
    (0..n)
        .map(|id| {
            let first = rng.below(2) as usize;
            let mut chain = vec![(first, rng.range(1, max))];
            if rng.below(3) > 0 {
                chain.push((1 - first, rng.range(1, max)));
            }
            Job::chain(id, &chain)
        })
        .collect()
}
