//! Exhaustive exact solver for small instances: every simple s–t path,
//! each job set scheduled optimally.

use crate::error::{Error, Result};
use crate::model::{Graph, Instance, SolveResult, lower_bound};
use crate::shop::{ExactLimits, schedule_exact_small};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_paths: usize,
    pub exact: ExactLimits,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_paths: 10_000,
            exact: ExactLimits::default(),
        }
    }
}

/// All simple s–t paths as arc-id sequences, in DFS order over ascending
/// arc ids (which is lexicographic order). Fails once more than `limit`
/// paths exist.
pub fn enumerate_simple_paths(graph: &Graph, limit: usize) -> Result<Vec<Vec<usize>>> {
    if limit == 0 {
        return Err(Error::InvalidInput("path limit must be at least 1".into()));
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; graph.vertex_count()];
    on_path[graph.source()] = true;
    let mut stack = Vec::new();
    dfs(
        graph,
        graph.source(),
        &mut on_path,
        &mut stack,
        &mut out,
        limit,
    )?;
    Ok(out)
}

fn dfs(
    graph: &Graph,
    v: usize,
    on_path: &mut [bool],
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) -> Result<()> {
    if v == graph.sink() {
        if out.len() == limit {
            return Err(Error::TooLarge {
                what: "simple path count",
                count: limit as u128 + 1,
                limit: limit as u128,
            });
        }
        out.push(stack.clone());
        return Ok(());
    }
    for &a in graph.out_arcs(v) {
        let head = graph.arc(a).head;
        if on_path[head] {
            continue;
        }
        on_path[head] = true;
        stack.push(a);
        dfs(graph, head, on_path, stack, out, limit)?;
        stack.pop();
        on_path[head] = false;
    }
    Ok(())
}

/// Global optimum over all simple paths. Ties go to the lexicographically
/// smallest path. Paths whose trivial lower bound cannot beat the incumbent
/// are skipped without scheduling.
pub fn solve_exact(instance: &Instance, limits: OracleLimits) -> Result<SolveResult> {
    let paths = enumerate_simple_paths(instance.graph(), limits.max_paths)?;
    let mut best: Option<SolveResult> = None;
    for path in paths {
        if best
            .as_ref()
            .is_some_and(|b| lower_bound(instance, &path) >= b.makespan)
        {
            continue;
        }
        let jobs = instance.jobs_of(&path);
        let schedule =
            schedule_exact_small(&jobs, instance.machines(), instance.shop(), limits.exact)?;
        if best.as_ref().is_none_or(|b| schedule.makespan < b.makespan) {
            best = Some(SolveResult::new(path, schedule));
        }
    }
    best.ok_or(Error::Infeasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Job, ShopKind};

    #[test]
    fn path_counts() {
        let g = Graph::new(2, &[(0, 1), (0, 1)], 0, 1).unwrap();
        assert_eq!(enumerate_simple_paths(&g, 10).unwrap().len(), 2);
        let g = Graph::new(4, &[(0, 1), (0, 2), (1, 3), (2, 3)], 0, 3).unwrap();
        assert_eq!(
            enumerate_simple_paths(&g, 10).unwrap(),
            vec![vec![0, 2], vec![1, 3]]
        );
        assert!(matches!(
            enumerate_simple_paths(&g, 1),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn two_parallel_jobs() {
        let g = Graph::new(2, &[(0, 1), (0, 1)], 0, 1).unwrap();
        let jobs = vec![Job::open(0, &[5, 0]), Job::open(1, &[3, 3])];
        let inst = Instance::new(ShopKind::Open, 2, g, jobs).unwrap();
        let r = solve_exact(&inst, OracleLimits::default()).unwrap();
        assert_eq!(r.makespan, 5);
        assert_eq!(r.path, vec![0]);
    }

    #[test]
    fn unreachable_sink() {
        let g = Graph::new(3, &[(0, 1)], 0, 2).unwrap();
        let inst = Instance::new(ShopKind::Open, 1, g, vec![Job::open(0, &[1])]).unwrap();
        assert_eq!(
            solve_exact(&inst, OracleLimits::default()),
            Err(Error::Infeasible)
        );
    }
}
