use crate::error::{Error, Result};
use crate::model::{Instance, ShopKind, SolveResult};
use crate::path::shortest_path;
use crate::shop::SchedulerKind;

/// Dense scheduler used by SD for the instance's shop.
pub fn sd_scheduler(instance: &Instance) -> SchedulerKind {
    match (instance.shop(), instance.machines()) {
        (ShopKind::Open, 2) => SchedulerKind::GsO2,
        (ShopKind::Open, _) => SchedulerKind::DenseOpen,
        (ShopKind::Job, _) => SchedulerKind::DenseJob,
    }
}

/// Shortest path on total job length, then a dense schedule of its jobs.
/// At most m times the optimum.
pub fn solve_sd(instance: &Instance) -> Result<SolveResult> {
    let weights: Vec<u64> = instance.jobs().iter().map(|j| j.total()).collect();
    let path = shortest_path(instance.graph(), &weights)?.ok_or(Error::Infeasible)?;
    let jobs = instance.jobs_of(&path.arcs);
    let schedule = sd_scheduler(instance).run(&jobs, instance.machines())?;
    Ok(SolveResult::new(path.arcs, schedule))
}
