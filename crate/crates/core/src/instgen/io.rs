use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    Assignment, Graph, Instance, Job, Operation, Schedule, ShopKind, SolveResult, Time,
};

/// On-disk instance document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub shop: ShopKind,
    pub m: usize,
    pub vertices: usize,
    pub s: usize,
    pub t: usize,
    pub arcs: Vec<ArcDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcDoc {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
    /// `[machine, duration]` pairs.
    pub ops: Vec<(usize, Time)>,
}

/// On-disk schedule document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDoc {
    pub path: Vec<usize>,
    pub makespan: Time,
    /// `[job, op, machine, start, duration]` rows.
    pub assignments: Vec<(usize, usize, usize, Time, Time)>,
}

fn field_err(field: String, msg: impl std::fmt::Display) -> Error {
    Error::Format(format!("{field}: {msg}"))
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Format(format!("line {} column {}: {e}", e.line(), e.column()))
}

impl InstanceDoc {
    pub fn from_instance(instance: &Instance) -> Self {
        let graph = instance.graph();
        let arcs = graph
            .arcs()
            .iter()
            .map(|a| {
                let job = instance.job(a.id);
                let ops = job
                    .ops
                    .iter()
                    .filter(|o| instance.shop() == ShopKind::Job || o.duration > 0)
                    .map(|o| (o.machine, o.duration))
                    .collect();
                ArcDoc {
                    id: a.id,
                    tail: a.tail,
                    head: a.head,
                    ops,
                }
            })
            .collect();
        InstanceDoc {
            shop: instance.shop(),
            m: instance.machines(),
            vertices: graph.vertex_count(),
            s: graph.source(),
            t: graph.sink(),
            arcs,
        }
    }

    pub fn into_instance(self) -> Result<Instance> {
        if self.m == 0 {
            return Err(field_err("m".into(), "must be at least 1"));
        }
        for (name, v) in [("s", self.s), ("t", self.t)] {
            if v >= self.vertices {
                return Err(field_err(
                    name.into(),
                    format!("vertex {v} out of range for {} vertices", self.vertices),
                ));
            }
        }
        if self.s == self.t {
            return Err(field_err("t".into(), "sink equals source"));
        }
        let mut slots: Vec<Option<((usize, usize), Job)>> = vec![None; self.arcs.len()];
        for (i, arc) in self.arcs.into_iter().enumerate() {
            let at = |f: &str| format!("arcs[{i}].{f}");
            if arc.id >= slots.len() {
                return Err(field_err(
                    at("id"),
                    format!("ids must be 0..{}", slots.len()),
                ));
            }
            if slots[arc.id].is_some() {
                return Err(field_err(at("id"), format!("duplicate id {}", arc.id)));
            }
            for (name, v) in [("tail", arc.tail), ("head", arc.head)] {
                if v >= self.vertices {
                    return Err(field_err(at(name), format!("vertex {v} out of range")));
                }
            }
            if arc.tail == arc.head {
                return Err(field_err(at("head"), "self-loop"));
            }
            for (k, &(machine, _)) in arc.ops.iter().enumerate() {
                if machine >= self.m {
                    return Err(field_err(
                        format!("arcs[{i}].ops[{k}].machine"),
                        format!("machine {machine} >= m = {}", self.m),
                    ));
                }
            }
            let job = match self.shop {
                ShopKind::Open => {
                    let mut p: Vec<Option<Time>> = vec![None; self.m];
                    for (k, &(machine, d)) in arc.ops.iter().enumerate() {
                        if p[machine].replace(d).is_some() {
                            return Err(field_err(
                                format!("arcs[{i}].ops[{k}].machine"),
                                format!("machine {machine} listed twice in an open-shop job"),
                            ));
                        }
                    }
                    let p: Vec<Time> = p.into_iter().map(|d| d.unwrap_or(0)).collect();
                    Job::open(arc.id, &p)
                }
                ShopKind::Job => {
                    if arc.ops.is_empty() {
                        return Err(field_err(at("ops"), "job-shop job needs an operation"));
                    }
                    Job::new(
                        arc.id,
                        arc.ops
                            .iter()
                            .map(|&(machine, duration)| Operation { machine, duration })
                            .collect(),
                    )
                }
            };
            slots[arc.id] = Some(((arc.tail, arc.head), job));
        }
        let (ends, jobs): (Vec<_>, Vec<_>) =
            slots.into_iter().map(|s| s.expect("ids checked")).unzip();
        let graph = Graph::new(self.vertices, &ends, self.s, self.t)?;
        Instance::new(self.shop, self.m, graph, jobs)
    }
}

impl ResultDoc {
    pub fn from_result(result: &SolveResult) -> Self {
        ResultDoc {
            path: result.path.clone(),
            makespan: result.makespan,
            assignments: result
                .schedule
                .assignments
                .iter()
                .map(|a| (a.job, a.op, a.machine, a.start, a.duration))
                .collect(),
        }
    }

    /// The declared makespan is kept as is so validation can check it.
    pub fn into_result(self) -> SolveResult {
        let assignments = self
            .assignments
            .into_iter()
            .map(|(job, op, machine, start, duration)| Assignment {
                job,
                op,
                machine,
                start,
                duration,
            })
            .collect();
        SolveResult::new(
            self.path,
            Schedule {
                assignments,
                makespan: self.makespan,
            },
        )
    }
}

pub fn read_instance(bytes: &[u8]) -> Result<Instance> {
    let doc: InstanceDoc = serde_json::from_slice(bytes).map_err(parse_err)?;
    doc.into_instance()
}

pub fn write_instance(instance: &Instance) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(&InstanceDoc::from_instance(instance))
        .expect("instance documents always serialize");
    out.push(b'\n');
    out
}

pub fn read_result(bytes: &[u8]) -> Result<SolveResult> {
    let doc: ResultDoc = serde_json::from_slice(bytes).map_err(parse_err)?;
    Ok(doc.into_result())
}

pub fn write_result(result: &SolveResult) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(&ResultDoc::from_result(result))
        .expect("result documents always serialize");
    out.push(b'\n');
    out
}
