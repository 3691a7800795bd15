use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Graph, Instance, Job, ShopKind};

/// 3-dimensional matching instance over A, B, C = {0..n}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeDmInstance {
    n: usize,
    triples: Vec<[usize; 3]>,
}

impl ThreeDmInstance {
    pub fn new(n: usize, triples: Vec<[usize; 3]>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("3DM needs n >= 1".into()));
        }
        if triples.len() < n {
            return Err(Error::InvalidInput(format!(
                "{} triples for n = {n}; at least n are required",
                triples.len()
            )));
        }
        if let Some(t) = triples.iter().find(|t| t.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidInput(format!(
                "triple {t:?} has an index >= {n}"
            )));
        }
        Ok(ThreeDmInstance { n, triples })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }
}

/// Open-shop instance whose optimum is 1 iff `tdm` has a perfect matching.
///
/// Machines: a_i → i, b_i → n+i, c_i → 2n+i, plus m_t−n dummy machines
/// 3n..2n+m_t. Vertices: block k has v_{k,a}=3k, v_{k,b}=3k+1,
/// v_{k,c}=3k+2, and the sink is 3m_t. Block k contributes the arcs
/// J^a_k, J^b_k, J^c_k in that order, then m_t−n parallel dummy arcs
/// v_{k,a} → v_{k+1,a}. Every job has one unit operation.
pub fn generate_from_3dm(tdm: &ThreeDmInstance) -> Instance {
    let n = tdm.n;
    let mt = tdm.triples.len();
    let machines = 2 * n + mt;
    let mut arcs = Vec::new();
    let mut unit_machine = Vec::new();
    for (k, t) in tdm.triples.iter().enumerate() {
        let (va, vb, vc, next) = (3 * k, 3 * k + 1, 3 * k + 2, 3 * k + 3);
        arcs.push((va, vb));
        unit_machine.push(t[0]);
        arcs.push((vb, vc));
        unit_machine.push(n + t[1]);
        arcs.push((vc, next));
        unit_machine.push(2 * n + t[2]);
        for d in 0..mt - n {
            arcs.push((va, next));
            unit_machine.push(3 * n + d);
        }
    }
    let graph = Graph::new(3 * mt + 1, &arcs, 0, 3 * mt).expect("gadget graph is well formed");
    let jobs = unit_machine
        .iter()
        .enumerate()
        .map(|(id, &i)| {
            let mut p = vec![0; machines];
            p[i] = 1;
            Job::open(id, &p)
        })
        .collect();
    Instance::new(ShopKind::Open, machines, graph, jobs).expect("gadget instance is well formed")
}

/// Exhaustive search over subfamilies of size n.
pub fn has_perfect_matching(tdm: &ThreeDmInstance) -> bool {
    fn go(tdm: &ThreeDmInstance, from: usize, left: usize, used: &mut [Vec<bool>; 3]) -> bool {
        if left == 0 {
            return true;
        }
        for k in from..tdm.triples.len() {
            let t = tdm.triples[k];
            if (0..3).any(|d| used[d][t[d]]) {
                continue;
            }
            for d in 0..3 {
                used[d][t[d]] = true;
            }
            let ok = go(tdm, k + 1, left - 1, used);
            for d in 0..3 {
                used[d][t[d]] = false;
            }
            if ok {
                return true;
            }
        }
        false
    }
    let mut used = [vec![false; tdm.n], vec![false; tdm.n], vec![false; tdm.n]];
    go(tdm, 0, tdm.n, &mut used)
}
