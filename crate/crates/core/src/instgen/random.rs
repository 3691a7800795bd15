use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Graph, Instance, Job, ShopKind, Time};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    /// Arcs only go from lower to higher vertex ids; the graph is acyclic.
    #[default]
    Layered,
    /// Arcs between arbitrary distinct vertices.
    Uniform,
}

/// Parameters of [`generate_random`]. Vertex 0 is the source and the last
/// vertex the sink.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomParams {
    pub shop: ShopKind,
    pub machines: usize,
    pub vertices: usize,
    pub arcs: usize,
    #[serde(default)]
    pub min_duration: Time,
    #[serde(default = "default_max_duration")]
    pub max_duration: Time,
    #[serde(default)]
    pub topology: Topology,
    /// Arc count of the embedded s–t path; drawn at random when absent.
    #[serde(default)]
    pub backbone: Option<usize>,
    /// Job shop: operations per job are drawn from 1..=max_ops.
    #[serde(default = "default_max_ops")]
    pub max_ops: usize,
    /// Job shop: whether a chain may revisit a machine.
    #[serde(default)]
    pub allow_repeats: bool,
    pub seed: u64,
}

fn default_max_duration() -> Time {
    9
}

fn default_max_ops() -> usize {
    2
}

impl RandomParams {
    pub fn new(shop: ShopKind, machines: usize, vertices: usize, arcs: usize, seed: u64) -> Self {
        RandomParams {
            shop,
            machines,
            vertices,
            arcs,
            min_duration: 0,
            max_duration: default_max_duration(),
            topology: Topology::Layered,
            backbone: None,
            max_ops: default_max_ops(),
            allow_repeats: false,
            seed,
        }
    }

    fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidInput(m));
        if self.vertices < 2 {
            return bad("at least two vertices are required".into());
        }
        if self.arcs == 0 {
            return bad("at least one arc is required".into());
        }
        if self.machines == 0 {
            return bad("at least one machine is required".into());
        }
        if self.min_duration > self.max_duration {
            return bad(format!(
                "min_duration {} > max_duration {}",
                self.min_duration, self.max_duration
            ));
        }
        if let Some(b) = self.backbone
            && (b == 0 || b > self.arcs || b > self.vertices - 1)
        {
            return bad(format!(
                "backbone length {b} must be in 1..=min(arcs, vertices - 1)"
            ));
        }
        if self.shop == ShopKind::Job {
            if self.max_ops == 0 {
                return bad("max_ops must be at least 1".into());
            }
            if !self.allow_repeats && self.max_ops > self.machines {
                return bad(format!(
                    "max_ops {} exceeds {} machines without repeats",
                    self.max_ops, self.machines
                ));
            }
        }
        Ok(())
    }
}

/// Reproducible random instance with an embedded s–t path.
pub fn generate_random(params: &RandomParams) -> Result<Instance> {
    params.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let v = params.vertices;
    let (s, t) = (0, v - 1);

    let hops = match params.backbone {
        Some(b) => b,
        None => rng.random_range(1..=params.arcs.min(v - 1)),
    };
    let mut inner: Vec<usize> = (1..t).collect();
    inner.shuffle(&mut rng);
    inner.truncate(hops - 1);
    if params.topology == Topology::Layered {
        inner.sort_unstable();
    }
    let mut stops = vec![s];
    stops.extend(inner);
    stops.push(t);
    let mut ends: Vec<(usize, usize)> = stops.windows(2).map(|w| (w[0], w[1])).collect();

    while ends.len() < params.arcs {
        let a = rng.random_range(0..v);
        let b = rng.random_range(0..v);
        let ok = match params.topology {
            Topology::Layered => a < b,
            Topology::Uniform => a != b,
        };
        if ok {
            ends.push((a, b));
        }
    }
    ends.shuffle(&mut rng);

    let m = params.machines;
    let duration =
        |rng: &mut ChaCha8Rng| rng.random_range(params.min_duration..=params.max_duration);
    let jobs = (0..ends.len())
        .map(|id| match params.shop {
            ShopKind::Open => {
                let p: Vec<Time> = (0..m).map(|_| duration(&mut rng)).collect();
                Job::open(id, &p)
            }
            ShopKind::Job => {
                let len = rng.random_range(1..=params.max_ops);
                let machines: Vec<usize> = if params.allow_repeats {
                    (0..len).map(|_| rng.random_range(0..m)).collect()
                } else {
                    let mut all: Vec<usize> = (0..m).collect();
                    all.shuffle(&mut rng);
                    all.truncate(len);
                    all
                };
                let chain: Vec<(usize, Time)> = machines
                    .into_iter()
                    .map(|i| (i, duration(&mut rng)))
                    .collect();
                Job::chain(id, &chain)
            }
        })
        .collect();
    let graph = Graph::new(v, &ends, s, t)?;
    Instance::new(params.shop, m, graph, jobs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::enumerate_simple_paths;

    #[test]
    fn deterministic() {
        let p = RandomParams::new(ShopKind::Job, 2, 6, 10, 42);
        assert_eq!(generate_random(&p).unwrap(), generate_random(&p).unwrap());
        let q = RandomParams {
            seed: 43,
            ..p.clone()
        };
        assert_ne!(generate_random(&p).unwrap(), generate_random(&q).unwrap());
    }

    #[test]
    fn backbone_only() {
        let p = RandomParams {
            backbone: Some(3),
            ..RandomParams::new(ShopKind::Open, 2, 4, 3, 7)
        };
        let inst = generate_random(&p).unwrap();
        assert_eq!(enumerate_simple_paths(inst.graph(), 100).unwrap().len(), 1);
    }

    #[test]
    fn bulk_instances_have_paths() {
        for seed in 0..200 {
            for topology in [Topology::Layered, Topology::Uniform] {
                let p = RandomParams {
                    topology,
                    ..RandomParams::new(ShopKind::Open, 2, 7, 14, seed)
                };
                let inst = generate_random(&p).unwrap();
                assert_eq!(inst.jobs().len(), 14);
                assert!(
                    !enumerate_simple_paths(inst.graph(), 10_000)
                        .unwrap()
                        .is_empty()
                );
            }
        }
    }

    #[test]
    fn inconsistent_params() {
        let p = RandomParams::new(ShopKind::Open, 2, 4, 0, 0);
        assert!(generate_random(&p).is_err());
        let p = RandomParams {
            max_ops: 3,
            ..RandomParams::new(ShopKind::Job, 2, 4, 5, 0)
        };
        assert!(generate_random(&p).is_err());
        let p = RandomParams {
            backbone: Some(5),
            ..RandomParams::new(ShopKind::Open, 2, 4, 5, 0)
        };
        assert!(generate_random(&p).is_err());
    }
}
