//! Shortest-path engines.
//!
//! [`shortest_path`] is Dijkstra on one scalar weight. [`minmax_path_exact`]
//! is a hop-layered label DP over `(K + N)`-dimensional vectors: K weight
//! sums plus one flag per required arc. [`minmax_path_fptas`] runs the same
//! DP on scaled-and-rounded weights.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::model::Graph;
use crate::rational::Ratio;

/// K nonnegative weights per arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVectorMap {
    k: usize,
    weights: Vec<u64>,
}

impl WeightVectorMap {
    pub fn new(k: usize, per_arc: Vec<Vec<u64>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput(
                "weight count K must be at least 1".into(),
            ));
        }
        let mut weights = Vec::with_capacity(k * per_arc.len());
        for (arc, w) in per_arc.iter().enumerate() {
            if w.len() != k {
                return Err(Error::InvalidInput(format!(
                    "arc {arc} has {} weights, expected {k}",
                    w.len()
                )));
            }
            weights.extend_from_slice(w);
        }
        Ok(WeightVectorMap { k, weights })
    }

    pub fn zeros(k: usize, arcs: usize) -> Self {
        WeightVectorMap {
            k: k.max(1),
            weights: vec![0; k.max(1) * arcs],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn arc_count(&self) -> usize {
        self.weights.len() / self.k
    }

    pub fn get(&self, arc: usize) -> &[u64] {
        &self.weights[arc * self.k..(arc + 1) * self.k]
    }

    pub fn set(&mut self, arc: usize, w: &[u64]) {
        assert_eq!(w.len(), self.k, "weight vector length");
        self.weights[arc * self.k..(arc + 1) * self.k].copy_from_slice(w);
    }

    pub fn set_all(&mut self, arc: usize, value: u64) {
        self.weights[arc * self.k..(arc + 1) * self.k].fill(value);
    }

    /// Per-criterion sums along `path`.
    pub fn path_sums(&self, path: &[usize]) -> Result<Vec<u64>> {
        let mut sums = vec![0u64; self.k];
        for &a in path {
            for (s, &w) in sums.iter_mut().zip(self.get(a)) {
                *s = s.checked_add(w).ok_or(Error::Overflow("path weight"))?;
            }
        }
        Ok(sums)
    }

    /// W = max_k Σ_j w^k_j.
    pub fn total_bound(&self) -> Result<u64> {
        let mut totals = vec![0u64; self.k];
        for chunk in self.weights.chunks(self.k) {
            for (t, &w) in totals.iter_mut().zip(chunk) {
                *t = t.checked_add(w).ok_or(Error::Overflow("weight total"))?;
            }
        }
        Ok(totals.into_iter().max().unwrap_or(0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortestPath {
    pub arcs: Vec<usize>,
    pub length: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinMaxPath {
    pub arcs: Vec<usize>,
    /// Per-criterion sums under the original (unscaled) weights.
    pub sums: Vec<u64>,
    /// max of `sums`.
    pub value: u64,
}

impl MinMaxPath {
    fn from_arcs(weights: &WeightVectorMap, arcs: Vec<usize>) -> Result<Self> {
        let sums = weights.path_sums(&arcs)?;
        let value = sums.iter().copied().max().unwrap_or(0);
        Ok(MinMaxPath { arcs, sums, value })
    }
}

/// Dijkstra from s to t on scalar arc weights.
///
/// Among minimum-weight paths the one with the fewest arcs is chosen, and
/// among those the lexicographically smallest arc-id sequence. Returns
/// `Ok(None)` when t is unreachable.
pub fn shortest_path(graph: &Graph, weights: &[u64]) -> Result<Option<ShortestPath>> {
    if weights.len() != graph.arc_count() {
        return Err(Error::InvalidInput(format!(
            "{} weights for {} arcs",
            weights.len(),
            graph.arc_count()
        )));
    }
    // Distances *to* the sink keyed by (weight, hops); tight arcs then form a
    // DAG and a greedy smallest-id walk from s is lexicographically minimal.
    let n = graph.vertex_count();
    let mut dist: Vec<Option<(u64, usize)>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    dist[graph.sink()] = Some((0, 0));
    heap.push(Reverse((0u64, 0usize, graph.sink())));
    while let Some(Reverse((d, h, v))) = heap.pop() {
        if dist[v] != Some((d, h)) {
            continue;
        }
        for &a in graph.in_arcs(v) {
            let u = graph.arc(a).tail;
            let cand = (
                d.checked_add(weights[a])
                    .ok_or(Error::Overflow("path length"))?,
                h + 1,
            );
            if dist[u].is_none_or(|cur| cand < cur) {
                dist[u] = Some(cand);
                heap.push(Reverse((cand.0, cand.1, u)));
            }
        }
    }

    let Some((length, _)) = dist[graph.source()] else {
        return Ok(None);
    };
    let mut arcs = Vec::new();
    let mut at = graph.source();
    while at != graph.sink() {
        let here = dist[at].expect("reachable vertex");
        let next = graph
            .out_arcs(at)
            .iter()
            .copied()
            .find(|&a| {
                let head = graph.arc(a).head;
                dist[head].is_some_and(|(d, h)| (d + weights[a], h + 1) == here)
            })
            .expect("a tight arc leaves every reachable vertex");
        arcs.push(next);
        at = graph.arc(next).head;
    }
    Ok(Some(ShortestPath { arcs, length }))
}

/// Largest vertex count for which the DP tracks visited vertices.
pub const MAX_TRACKED_VERTICES: usize = 128;
/// Largest number of required arcs.
pub const MAX_REQUIRED_ARCS: usize = 64;

#[derive(Debug, Clone)]
struct Label {
    sums: Vec<u64>,
    flags: u64,
    visited: u128,
    /// `(vertex, index)` of the predecessor label in the previous hop layer
    /// and the arc used to extend it.
    pred: Option<(usize, usize, usize)>,
}

/// S^u_v for every hop count u and vertex v.
#[derive(Debug, Default)]
struct LabelSet {
    layers: Vec<Vec<Vec<Label>>>,
}

impl LabelSet {
    fn trail(&self, layer: usize, pred: Option<(usize, usize, usize)>) -> Vec<usize> {
        let mut arcs = Vec::with_capacity(layer);
        let mut link = pred;
        let mut u = layer;
        while let Some((v, idx, arc)) = link {
            arcs.push(arc);
            u -= 1;
            link = self.layers[u][v][idx].pred;
        }
        arcs.reverse();
        arcs
    }
}

struct DpInput<'a> {
    graph: &'a Graph,
    weights: &'a WeightVectorMap,
    required_bits: Vec<Option<u8>>,
    all_flags: u64,
    track_vertices: bool,
    cap: u64,
}

/// Runs the layered DP and returns the arc sequence of the best admissible
/// label under the key (max sum, sums, arc sequence).
fn run_dp(input: &DpInput<'_>) -> Result<Option<Vec<usize>>> {
    let graph = input.graph;
    let k = input.weights.k();
    let n = graph.vertex_count();
    let (s, t) = (graph.source(), graph.sink());
    let hop_limit = n.saturating_sub(1).max(1);

    let mut set = LabelSet::default();
    let mut first = vec![Vec::new(); n];
    first[s].push(Label {
        sums: vec![0; k],
        flags: 0,
        visited: if input.track_vertices { 1u128 << s } else { 0 },
        pred: None,
    });
    set.layers.push(first);

    let mut best: Option<(u64, Vec<u64>, Vec<usize>)> = None;

    for u in 1..=hop_limit {
        let mut layer: Vec<Vec<Label>> = vec![Vec::new(); n];
        let prev = &set.layers[u - 1];
        #[allow(clippy::needless_range_loop)]
        for v in 0..n {
            if v == s {
                continue;
            }
            for &a in graph.in_arcs(v) {
                let from = graph.arc(a).tail;
                if from == t {
                    continue;
                }
                let w = input.weights.get(a);
                'labels: for (idx, label) in prev[from].iter().enumerate() {
                    if input.track_vertices && label.visited & (1u128 << v) != 0 {
                        continue;
                    }
                    let mut sums = Vec::with_capacity(k);
                    for (x, &wx) in label.sums.iter().zip(w) {
                        let y = x.checked_add(wx).ok_or(Error::Overflow("label sum"))?;
                        if y > input.cap {
                            continue 'labels;
                        }
                        sums.push(y);
                    }
                    let flags = match input.required_bits[a] {
                        Some(bit) => label.flags | (1u64 << bit),
                        None => label.flags,
                    };
                    let visited = if input.track_vertices {
                        label.visited | (1u128 << v)
                    } else {
                        0
                    };
                    let cand = Label {
                        sums,
                        flags,
                        visited,
                        pred: Some((from, idx, a)),
                    };
                    insert_label(&set, u, &mut layer[v], cand);
                }
            }
        }

        for label in &layer[t] {
            if label.flags != input.all_flags {
                continue;
            }
            let value = label.sums.iter().copied().max().unwrap_or(0);
            let better = match &best {
                None => true,
                Some((bv, bs, _)) => match (value, &label.sums).cmp(&(*bv, bs)) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => set.trail(u, label.pred) < best.as_ref().unwrap().2,
                },
            };
            if better {
                best = Some((value, label.sums.clone(), set.trail(u, label.pred)));
            }
        }
        set.layers.push(layer);
    }
    Ok(best.map(|(_, _, arcs)| arcs))
}

fn dominates(set: &LabelSet, layer: usize, a: &Label, b: &Label) -> bool {
    if a.flags & b.flags != b.flags || a.visited & b.visited != a.visited {
        return false;
    }
    if a.sums.iter().zip(&b.sums).any(|(x, y)| x > y) {
        return false;
    }
    a.sums != b.sums || set.trail(layer, a.pred) <= set.trail(layer, b.pred)
}

fn insert_label(set: &LabelSet, layer: usize, cell: &mut Vec<Label>, cand: Label) {
    if cell.iter().any(|l| dominates(set, layer, l, &cand)) {
        return;
    }
    cell.retain(|l| !dominates(set, layer, &cand, l));
    cell.push(cand);
}

/// Removes cycles from an s–t walk.
fn shortcut(graph: &Graph, walk: &[usize]) -> Vec<usize> {
    let mut stack: Vec<usize> = Vec::with_capacity(walk.len());
    let mut position = vec![None; graph.vertex_count()];
    position[graph.source()] = Some(0);
    for &a in walk {
        let head = graph.arc(a).head;
        if let Some(p) = position[head] {
            while stack.len() > p {
                let dropped = stack.pop().unwrap();
                position[graph.arc(dropped).head] = None;
            }
            position[head] = Some(p);
        } else {
            stack.push(a);
            position[head] = Some(stack.len());
        }
    }
    stack
}

fn prepare<'a>(
    graph: &'a Graph,
    weights: &'a WeightVectorMap,
    required: &[usize],
    cap: u64,
) -> Result<DpInput<'a>> {
    if weights.arc_count() != graph.arc_count() {
        return Err(Error::InvalidInput(format!(
            "weight map covers {} arcs, graph has {}",
            weights.arc_count(),
            graph.arc_count()
        )));
    }
    let mut required_bits = vec![None; graph.arc_count()];
    let mut bit = 0u8;
    for &a in required {
        if a >= graph.arc_count() {
            return Err(Error::InvalidInput(format!(
                "required arc {a} does not exist"
            )));
        }
        if required_bits[a].is_none() {
            if bit as usize >= MAX_REQUIRED_ARCS {
                return Err(Error::TooLarge {
                    what: "required arc count",
                    count: required.len() as u128,
                    limit: MAX_REQUIRED_ARCS as u128,
                });
            }
            required_bits[a] = Some(bit);
            bit += 1;
        }
    }
    let all_flags = if bit == 64 {
        u64::MAX
    } else {
        (1u64 << bit) - 1
    };
    let track_vertices = bit > 0;
    if track_vertices && graph.vertex_count() > MAX_TRACKED_VERTICES {
        return Err(Error::TooLarge {
            what: "vertex count with required arcs",
            count: graph.vertex_count() as u128,
            limit: MAX_TRACKED_VERTICES as u128,
        });
    }
    Ok(DpInput {
        graph,
        weights,
        required_bits,
        all_flags,
        track_vertices,
        cap,
    })
}

fn finish(
    graph: &Graph,
    weights: &WeightVectorMap,
    input: &DpInput<'_>,
    arcs: Vec<usize>,
) -> Result<MinMaxPath> {
    let arcs = if input.track_vertices {
        arcs
    } else {
        shortcut(graph, &arcs)
    };
    MinMaxPath::from_arcs(weights, arcs)
}

/// Exact min-max path among simple s–t paths visiting every arc in
/// `required`. Returns `Ok(None)` if no such path exists.
///
/// Without required arcs the DP ranges over walks of at most |V|-1 arcs
/// and the winner is shortcut to a simple path, which never increases a
/// sum. With required arcs labels also carry their vertex set so only
/// simple paths are generated.
pub fn minmax_path_exact(
    graph: &Graph,
    weights: &WeightVectorMap,
    required: &[usize],
) -> Result<Option<MinMaxPath>> {
    let cap = weights.total_bound()?;
    let input = prepare(graph, weights, required, cap)?;
    match run_dp(&input)? {
        Some(arcs) => Ok(Some(finish(graph, weights, &input, arcs)?)),
        None => Ok(None),
    }
}

/// Min-max path within a factor `1 + eps` of the exact optimum over the
/// same admissible paths.
///
/// Guesses an upper limit `L` on the optimum, doubling from a lower bound.
/// For each guess the weights are rounded down to multiples of
/// `θ = (eps/2)·L/h` (h = |V|-1 is the hop bound) and labels whose scaled
/// sums exceed `L/θ` are dropped. The first guess that yields a path has
/// `L/2 < OPT`, so the rounding loss `h·θ = eps·L/2` is below `eps·OPT`.
pub fn minmax_path_fptas(
    graph: &Graph,
    weights: &WeightVectorMap,
    required: &[usize],
    eps: Ratio,
) -> Result<Option<MinMaxPath>> {
    if eps.is_zero() {
        return Err(Error::InvalidInput("eps must be positive".into()));
    }
    let upper = weights.total_bound()?;
    let hops = graph.vertex_count().saturating_sub(1).max(1) as u64;

    // OPT >= (min over paths of the summed weights) / K.
    let summed: Vec<u64> = (0..graph.arc_count())
        .map(|a| weights.get(a).iter().sum())
        .collect();
    let Some(relaxed) = shortest_path(graph, &summed)? else {
        return Ok(None);
    };
    let k = weights.k() as u64;
    let mut limit = relaxed.length.div_ceil(k).max(1);

    let half_eps = eps.div_int(2)?;
    loop {
        let theta = half_eps.checked_mul(Ratio::integer(limit))?.div_int(hops)?;
        let found = if theta <= Ratio::ONE {
            let input = prepare(graph, weights, required, limit)?;
            run_dp(&input)?.map(|arcs| (input.track_vertices, arcs))
        } else {
            // floor(w / θ) with θ = num/den.
            let (num, den) = (theta.num() as u128, theta.den() as u128);
            let scale = |w: u64| -> Result<u64> {
                u64::try_from(w as u128 * den / num).map_err(|_| Error::Overflow("scaled weight"))
            };
            let mut scaled = WeightVectorMap::zeros(weights.k(), weights.arc_count());
            let mut buf = vec![0u64; weights.k()];
            for a in 0..weights.arc_count() {
                for (b, &w) in buf.iter_mut().zip(weights.get(a)) {
                    *b = scale(w)?;
                }
                scaled.set(a, &buf);
            }
            let input = prepare(graph, &scaled, required, scale(limit)?)?;
            run_dp(&input)?.map(|arcs| (input.track_vertices, arcs))
        };
        if let Some((simple, arcs)) = found {
            let arcs = if simple { arcs } else { shortcut(graph, &arcs) };
            return Ok(Some(MinMaxPath::from_arcs(weights, arcs)?));
        }
        if limit >= upper {
            return Ok(None);
        }
        limit = limit.saturating_mul(2).min(upper.max(1));
    }
}
