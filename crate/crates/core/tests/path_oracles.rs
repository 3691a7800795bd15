mod common;

use common::{Xs, simple_paths};
use shopsp_core::Ratio;
use shopsp_core::model::Graph;
use shopsp_core::path::{WeightVectorMap, minmax_path_exact, minmax_path_fptas, shortest_path};

fn random_graph(rng: &mut Xs, uniform: bool) -> Graph {
    let v = 3 + rng.below(5) as usize;
    let arcs = 2 + rng.below(10) as usize;
    let mut ends = vec![(0, v - 1)];
    while ends.len() < arcs {
        let a = rng.below(v as u64) as usize;
        let b = rng.below(v as u64) as usize;
        if (uniform && a != b) || a < b {
            ends.push((a, b));
        }
    }
    // Drop the direct arc half of the time so longer paths matter.
    if rng.below(2) == 0 {
        ends.swap_remove(0);
    }
    Graph::new(v, &ends, 0, v - 1).unwrap()
}

fn random_weights(rng: &mut Xs, k: usize, arcs: usize) -> WeightVectorMap {
    let w = (0..arcs)
        .map(|_| (0..k).map(|_| rng.below(20)).collect())
        .collect();
    WeightVectorMap::new(k, w).unwrap()
}

fn brute_minmax(graph: &Graph, wm: &WeightVectorMap, required: &[usize]) -> Option<u64> {
    simple_paths(graph)
        .iter()
        .filter(|p| required.iter().all(|r| p.contains(r)))
        .map(|p| *wm.path_sums(p).unwrap().iter().max().unwrap())
        .min()
}

#[test]
fn minmax_exact_and_fptas_against_enumeration() {
    let mut rng = Xs(2024);
    for round in 0..400 {
        let g = random_graph(&mut rng, round % 2 == 0);
        let k = 1 + rng.below(3) as usize;
        let wm = random_weights(&mut rng, k, g.arc_count());
        let mut required = Vec::new();
        for _ in 0..rng.below(3) {
            let a = rng.below(g.arc_count() as u64) as usize;
            if !required.contains(&a) {
                required.push(a);
            }
        }
        let want = brute_minmax(&g, &wm, &required);
        let got = minmax_path_exact(&g, &wm, &required).unwrap();
        assert_eq!(got.as_ref().map(|p| p.value), want, "round {round}");
        if let Some(p) = &got {
            g.check_simple_path(&p.arcs).unwrap();
            assert!(required.iter().all(|r| p.arcs.contains(r)));
        }
        for (n, d) in [(1, 10), (1, 2)] {
            let eps = Ratio::new(n, d).unwrap();
            let approx = minmax_path_fptas(&g, &wm, &required, eps).unwrap();
            match (approx, want) {
                (None, None) => {}
                (Some(p), Some(opt)) => {
                    g.check_simple_path(&p.arcs).unwrap();
                    assert!(required.iter().all(|r| p.arcs.contains(r)));
                    assert_eq!(
                        p.value,
                        *wm.path_sums(&p.arcs).unwrap().iter().max().unwrap()
                    );
                    assert!(p.value >= opt);
                    assert!(eps.checked_add(Ratio::ONE).unwrap().times_ge(opt, p.value));
                }
                other => panic!("feasibility mismatch {other:?}"),
            }
        }
    }
}

#[test]
fn shortest_path_against_enumeration() {
    let mut rng = Xs(5);
    for round in 0..300 {
        let g = random_graph(&mut rng, true);
        let w: Vec<u64> = (0..g.arc_count()).map(|_| rng.below(10)).collect();
        let best = simple_paths(&g)
            .iter()
            .map(|p| p.iter().map(|&a| w[a]).sum::<u64>())
            .min();
        let got = shortest_path(&g, &w).unwrap();
        assert_eq!(got.as_ref().map(|p| p.length), best, "round {round}");
        if let Some(p) = got {
            g.check_simple_path(&p.arcs).unwrap();
            assert_eq!(p.arcs.iter().map(|&a| w[a]).sum::<u64>(), p.length);
        }
    }
}

#[test]
fn spec_style_examples() {
    let g = Graph::new(2, &[(0, 1), (0, 1)], 0, 1).unwrap();
    let wm = WeightVectorMap::new(2, vec![vec![4, 1], vec![1, 3]]).unwrap();
    let p = minmax_path_exact(&g, &wm, &[]).unwrap().unwrap();
    assert_eq!((p.arcs, p.value), (vec![1], 3));

    let g = Graph::new(3, &[(0, 2), (0, 1), (1, 2)], 0, 2).unwrap();
    let wm = WeightVectorMap::new(2, vec![vec![4, 1], vec![1, 1], vec![2, 1]]).unwrap();
    let p = minmax_path_exact(&g, &wm, &[]).unwrap().unwrap();
    assert_eq!((p.arcs, p.sums, p.value), (vec![1, 2], vec![3, 2], 3));
    // Forcing the direct arc.
    let p = minmax_path_exact(&g, &wm, &[0]).unwrap().unwrap();
    assert_eq!(p.value, 4);
    // Arcs that no simple path can share.
    assert!(minmax_path_exact(&g, &wm, &[0, 1]).unwrap().is_none());
}
