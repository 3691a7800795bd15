mod common;

use common::{brute_optimum, o2_formula, simple_paths};
use shopsp_core::comb::{SaeConfig, UarConfig, solve_sae_traced, solve_sd, solve_uar_traced};
use shopsp_core::instgen::{RandomParams, Topology, generate_random};
use shopsp_core::model::{Graph, Instance, validate_schedule};
use shopsp_core::oracle::{OracleLimits, solve_exact};
use shopsp_core::shop::ExactLimits;
use shopsp_core::{Ratio, ShopKind, SolveResult, Time};

fn eps() -> Ratio {
    Ratio::new(1, 4).unwrap()
}

fn limits() -> OracleLimits {
    OracleLimits {
        max_paths: 10_000,
        exact: ExactLimits { max_ops: 24 },
    }
}

fn instance(shop: ShopKind, m: usize, v: usize, a: usize, seed: u64) -> Instance {
    let p = RandomParams {
        topology: if seed.is_multiple_of(2) {
            Topology::Layered
        } else {
            Topology::Uniform
        },
        max_duration: 6,
        ..RandomParams::new(shop, m, v, a, seed)
    };
    generate_random(&p).unwrap()
}

fn feasible(inst: &Instance, r: &SolveResult) {
    inst.graph().check_simple_path(&r.path).unwrap();
    validate_schedule(inst, &r.job_set, &r.schedule).unwrap();
}

fn within(ratio: Ratio, opt: Time, value: Time) -> bool {
    ratio.times_ge(opt, value)
}

#[test]
fn oracle_matches_independent_search() {
    for seed in 0..40 {
        for (shop, m) in [
            (ShopKind::Open, 2),
            (ShopKind::Open, 3),
            (ShopKind::Job, 2),
            (ShopKind::Job, 3),
        ] {
            let inst = instance(shop, m, 4, 5, seed);
            let r = solve_exact(&inst, limits()).unwrap();
            feasible(&inst, &r);
            assert_eq!(r.makespan, brute_optimum(&inst), "seed {seed} {shop} m={m}");
        }
    }
}

#[test]
fn o2_oracle_is_min_of_formula() {
    for seed in 0..60 {
        let inst = instance(ShopKind::Open, 2, 7, 14, seed);
        let want = simple_paths(inst.graph())
            .iter()
            .map(|p| o2_formula(&inst.jobs_of(p)))
            .min()
            .unwrap();
        assert_eq!(solve_exact(&inst, limits()).unwrap().makespan, want);
    }
}

#[test]
fn removing_an_arc_never_helps() {
    for seed in 0..30 {
        let inst = instance(ShopKind::Open, 2, 5, 7, seed);
        let opt = solve_exact(&inst, limits()).unwrap().makespan;
        for drop in 0..inst.jobs().len() {
            let ends: Vec<(usize, usize)> = inst
                .graph()
                .arcs()
                .iter()
                .filter(|a| a.id != drop)
                .map(|a| (a.tail, a.head))
                .collect();
            let g = Graph::new(inst.graph().vertex_count(), &ends, 0, inst.graph().sink()).unwrap();
            let jobs = inst
                .jobs()
                .iter()
                .filter(|j| j.id != drop)
                .enumerate()
                .map(|(id, j)| shopsp_core::Job::new(id, j.ops.clone()))
                .collect();
            let smaller = Instance::new(inst.shop(), 2, g, jobs).unwrap();
            if let Ok(r) = solve_exact(&smaller, limits()) {
                assert!(r.makespan >= opt);
            }
        }
    }
}

#[test]
fn approximation_ratios_hold() {
    let e = eps();
    let gar_ratio = Ratio::ONE.checked_add(e).unwrap();
    let rar_ratio = Ratio::integer(2).checked_add(e).unwrap();
    let jjar_ratio = Ratio::new(3, 2).unwrap().checked_add(e).unwrap();
    for seed in 0..60 {
        for (shop, m) in [
            (ShopKind::Open, 2),
            (ShopKind::Open, 3),
            (ShopKind::Job, 2),
            (ShopKind::Job, 3),
        ] {
            let inst = instance(shop, m, 6, 10, seed);
            let opt = solve_exact(&inst, limits()).unwrap().makespan;
            let sd = solve_sd(&inst).unwrap();
            feasible(&inst, &sd);
            assert!(sd.makespan >= opt && sd.makespan <= m as Time * opt);
            let mut runs = Vec::new();
            match (shop, m) {
                (ShopKind::Open, 2) => runs.push((UarConfig::gar(e), gar_ratio)),
                (ShopKind::Open, _) => runs.push((UarConfig::rar(e).unwrap(), rar_ratio)),
                (ShopKind::Job, 2) => runs.push((UarConfig::jjar(e).unwrap(), jjar_ratio)),
                (ShopKind::Job, _) => {}
            }
            if shop == ShopKind::Open && m == 2 {
                runs.push((UarConfig::rar(e).unwrap(), rar_ratio));
            }
            for (cfg, ratio) in runs {
                let t = solve_uar_traced(&inst, &cfg).unwrap();
                feasible(&inst, &t.result);
                assert!(t.result.makespan >= opt);
                assert!(
                    within(ratio, opt, t.result.makespan),
                    "{} seed {seed}: {} vs {opt}",
                    cfg.preset,
                    t.result.makespan
                );
            }
            if shop == ShopKind::Job {
                let cfg = UarConfig::sar(e, 1.0, m, inst.max_ops_per_job()).unwrap();
                let a = solve_uar_traced(&inst, &cfg).unwrap();
                feasible(&inst, &a.result);
                assert!(a.result.makespan >= opt);
                assert_eq!(a, solve_uar_traced(&inst, &cfg).unwrap());
            }
        }
    }
}

#[test]
fn uar_trace_replays() {
    for seed in 0..80 {
        let inst = instance(ShopKind::Open, 2, 6, 10, seed);
        let cfg = UarConfig::gar(eps());
        let t = solve_uar_traced(&inst, &cfg).unwrap();
        let n = inst.jobs().len();
        assert!(t.iterations <= n);
        assert_eq!(t.paths.len(), t.makespans.len());
        assert_eq!(t.result.makespan, *t.makespans.iter().min().unwrap());
        // Replay the removal rule against the recorded makespans.
        let mut removed = vec![false; n];
        let mut order = Vec::new();
        for (round, path) in t.paths.iter().enumerate() {
            let c = t.makespans[round];
            let long = |j: usize| cfg.rho.le_ratio_of(c, inst.job(j).total());
            let go_on = !path.iter().any(|&a| removed[a]) && path.iter().any(|&a| long(a));
            if !go_on {
                assert_eq!(round + 1, t.paths.len(), "loop should have stopped");
                break;
            }
            for (j, gone) in removed.iter_mut().enumerate() {
                if !*gone && long(j) {
                    *gone = true;
                    order.push(j);
                }
            }
        }
        assert_eq!(order, t.removed);
        let mut best = Time::MAX;
        for (i, &c) in t.makespans.iter().enumerate() {
            best = best.min(c);
            assert_eq!(t.best_so_far[i], best);
        }
    }
}

#[test]
fn sae_is_feasible_and_not_below_optimum() {
    for seed in 0..30 {
        for m in [2, 3] {
            let inst = instance(ShopKind::Open, m, 5, 8, seed);
            let opt = solve_exact(&inst, limits()).unwrap().makespan;
            for n in [0, 1, 2] {
                let cfg = SaeConfig::with_subset_size(eps(), n);
                let t = solve_sae_traced(&inst, &cfg).unwrap();
                feasible(&inst, &t.result);
                assert!(t.result.makespan >= opt);
                assert!(t.feasible_subsets > 0 || t.fallback);
            }
        }
    }
}
