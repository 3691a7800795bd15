mod common;

use common::{Xs, brute_makespan, o2_formula, permutations, random_j2_jobs, random_open_jobs};
use proptest::prelude::*;
use shopsp_core::model::{Graph, Instance, Job, ShopKind, Time, job_bounds, validate_schedule};
use shopsp_core::shop::{
    ExactLimits, is_dense, jackson_order_bound, johnson_makespan, racsmany_bound,
    schedule_dense_job, schedule_dense_open, schedule_exact_small, schedule_gs_o2,
    schedule_jackson_j2, schedule_johnson_f2, schedule_sw_om,
};
use shopsp_core::{Ratio, Schedule};

const BIG: ExactLimits = ExactLimits { max_ops: 24 };

fn assert_feasible(jobs: &[Job], m: usize, shop: ShopKind, schedule: &Schedule) {
    // Chain the jobs into a single path so the instance validator applies.
    let ends: Vec<(usize, usize)> = (0..jobs.len()).map(|i| (i, i + 1)).collect();
    let graph = Graph::new(jobs.len() + 1, &ends, 0, jobs.len()).unwrap();
    let inst = Instance::new(shop, m, graph, jobs.to_vec()).unwrap();
    let ids: Vec<usize> = (0..jobs.len()).collect();
    validate_schedule(&inst, &ids, schedule).unwrap();
}

fn open_jobs(n: usize, m: usize, max: Time) -> impl Strategy<Value = Vec<Job>> {
    prop::collection::vec(prop::collection::vec(0..=max, m), 1..=n).prop_map(|rows| {
        rows.iter()
            .enumerate()
            .map(|(id, p)| Job::open(id, p))
            .collect()
    })
}

fn chain_jobs(n: usize, m: usize, ops: usize, max: Time) -> impl Strategy<Value = Vec<Job>> {
    prop::collection::vec(prop::collection::vec((0..m, 1..=max), 1..=ops), 1..=n).prop_map(|rows| {
        rows.iter()
            .enumerate()
            .map(|(id, c)| Job::chain(id, c))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn exact_open_matches_brute_force(jobs in open_jobs(3, 3, 5)) {
        let s = schedule_exact_small(&jobs, 3, ShopKind::Open, BIG).unwrap();
        assert_feasible(&jobs, 3, ShopKind::Open, &s);
        prop_assert_eq!(s.makespan, brute_makespan(&jobs, 3, ShopKind::Open));
    }

    #[test]
    fn exact_o2_matches_brute_force(jobs in open_jobs(4, 2, 6)) {
        let s = schedule_exact_small(&jobs, 2, ShopKind::Open, BIG).unwrap();
        prop_assert_eq!(s.makespan, brute_makespan(&jobs, 2, ShopKind::Open));
    }

    #[test]
    fn exact_job_matches_brute_force(jobs in chain_jobs(3, 3, 3, 5)) {
        let s = schedule_exact_small(&jobs, 3, ShopKind::Job, BIG).unwrap();
        assert_feasible(&jobs, 3, ShopKind::Job, &s);
        prop_assert_eq!(s.makespan, brute_makespan(&jobs, 3, ShopKind::Job));
    }

    #[test]
    fn gs_matches_formula_and_brute_force(jobs in open_jobs(4, 2, 9)) {
        let s = schedule_gs_o2(&jobs).unwrap();
        assert_feasible(&jobs, 2, ShopKind::Open, &s);
        prop_assert_eq!(s.makespan, o2_formula(&jobs));
        prop_assert_eq!(s.makespan, brute_makespan(&jobs, 2, ShopKind::Open));
    }

    #[test]
    fn dense_open_within_twice_optimum(jobs in open_jobs(3, 3, 6)) {
        let s = schedule_dense_open(&jobs, 3);
        assert_feasible(&jobs, 3, ShopKind::Open, &s);
        prop_assert!(is_dense(&jobs, ShopKind::Open, &s));
        let opt = brute_makespan(&jobs, 3, ShopKind::Open);
        prop_assert!(s.makespan <= 2 * opt);
        prop_assert!(s.makespan <= racsmany_bound(&jobs, &s));
    }

    #[test]
    fn dense_job_is_feasible(jobs in chain_jobs(5, 3, 3, 6)) {
        let s = schedule_dense_job(&jobs, 3);
        assert_feasible(&jobs, 3, ShopKind::Job, &s);
        prop_assert!(is_dense(&jobs, ShopKind::Job, &s));
        let (lb, total) = job_bounds(&jobs, 3);
        prop_assert!(lb <= s.makespan && s.makespan <= total);
    }

    #[test]
    fn sw_is_feasible_and_not_below_optimum(jobs in open_jobs(3, 3, 9)) {
        let eps = Ratio::new(1, 2).unwrap();
        let s = schedule_sw_om(&jobs, 3, eps, BIG).unwrap();
        assert_feasible(&jobs, 3, ShopKind::Open, &s.schedule);
        prop_assert!(s.schedule.makespan >= brute_makespan(&jobs, 3, ShopKind::Open));
        let (_, total) = job_bounds(&jobs, 3);
        prop_assert!(s.schedule.makespan <= total);
    }
}

#[test]
fn jackson_is_optimal_and_within_order_bound() {
    let mut rng = Xs(0x1234_5678);
    for _ in 0..300 {
        let n = 1 + rng.below(4) as usize;
        let jobs = random_j2_jobs(&mut rng, n, 6);
        let s = schedule_jackson_j2(&jobs).unwrap();
        assert_feasible(&jobs, 2, ShopKind::Job, &s);
        assert_eq!(
            s.makespan,
            brute_makespan(&jobs, 2, ShopKind::Job),
            "{jobs:?}"
        );
        let (c1, c2) = jackson_order_bound(&jobs).unwrap();
        assert!(s.makespan <= c1.max(c2));
    }
}

#[test]
fn johnson_matches_every_permutation() {
    let mut rng = Xs(99);
    for _ in 0..200 {
        let n = 1 + rng.below(5) as usize;
        let times: Vec<[Time; 2]> = (0..n).map(|_| [rng.below(8), rng.below(8)]).collect();
        let best = permutations(&(0..n).collect::<Vec<_>>())
            .iter()
            .map(|order| {
                let (mut a, mut b) = (0, 0);
                for &j in order {
                    a += times[j][0];
                    b = b.max(a) + times[j][1];
                }
                b
            })
            .min()
            .unwrap();
        assert_eq!(johnson_makespan(&times), best);
        let jobs: Vec<Job> = times
            .iter()
            .enumerate()
            .map(|(id, t)| Job::chain(id, &[(0, t[0]), (1, t[1])]))
            .collect();
        let s = schedule_johnson_f2(&jobs).unwrap();
        assert_feasible(&jobs, 2, ShopKind::Job, &s);
        assert_eq!(s.makespan, best);
    }
}

#[test]
fn open_shop_random_sweep() {
    let mut rng = Xs(7);
    for _ in 0..200 {
        let n = 1 + rng.below(4) as usize;
        let jobs = random_open_jobs(&mut rng, n, 2, 9);
        let exact = schedule_exact_small(&jobs, 2, ShopKind::Open, BIG).unwrap();
        assert_eq!(exact.makespan, o2_formula(&jobs));
    }
}

#[test]
fn exact_refuses_over_cap() {
    let jobs: Vec<Job> = (0..7).map(|id| Job::open(id, &[1, 1])).collect();
    assert!(schedule_exact_small(&jobs, 2, ShopKind::Open, ExactLimits::default()).is_err());
    assert!(schedule_exact_small(&jobs, 2, ShopKind::Open, BIG).is_ok());
}
