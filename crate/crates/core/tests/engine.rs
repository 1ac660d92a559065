use std::collections::BTreeSet;

use pretropism::engine::{degree_sum, explore, explore_edge_skeleton};
use pretropism::oracle::{brute_force_skeleton, check_pretropism_graph_connected, definitional_pretropisms};
use pretropism::systems::{gen_cyclic, gen_generic_simplices};
use pretropism::{find_pretropisms, Cone, IntVector, Options, Polytope};
use proptest::prelude::*;

fn v(x: &[i64]) -> IntVector {
    IntVector::from_i64s(x)
}

fn polytope(dim: usize) -> impl Strategy<Value = Polytope> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 2..=7)
        .prop_map(|ps| ps.iter().map(|p| v(p)).collect::<Vec<_>>())
        .prop_filter_map("single point", |ps| {
            let p = Polytope::new(&ps).unwrap();
            (p.edge_count() > 0).then_some(p)
        })
}

fn cone(dim: usize) -> impl Strategy<Value = Cone> {
    (
        prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 1..=3),
        prop::collection::vec(prop::collection::vec(-2i64..=2, dim), 0..=1),
    )
        .prop_map(move |(r, l)| {
            let r: Vec<_> = r.iter().map(|x| v(x)).collect();
            let l: Vec<_> = l.iter().map(|x| v(x)).collect();
            Cone::from_rays(dim, &r, &l)
        })
        .prop_filter("trivial", |c| !c.is_trivial())
}

fn keys(cs: &[Cone]) -> BTreeSet<String> {
    cs.iter().map(|c| format!("{:?}", c.key())).collect()
}

fn reduced_cyclic(n: usize) -> Vec<Polytope> {
    gen_cyclic(n, true).polytopes().unwrap()
}

#[test]
fn reduced_cyclic_pretropism_counts() {
    for (n, want) in [(4, 2), (5, 0), (6, 8), (7, 28)] {
        let r = find_pretropisms(&reduced_cyclic(n), &Options::default()).unwrap();
        assert_eq!(r.rays.len(), want, "n = {n}");
    }
}

#[test]
fn reduced_cyclic_intersection_counts() {
    let sorted = Options::default();
    for (n, def, prune) in [(5, 1_850, 210), (6, 63_981, 2_040)] {
        let ps = reduced_cyclic(n);
        let d = definitional_pretropisms(&ps, &sorted).unwrap();
        let r = find_pretropisms(&ps, &sorted).unwrap();
        assert_eq!(d.stats.intersections(), def, "n = {n}");
        assert_eq!(r.stats.intersections(), prune, "n = {n}");
        assert_eq!(d.rays, r.rays);
    }
    let r = find_pretropisms(&reduced_cyclic(7), &sorted).unwrap();
    assert_eq!(r.stats.intersections(), 6_272);

    let unsorted = Options {
        sort: false,
        ..Options::default()
    };
    let ps = reduced_cyclic(4);
    assert_eq!(definitional_pretropisms(&ps, &unsorted).unwrap().stats.intersections(), 120);
    assert_eq!(find_pretropisms(&ps, &unsorted).unwrap().stats.intersections(), 44);
}

#[test]
fn cyclic_four_curve_directions() {
    let r = find_pretropisms(&gen_cyclic(4, false).polytopes().unwrap(), &Options::default()).unwrap();
    assert_eq!(r.rays, vec![v(&[-1, 1, -1, 1]), v(&[1, -1, 1, -1])]);
    assert!(degree_sum(&r.rays) > 0.into());
}

#[test]
fn thread_count_does_not_change_results() {
    let ps = reduced_cyclic(6);
    let one = find_pretropisms(&ps, &Options { jobs: Some(1), ..Options::default() }).unwrap();
    let many = find_pretropisms(&ps, &Options { jobs: Some(6), ..Options::default() }).unwrap();
    assert_eq!(one.rays, many.rays);
    assert_eq!(one.stats, many.stats);
    assert_eq!(one.trace, many.trace);
}

#[test]
fn restricted_search_reports_positive_rays() {
    let ps = reduced_cyclic(6);
    let opts = Options {
        restrict_first_positive: true,
        ..Options::default()
    };
    let r = find_pretropisms(&ps, &opts).unwrap();
    assert!(!r.rays.is_empty());
    assert!(r.rays.iter().all(|x| x.entries()[0] > 0.into()));
}

#[test]
fn pruned_rays_match_oracle_on_simplices() {
    for seed in 0..6 {
        let ps = gen_generic_simplices(4, seed).polytopes().unwrap();
        let r = find_pretropisms(&ps, &Options::default()).unwrap();
        let d = definitional_pretropisms(&ps, &Options::default()).unwrap();
        assert_eq!(r.rays, d.rays, "seed {seed}");
        assert!(r.stats.intersections() <= d.stats.intersections());
        assert!(u128::from(r.stats.intersections()) <= r.trace.bound());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn exploration_finds_every_edge(p in polytope(3), c in cone(3), seed in 0u64..3) {
        let walked = explore_edge_skeleton(&p, &c, seed).unwrap();
        let brute = brute_force_skeleton(&p, &c).unwrap();
        prop_assert_eq!(keys(&walked), keys(&brute));
        prop_assert!(check_pretropism_graph_connected(&p, &c).unwrap());
        let x = explore(&p, &c, seed).unwrap();
        prop_assert_eq!(x.counts.edges_visited as usize, x.tested_edges.len());
    }

    #[test]
    fn input_order_does_not_change_rays(a in polytope(3), b in polytope(3), c in polytope(3)) {
        let opts = Options { sort: false, ..Options::default() };
        let abc = find_pretropisms(&[a.clone(), b.clone(), c.clone()], &opts).unwrap();
        let cab = find_pretropisms(&[c.clone(), a.clone(), b.clone()], &opts).unwrap();
        prop_assert_eq!(&abc.rays, &cab.rays);
        let d = definitional_pretropisms(&[a, b, c], &opts).unwrap();
        prop_assert_eq!(abc.rays, d.rays);
    }
}
