mod common;

use kcert::instances::{gnm, gnp, named};
use kcert::oracle::{
    find_vertex_cut, has_k_connected_subgraph, is_k_connected, max_vertex_disjoint_paths, vertex_connectivity,
};
use kcert::EdgeSet;
use proptest::prelude::*;

fn small_graph() -> impl Strategy<Value = EdgeSet> {
    (2usize..=9, 0.0f64..1.0, any::<u64>()).prop_map(|(n, p, seed)| gnp(n, p, seed))
}

#[test]
fn k4_disjoint_paths_match_enumeration() {
    let k4 = named("complete(4)").unwrap();
    let expected = common::brute_disjoint_paths(&k4, 0, 1);
    assert_eq!(expected, 3);
    assert_eq!(max_vertex_disjoint_paths(&k4, 0, 1).unwrap(), expected);
}

#[test]
fn petersen_matches_brute_force() {
    let p = named("petersen").unwrap();
    assert_eq!(common::brute_kappa(&p), 3);
    assert_eq!(vertex_connectivity(&p).unwrap(), 3);
}

#[test]
fn k5_minus_edge_pair_has_three_paths() {
    let mut g = named("complete(5)").unwrap();
    g.remove(0, 1);
    assert_eq!(common::brute_disjoint_paths(&g, 0, 1), 3);
    assert_eq!(common::brute_st_cut(&g, 0, 1), 3);
    assert!(!is_k_connected(&g, 4).unwrap());
}

#[test]
fn parallel_edges_do_not_matter() {
    // Doubling every edge of the stream leaves the support and therefore κ unchanged.
    let g = named("cycle(6)").unwrap();
    let mut events = g.to_stream();
    events.extend(g.to_stream());
    let multi = kcert::MultiGraph::replay_stream(6, &events).unwrap();
    assert!(multi.multiplicities().all(|(_, m)| m == 2));
    assert_eq!(multi.support(), g);
    assert_eq!(vertex_connectivity(&multi.support()).unwrap(), 2);
    assert_eq!(max_vertex_disjoint_paths(&multi.support(), 0, 1).unwrap(), 2);
}

#[test]
fn mader_bound_graphs_small_sample() {
    for k in [2usize, 3] {
        for n in 2 * k - 1..=8 {
            let bound = (2 * k - 3) * (n - k + 1) + 1;
            for s in 0..20 {
                let g = gnm(n, bound, s).unwrap();
                assert!(has_k_connected_subgraph(&g, k).unwrap(), "n={n} k={k} seed={s}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn menger_duality(g in small_graph(), s in 0usize..9, t in 0usize..9) {
        let n = g.n();
        let (s, t) = (s % n, t % n);
        prop_assume!(s != t && !g.contains(s, t));
        prop_assert_eq!(max_vertex_disjoint_paths(&g, s, t).unwrap(), common::brute_st_cut(&g, s, t));
    }

    #[test]
    fn connectivity_matches_brute_force(g in small_graph()) {
        prop_assert_eq!(vertex_connectivity(&g).unwrap(), common::brute_kappa(&g));
    }

    #[test]
    fn flow_matches_path_enumeration(n in 3usize..=7, p in 0.2f64..1.0, seed in any::<u64>(), s in 0usize..7, t in 0usize..7) {
        let g = gnp(n, p, seed);
        let (s, t) = (s % n, t % n);
        prop_assume!(s != t);
        prop_assert_eq!(max_vertex_disjoint_paths(&g, s, t).unwrap(), common::brute_disjoint_paths(&g, s, t));
    }

    #[test]
    fn adding_an_edge_is_monotone(g in small_graph(), a in 0usize..9, b in 0usize..9, s in 0usize..9, t in 0usize..9) {
        let n = g.n();
        let (a, b, s, t) = (a % n, b % n, s % n, t % n);
        prop_assume!(a != b && s != t);
        let mut h = g.clone();
        h.insert(a, b).unwrap();
        prop_assert!(vertex_connectivity(&h).unwrap() >= vertex_connectivity(&g).unwrap());
        prop_assert!(max_vertex_disjoint_paths(&h, s, t).unwrap() >= max_vertex_disjoint_paths(&g, s, t).unwrap());
    }

    #[test]
    fn connectivity_at_most_min_degree(g in small_graph()) {
        prop_assert!(vertex_connectivity(&g).unwrap() <= g.min_degree());
    }

    #[test]
    fn k_connected_agrees_with_kappa(g in small_graph(), k in 1usize..10) {
        let kappa = vertex_connectivity(&g).unwrap();
        prop_assert_eq!(is_k_connected(&g, k).unwrap(), kappa >= k);
    }

    #[test]
    fn vertex_cut_is_minimum_and_separates(g in small_graph(), k in 1usize..9) {
        let kappa = vertex_connectivity(&g).unwrap();
        match find_vertex_cut(&g, k) {
            None => prop_assert!(kappa >= k || g.is_complete()),
            Some(cut) => {
                prop_assert!(kappa < k);
                prop_assert_eq!(cut.len(), kappa);
                let keep: Vec<usize> = (0..g.n()).filter(|v| !cut.contains(v)).collect();
                let rest = g.induced_relabelled(&keep);
                let labels = rest.components();
                prop_assert!(labels.iter().any(|&l| l != labels[0]));
            }
        }
    }

    #[test]
    fn subgraph_search_matches_brute_force(n in 2usize..=7, p in 0.0f64..1.0, seed in any::<u64>(), k in 1usize..5) {
        let g = gnp(n, p, seed);
        prop_assert_eq!(has_k_connected_subgraph(&g, k).unwrap(), common::brute_has_k_connected_subgraph(&g, k));
    }
}
