use std::collections::BTreeMap;

use kcert::forest::{pair_index, pair_universe};
use kcert::instances::{gen_random_stream, gnp};
use kcert::seed::derive;
use kcert::{EdgeSet, ForestSketchBank, L0Sketch, MultiGraph, SampleOutcome};
use proptest::prelude::*;

/// Dense signed incidence vector of `members`' combined edges, computed directly.
fn boundary_vector(g: &MultiGraph, group: &[usize]) -> BTreeMap<u64, i64> {
    let n = g.n();
    let mut v = BTreeMap::new();
    for ((a, b), m) in g.multiplicities() {
        let m = m as i64;
        if group.contains(&a) {
            *v.entry(pair_index(n, a, b)).or_insert(0) += m;
        }
        if group.contains(&b) {
            *v.entry(pair_index(n, a, b)).or_insert(0) -= m;
        }
    }
    v.retain(|_, x| *x != 0);
    v
}

#[test]
fn component_sum_sees_only_leaving_edges() {
    let n = 10;
    let events = gen_random_stream(n, 0.4, 0.2, 3).unwrap();
    let g = MultiGraph::replay_stream(n, &events).unwrap();
    let members: Vec<usize> = (0..n).collect();
    let mut bank = ForestSketchBank::new(n, &members, 0.01, 8).unwrap();
    for e in &events {
        bank.update(e).unwrap();
    }
    let group = [0usize, 2, 3, 7];
    let mut merged = bank.sketch(0, group[0]).unwrap().clone();
    for &v in &group[1..] {
        merged.merge_from(bank.sketch(0, v).unwrap()).unwrap();
    }
    let expected = boundary_vector(&g, &group);
    // Every edge with exactly one endpoint in the group survives; internal ones cancel.
    for ((a, b), _) in g.multiplicities() {
        let crossing = group.contains(&a) != group.contains(&b);
        assert_eq!(expected.contains_key(&pair_index(n, a, b)), crossing);
    }
    let mut direct = L0Sketch::new(pair_universe(n), 0.01, derive(8, "round", 0)).unwrap();
    for (&i, &x) in &expected {
        direct.update(i, x).unwrap();
    }
    assert_eq!(merged, direct);
    if let SampleOutcome::NonZeroIndex { index, .. } = merged.sample() {
        assert!(expected.contains_key(&index));
    }
}

fn partition_of(forest: &EdgeSet, members: &[usize]) -> Vec<usize> {
    let labels = forest.components();
    members.iter().map(|&v| labels[v]).collect()
}

#[test]
fn subset_forests_match_true_partition() {
    let n = 40;
    let mut agree = 0;
    for trial in 0..60u64 {
        let events = gen_random_stream(n, 0.08, 0.25, trial).unwrap();
        let g = MultiGraph::replay_stream(n, &events).unwrap().support();
        let members: Vec<usize> = (0..n).filter(|v| !(v + trial as usize).is_multiple_of(3)).collect();
        let mut bank = ForestSketchBank::new(n, &members, 0.01, trial).unwrap();
        for e in &events {
            bank.update(e).unwrap();
        }
        let out = bank.extract_forest();
        let induced = g.induced_relabelled(&members);
        let truth_labels = induced.components();
        let got = partition_of(&out.forest, &members);
        // Same partition iff labels agree pairwise.
        let same = (0..members.len())
            .all(|a| (0..members.len()).all(|b| (truth_labels[a] == truth_labels[b]) == (got[a] == got[b])));
        agree += usize::from(same);
        for (a, b) in out.forest.edges() {
            assert!(g.contains(a, b) && members.contains(&a) && members.contains(&b));
        }
        assert_eq!(out.forest.len(), members.len() - distinct(&got));
    }
    assert!(agree >= 59, "{agree}/60");
}

fn distinct(labels: &[usize]) -> usize {
    let mut l = labels.to_vec();
    l.sort_unstable();
    l.dedup();
    l.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extraction_is_sound_and_acyclic(n in 2usize..20, p in 0.0f64..0.6, seed in any::<u64>()) {
        let g = gnp(n, p, seed);
        let members: Vec<usize> = (0..n).collect();
        let mut bank = ForestSketchBank::new(n, &members, 0.05, seed).unwrap();
        for e in g.to_stream() {
            bank.update(&e).unwrap();
        }
        let out = bank.extract_forest();
        prop_assert!(out.forest.is_subset(&g));
        let comps = distinct(&out.forest.components());
        prop_assert_eq!(out.forest.len() + comps, n);
    }
}
