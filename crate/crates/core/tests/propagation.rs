mod common;

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::seq::SliceRandom;
use slpa::postprocess::apply_threshold;
use slpa::{evolve, extract_communities, Graph, GraphBuilder, Memories, Propagation, RunConfig, Threshold};

use common::{as_sets, random_graph, rng};

fn two_triangles(ids: [usize; 6]) -> Graph {
    let mut b = GraphBuilder::with_nodes(6);
    for tri in [[0, 1, 2], [3, 4, 5]] {
        for i in 0..3 {
            for j in i + 1..3 {
                b.add_edge(ids[tri[i]], ids[tri[j]]);
            }
        }
    }
    b.build().0
}

fn dominant(memories: &Memories, v: usize) -> u32 {
    let counts: BTreeMap<u32, u32> = memories.get(v).counts();
    let max = counts.values().copied().max().unwrap();
    counts.into_iter().find(|&(_, c)| c == max).unwrap().0
}

fn component_of(graph: &Graph, start: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &w in graph.neighbors(u) {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen
}

// A triangle listener hears two labels and picks each with probability equal
// to its share of the speakers' memories, so label shares behave like a
// Polya urn and need not reach a single dominant label within T = 100. The
// thresholded cover is what settles.
#[test]
fn triangles_are_recovered_as_communities() {
    let graph = two_triangles([0, 1, 2, 3, 4, 5]);
    let expected = BTreeSet::from([vec![0, 1, 2], vec![3, 4, 5]]);
    for r in [0.05, 0.1, 0.3] {
        let good = (0..100u64)
            .filter(|&seed| {
                let m = evolve(&graph, &RunConfig::new(100, seed).unwrap());
                let found = extract_communities(&graph, &m, Threshold::new(r).unwrap(), false);
                as_sets(&found.cover) == expected
            })
            .count();
        assert!(good >= 99, "r={r}: {good}/100");
    }
}

#[test]
fn labels_never_cross_between_triangles() {
    let graph = two_triangles([0, 1, 2, 3, 4, 5]);
    for seed in 0..20u64 {
        let m = evolve(&graph, &RunConfig::new(100, seed).unwrap());
        for v in 0..6 {
            let side = v / 3;
            assert!(m.get(v).counts().keys().all(|&l| l as usize / 3 == side));
            assert!(dominant(&m, v) as usize / 3 == side);
        }
    }
}

#[test]
fn relabeled_triangles_give_the_same_structure() {
    let base = two_triangles([0, 1, 2, 3, 4, 5]);
    let mut r = rng(5);
    let mut matches = 0;
    for seed in 0..100u64 {
        let mut perm = [0, 1, 2, 3, 4, 5];
        perm.shuffle(&mut r);
        let permuted = two_triangles(perm);
        let t = Threshold::new(0.3).unwrap();
        let a = extract_communities(&base, &evolve(&base, &RunConfig::new(100, seed).unwrap()), t, false);
        let b = extract_communities(&permuted, &evolve(&permuted, &RunConfig::new(100, seed).unwrap()), t, false);
        let mapped: BTreeSet<Vec<usize>> = b
            .cover
            .iter()
            .map(|c| {
                let mut back: Vec<usize> = c.iter().map(|&v| perm.iter().position(|&p| p == v).unwrap()).collect();
                back.sort_unstable();
                back
            })
            .collect();
        if mapped == as_sets(&a.cover) {
            matches += 1;
        }
    }
    assert!(matches >= 95, "{matches}/100");
}

#[test]
fn edgeless_graph_keeps_initial_memories() {
    let (graph, _) = GraphBuilder::with_nodes(5).build();
    let m = evolve(&graph, &RunConfig::new(30, 1).unwrap());
    for v in 0..5 {
        assert_eq!(m.get(v).counts(), BTreeMap::from([(v as u32, 1)]));
    }
}

#[test]
fn memory_text_round_trips() {
    let graph = random_graph(&mut rng(3), 15, 0.3);
    let m = evolve(&graph, &RunConfig::new(20, 9).unwrap());
    let back = Memories::from_text(&m.to_text(&graph), &graph).unwrap();
    for v in 0..graph.node_count() {
        assert_eq!(m.get(v).counts(), back.get(v).counts());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn same_seed_same_memories(seed in any::<u64>(), n in 1usize..25, t in 1usize..30) {
        let graph = random_graph(&mut rng(seed), n, 0.2);
        let a = evolve(&graph, &RunConfig::new(t, seed).unwrap());
        let b = evolve(&graph, &RunConfig::new(t, seed).unwrap());
        prop_assert_eq!(a.as_slice(), b.as_slice());
    }

    #[test]
    fn memory_grows_by_one_per_iteration(seed in any::<u64>(), n in 1usize..25, t in 1usize..20) {
        let graph = random_graph(&mut rng(seed), n, 0.15);
        let mut prop = Propagation::new(&graph, seed);
        for step in 1..=t {
            prop.step();
            let snapshot = prop.snapshot();
            for v in 0..n {
                let expected = if graph.degree(v) == 0 { 1 } else { step + 1 };
                prop_assert_eq!(snapshot.get(v).total(), expected);
                prop_assert_eq!(prop.memory(v).len(), expected);
            }
        }
        prop_assert_eq!(prop.iterations_completed(), t);
    }

    #[test]
    fn labels_stay_within_their_component(seed in any::<u64>(), n in 1usize..25) {
        let graph = random_graph(&mut rng(seed), n, 0.1);
        let m = evolve(&graph, &RunConfig::new(15, seed).unwrap());
        for v in 0..n {
            let comp = component_of(&graph, v);
            for label in m.get(v).counts().keys() {
                prop_assert!(comp.contains(&(*label as usize)));
            }
        }
    }

    #[test]
    fn raising_r_only_removes_labels(seed in any::<u64>(), n in 1usize..25, lo in 0.0f64..0.5, hi in 0.0f64..0.5) {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        let graph = random_graph(&mut rng(seed), n, 0.2);
        let m = evolve(&graph, &RunConfig::new(20, seed).unwrap());
        let a = apply_threshold(&m, Threshold::new(lo).unwrap());
        let b = apply_threshold(&m, Threshold::new(hi).unwrap());
        for (small, large) in b.iter().zip(&a) {
            prop_assert!(!small.is_empty());
            prop_assert!(small.iter().all(|l| large.contains(l)));
        }
    }
}
