//! Overlapping communities of the karate club network at a few thresholds.

use slpa::{evolve, extract_communities, load_edge_list, RunConfig, Threshold};

const KARATE: &str = include_str!("../data/karate.txt");

/// Returns (threshold, community count, overlapping node count) per threshold.
pub fn run_example() -> Vec<(f64, usize, usize)> {
    let (graph, _) = load_edge_list(KARATE, false).expect("bundled data parses");
    let memories = evolve(&graph, &RunConfig::new(100, 7).expect("valid config"));
    [0.05, 0.1, 0.3, 0.5]
        .into_iter()
        .map(|r| {
            let found = extract_communities(&graph, &memories, Threshold::new(r).unwrap(), false);
            let overlapping = found.cover.overlapping_nodes(graph.node_count()).len();
            (r, found.cover.len(), overlapping)
        })
        .collect()
}

#[allow(dead_code)]
fn main() {
    for (r, communities, overlapping) in run_example() {
        println!("r={r}: {communities} communities, {overlapping} overlapping nodes");
    }
}
