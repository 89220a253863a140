//! Agreement between covers found with different seeds on the same graph.

use slpa::metrics::{extended_nmi, omega_index, overlapping_modularity};
use slpa::{evolve, extract_communities, load_edge_list, Cover, RunConfig, Threshold};

const KARATE: &str = include_str!("../data/karate.txt");

/// Returns (seed, Q_ov, NMI and omega against seed 0) for seeds 1..5.
pub fn run_example() -> Vec<(u64, f64, f64, f64)> {
    let (graph, _) = load_edge_list(KARATE, false).unwrap();
    let n = graph.node_count();
    let cover = |seed| -> Cover {
        let memories = evolve(&graph, &RunConfig::new(100, seed).unwrap());
        extract_communities(&graph, &memories, Threshold::new(0.1).unwrap(), false).cover
    };
    let reference = cover(0);
    (1..5)
        .map(|seed| {
            let c = cover(seed);
            (
                seed,
                overlapping_modularity(&graph, &c).unwrap(),
                extended_nmi(&c, &reference, n).unwrap(),
                omega_index(&c, &reference, n).unwrap_or(f64::NAN),
            )
        })
        .collect()
}

#[allow(dead_code)]
fn main() {
    for (seed, q, nmi, omega) in run_example() {
        println!("seed {seed}: Q_ov {q:.3}, NMI vs seed 0 {nmi:.3}, omega {omega:.3}");
    }
}
