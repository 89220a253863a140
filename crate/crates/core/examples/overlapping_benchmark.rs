//! Plant an overlapping cover, detect it again and score the result.

use slpa::metrics::{extended_nmi, omega_index, overlap_fscore};
use slpa::synth::{planted_cover_graph, PlantedConfig};
use slpa::{evolve, extract_communities, RunConfig, Threshold};

pub struct Scores {
    pub nmi: f64,
    pub omega: f64,
    pub f_score: f64,
}

pub fn run_example() -> Scores {
    // ten communities of 33 nodes, 30 nodes in two communities each
    let cfg = PlantedConfig::uniform(10, 33, 30, 2, 0.3, 0.1, 4);
    let (graph, truth) = planted_cover_graph(&cfg).expect("feasible parameters");
    let n = graph.node_count();
    let memories = evolve(&graph, &RunConfig::new(100, 104).unwrap());
    let found = extract_communities(&graph, &memories, Threshold::new(0.05).unwrap(), false);
    Scores {
        nmi: extended_nmi(&found.cover, &truth, n).unwrap(),
        omega: omega_index(&found.cover, &truth, n).unwrap(),
        f_score: overlap_fscore(&found.cover, &truth, n).f_score_f64(),
    }
}

#[allow(dead_code)]
fn main() {
    let s = run_example();
    println!("NMI {:.3}, omega {:.3}, overlap F {:.3}", s.nmi, s.omega, s.f_score);
}
