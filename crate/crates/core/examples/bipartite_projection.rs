//! Project a small user/project network onto each side and detect
//! communities in the bipartite graph directly.

use slpa::cli::qov_per_side;
use slpa::{evolve, extract_communities, load_edge_list, project_bipartite, RunConfig, Side, Threshold};

const EDGES: &str = "\
ann alpha\nann beta\nbob alpha\nbob beta\ncat beta\n\
dan gamma\ndan delta\neve gamma\neve delta\nfay delta\ncat gamma\n";

/// Returns the projected edge counts per side and Q_ov on each side.
pub fn run_example() -> Vec<(Side, usize, Option<f64>)> {
    let (graph, _) = load_edge_list(EDGES, true).expect("two-colourable input");
    let memories = evolve(&graph, &RunConfig::new(100, 3).unwrap());
    let found = extract_communities(&graph, &memories, Threshold::new(0.2).unwrap(), false);
    let qov = qov_per_side(&graph, &found.cover).expect("graph has sides");
    qov.into_iter()
        .map(|(side, q)| (side, project_bipartite(&graph, side).unwrap().edge_count(), q))
        .collect()
}

#[allow(dead_code)]
fn main() {
    for (side, edges, q) in run_example() {
        println!("side {side}: {edges} projected edges, Q_ov {q:?}");
    }
}
