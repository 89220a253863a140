//! Overlapping community detection with speaker-listener label propagation.
//!
//! The pipeline is: load or generate a [`Graph`], run
//! [`propagation::evolve`] to fill every node's label memory, then
//! [`postprocess::extract_communities`] to threshold the memories into a
//! [`Cover`]. The [`metrics`] module scores covers against references or
//! against the graph, and [`synth`] builds seeded benchmark graphs.
//!
//! ```
//! use slpa::{evolve, extract_communities, load_edge_list, RunConfig, Threshold};
//!
//! let (graph, _) = load_edge_list("a b\nb c\nc a\nc d\nd e\ne f\nf d\n", false).unwrap();
//! let memories = evolve(&graph, &RunConfig::new(100, 7).unwrap());
//! let found = extract_communities(&graph, &memories, Threshold::new(0.2).unwrap(), false);
//! assert!(found.cover.covers_all(graph.node_count()));
//! ```

pub mod cli;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod postprocess;
pub mod propagation;
pub mod synth;

pub use error::{Error, Result};
pub use graph::{
    load_attribute_table, load_cover_file, load_edge_list, project_bipartite, write_cover,
    write_edge_list, AttributeTable, Cover, Graph, GraphBuilder, LoadSummary, NodeId, Side,
};
pub use postprocess::{extract_communities, LabeledCover, Threshold};
pub use propagation::{evolve, Label, LabelMemory, Memories, Propagation, RunConfig};
