//! Undirected simple graphs with external node names, plus the text formats
//! used to move graphs, covers and node attributes in and out of the crate.
//!
//! Internal node ids are contiguous in `[0, n)` and assigned in order of first
//! appearance in the input. Every adjacency list is sorted and free of
//! duplicates and self-loops.

mod attributes;
mod cover;

pub use attributes::{load_attribute_table, AttributeTable};
pub use cover::{load_cover_file, overlap_report, write_cover, Cover};

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub type NodeId = usize;

/// Part of a bipartite graph a node belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::First => f.write_str("1"),
            Side::Second => f.write_str("2"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    sides: Option<Vec<Side>>,
    edge_count: usize,
}

/// What was dropped while normalizing input into a simple graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadSummary {
    pub duplicate_edges: usize,
    pub self_loops: usize,
}

impl Graph {
    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn neighbors(&self, node: NodeId) -> &[NodeId] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.adjacency[node].len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn mean_degree(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            2.0 * self.edge_count as f64 / self.node_count() as f64
        }
    }

    pub fn name(&self, node: NodeId) -> &str {
        &self.names[node]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Option<NodeId> {
        self.index.get(name).copied()
    }

    pub fn sides(&self) -> Option<&[Side]> {
        self.sides.as_deref()
    }

    pub fn side(&self, node: NodeId) -> Option<Side> {
        self.sides.as_ref().map(|s| s[node])
    }

    /// Edges as `(u, v)` pairs with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, adj)| {
            adj.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Tags each node with a side by 2-coloring every component. The lowest
    /// id of a component is placed on [`Side::First`].
    pub fn into_bipartite(mut self) -> Result<Graph> {
        let n = self.node_count();
        let mut color: Vec<Option<Side>> = vec![None; n];
        let mut queue = VecDeque::new();
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(Side::First);
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].expect("queued nodes are colored");
                for &v in &self.adjacency[u] {
                    match color[v] {
                        None => {
                            color[v] = Some(cu.other());
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => {
                            let (a, b) = if u < v { (u, v) } else { (v, u) };
                            return Err(Error::NotBipartite(
                                self.names[a].clone(),
                                self.names[b].clone(),
                            ));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        self.sides = Some(color.into_iter().map(|c| c.unwrap()).collect());
        Ok(self)
    }

    /// Attaches explicit side tags, failing if any edge stays within one side.
    pub fn with_sides(mut self, sides: Vec<Side>) -> Result<Graph> {
        if sides.len() != self.node_count() {
            return Err(Error::Parameter(format!(
                "{} side tags for {} nodes",
                sides.len(),
                self.node_count()
            )));
        }
        if let Some((u, v)) = self.edges().find(|&(u, v)| sides[u] == sides[v]) {
            return Err(Error::NotBipartite(
                self.names[u].clone(),
                self.names[v].clone(),
            ));
        }
        self.sides = Some(sides);
        Ok(self)
    }

    /// Nodes sorted by id whose side tag equals `side`.
    pub fn side_nodes(&self, side: Side) -> Result<Vec<NodeId>> {
        let sides = self.sides.as_ref().ok_or(Error::MissingSides)?;
        Ok((0..self.node_count()).filter(|&i| sides[i] == side).collect())
    }
}

/// Incremental construction of a [`Graph`] from named nodes and edges.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    names: Vec<String>,
    index: HashMap<String, NodeId>,
    edges: Vec<(NodeId, NodeId)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builder with nodes named `"0"`, `"1"`, ... `n-1`.
    pub fn with_nodes(n: usize) -> Self {
        let mut b = Self::new();
        for i in 0..n {
            b.add_node(&i.to_string());
        }
        b
    }

    pub fn add_node(&mut self, name: &str) -> NodeId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = self.names.len();
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), id);
        id
    }

    pub fn add_edge(&mut self, u: NodeId, v: NodeId) {
        assert!(u < self.names.len() && v < self.names.len(), "edge endpoint out of range");
        self.edges.push((u, v));
    }

    pub fn add_named_edge(&mut self, a: &str, b: &str) {
        let u = self.add_node(a);
        let v = self.add_node(b);
        self.edges.push((u, v));
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn build(self) -> (Graph, LoadSummary) {
        let n = self.names.len();
        let mut summary = LoadSummary::default();
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in self.edges {
            if u == v {
                summary.self_loops += 1;
                continue;
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut half_edges = 0;
        let mut removed = 0;
        for adj in &mut adjacency {
            adj.sort_unstable();
            let before = adj.len();
            adj.dedup();
            removed += before - adj.len();
            half_edges += adj.len();
        }
        summary.duplicate_edges = removed / 2;
        let graph = Graph {
            adjacency,
            names: self.names,
            index: self.index,
            sides: None,
            edge_count: half_edges / 2,
        };
        (graph, summary)
    }
}

/// Parses a whitespace-separated edge list. `#` starts a comment line and
/// blank lines are skipped. With `bipartite`, sides are inferred by
/// 2-coloring.
pub fn load_edge_list(text: &str, bipartite: bool) -> Result<(Graph, LoadSummary)> {
    let mut builder = GraphBuilder::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => builder.add_named_edge(a, b),
            _ => {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("expected two node names, found {line:?}"),
                })
            }
        }
    }
    let (graph, summary) = builder.build();
    let graph = if bipartite {
        graph.into_bipartite()?
    } else {
        graph
    };
    Ok((graph, summary))
}

/// Serializes the normalized edge set, one `u v` line per edge.
pub fn write_edge_list(graph: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in graph.edges() {
        out.push_str(graph.name(u));
        out.push(' ');
        out.push_str(graph.name(v));
        out.push('\n');
    }
    out
}

/// One-mode projection onto `side`: two nodes of that side are joined iff
/// they share at least one neighbor. Node names carry over; ids are
/// reassigned in ascending order of the original ids.
pub fn project_bipartite(graph: &Graph, side: Side) -> Result<Graph> {
    let members = graph.side_nodes(side)?;
    let mut builder = GraphBuilder::new();
    let mut local = vec![usize::MAX; graph.node_count()];
    for &u in &members {
        local[u] = builder.add_node(graph.name(u));
    }
    for &u in &members {
        for &hub in graph.neighbors(u) {
            for &v in graph.neighbors(hub) {
                if v > u {
                    builder.add_edge(local[u], local[v]);
                }
            }
        }
    }
    let (projected, _) = builder.build();
    Ok(projected)
}
