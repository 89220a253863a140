use std::collections::HashSet;

use super::{Graph, NodeId};
use crate::error::{Error, Result};

/// A set of communities over the nodes of one graph. Communities are stored
/// as sorted node-id lists; communities may overlap and may be nested, but
/// never repeat.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cover {
    communities: Vec<Vec<NodeId>>,
}

impl Cover {
    /// Builds a cover over `node_count` nodes. Each community is sorted and
    /// deduplicated; repeated communities keep their first occurrence.
    pub fn new(node_count: usize, communities: Vec<Vec<NodeId>>) -> Result<Cover> {
        let mut seen = HashSet::new();
        let mut kept = Vec::with_capacity(communities.len());
        for (i, mut c) in communities.into_iter().enumerate() {
            if c.is_empty() {
                return Err(Error::Contract(format!("community {i} is empty")));
            }
            c.sort_unstable();
            c.dedup();
            if let Some(&bad) = c.iter().find(|&&v| v >= node_count) {
                return Err(Error::Contract(format!(
                    "community {i} holds node {bad} outside [0, {node_count})"
                )));
            }
            if seen.insert(c.clone()) {
                kept.push(c);
            }
        }
        Ok(Cover { communities: kept })
    }

    /// Every node of `0..n` in its own community.
    pub fn singletons(n: usize) -> Cover {
        Cover {
            communities: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.communities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.communities.is_empty()
    }

    pub fn communities(&self) -> &[Vec<NodeId>] {
        &self.communities
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vec<NodeId>> {
        self.communities.iter()
    }

    pub fn into_communities(self) -> Vec<Vec<NodeId>> {
        self.communities
    }

    /// Number of communities each node of `0..n` belongs to.
    pub fn membership_counts(&self, n: usize) -> Vec<usize> {
        let mut counts = vec![0; n];
        for c in &self.communities {
            for &v in c {
                counts[v] += 1;
            }
        }
        counts
    }

    /// Nodes belonging to two or more communities.
    pub fn overlapping_nodes(&self, n: usize) -> Vec<NodeId> {
        self.membership_counts(n)
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c >= 2)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn covers_all(&self, n: usize) -> bool {
        self.membership_counts(n).iter().all(|&c| c >= 1)
    }

    /// True when every node of `0..n` is in exactly one community.
    pub fn is_partition(&self, n: usize) -> bool {
        self.membership_counts(n).iter().all(|&c| c == 1)
    }

    /// Communities restricted to `nodes`, renumbered to positions within
    /// `nodes`. Communities left empty are dropped.
    pub fn restrict(&self, nodes: &[NodeId], node_count: usize) -> Cover {
        let mut local = vec![usize::MAX; node_count];
        for (i, &v) in nodes.iter().enumerate() {
            local[v] = i;
        }
        let restricted = self
            .communities
            .iter()
            .map(|c| {
                c.iter()
                    .filter(|&&v| local[v] != usize::MAX)
                    .map(|&v| local[v])
                    .collect::<Vec<_>>()
            })
            .filter(|c| !c.is_empty())
            .collect();
        Cover::new(nodes.len(), restricted).expect("restricted ids are in range")
    }
}

/// Reads one community per line, resolving whitespace-separated node names
/// against `graph`. `#` lines are comments.
pub fn load_cover_file(text: &str, graph: &Graph) -> Result<Cover> {
    let mut communities = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            return Err(Error::Format {
                line: i + 1,
                message: "empty community".into(),
            });
        }
        let members = line
            .split_whitespace()
            .map(|name| {
                graph.id(name).ok_or_else(|| Error::UnknownNode {
                    line: i + 1,
                    name: name.to_owned(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        communities.push(members);
    }
    Cover::new(graph.node_count(), communities)
}

/// One community per line as space-separated external names.
pub fn write_cover(cover: &Cover, graph: &Graph) -> String {
    let mut out = String::new();
    for c in cover.iter() {
        let names: Vec<&str> = c.iter().map(|&v| graph.name(v)).collect();
        out.push_str(&names.join(" "));
        out.push('\n');
    }
    out
}

/// `name count` lines for nodes in at least two communities, by node id.
pub fn overlap_report(cover: &Cover, graph: &Graph) -> String {
    let counts = cover.membership_counts(graph.node_count());
    let mut out = String::new();
    for (v, &c) in counts.iter().enumerate() {
        if c >= 2 {
            out.push_str(&format!("{} {}\n", graph.name(v), c));
        }
    }
    out
}
