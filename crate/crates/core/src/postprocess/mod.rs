//! Turning label memories into crisp communities.
//!
//! Each memory becomes a distribution over labels; labels whose probability
//! falls strictly below the threshold `r` are dropped, and the nodes sharing a
//! label are split into connected components, each of which is one
//! community. Everything here is deterministic given the memories.

mod hierarchy;

pub use hierarchy::{
    attribute_match, containment_forest, render_hierarchy, Ambiguity, AttributeMatch,
    ContainmentForest,
};

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::graph::{Cover, Graph, NodeId};
use crate::propagation::{Label, LabelMemory, Memories};

/// Post-processing cutoff `r`. Values in `[0, 0.5)` keep every label seen
/// with probability at least `r`; `r >= 0.5` keeps exactly one label per node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Threshold {
    r: f64,
}

impl Threshold {
    pub const DISJOINT: Threshold = Threshold { r: 0.5 };

    pub fn new(r: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&r) {
            return Err(Error::Parameter(format!("threshold {r} outside [0, 0.5]")));
        }
        Ok(Threshold { r })
    }

    /// Like [`Threshold::new`] but also accepts `r > 0.5`, all of which
    /// behave as the disjoint mode.
    pub fn allowing_disjoint(r: f64) -> Result<Self> {
        if r.is_nan() || r < 0.0 {
            return Err(Error::Parameter(format!("threshold {r} is negative")));
        }
        Ok(Threshold { r })
    }

    pub fn value(self) -> f64 {
        self.r
    }

    pub fn is_disjoint(self) -> bool {
        self.r >= 0.5
    }

    /// `0.01, 0.02, ..., 0.10`.
    pub fn default_sweep() -> Vec<Threshold> {
        (1..=10).map(|i| Threshold { r: i as f64 / 100.0 }).collect()
    }
}

/// Label probabilities `count / total`.
pub fn membership_distribution(memory: &LabelMemory) -> BTreeMap<Label, f64> {
    let total = memory.total() as f64;
    memory
        .counts()
        .into_iter()
        .map(|(l, c)| (l, c as f64 / total))
        .collect()
}

/// Labels whose probability is at least `r`, before any fallback. May be
/// empty.
pub fn surviving_labels(memory: &LabelMemory, r: f64) -> Vec<Label> {
    let total = memory.total() as f64;
    memory
        .counts()
        .into_iter()
        .filter(|&(_, c)| c as f64 / total >= r)
        .map(|(l, _)| l)
        .collect()
}

fn dominant_label(memory: &LabelMemory) -> Label {
    // BTreeMap iterates labels ascending, so the first maximum wins ties.
    let mut best = (0, Label::MAX);
    for (l, c) in memory.counts() {
        if c > best.0 {
            best = (c, l);
        }
    }
    best.1
}

/// Surviving label set per node, ascending. A node whose labels all fall
/// below the threshold keeps its most probable one; in disjoint mode every
/// node keeps only that label.
pub fn apply_threshold(memories: &Memories, threshold: Threshold) -> Vec<Vec<Label>> {
    memories
        .iter()
        .map(|memory| {
            if threshold.is_disjoint() {
                return vec![dominant_label(memory)];
            }
            let kept = surviving_labels(memory, threshold.value());
            if kept.is_empty() {
                vec![dominant_label(memory)]
            } else {
                kept
            }
        })
        .collect()
}

/// A cover where each community remembers the label it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledCover {
    pub cover: Cover,
    /// Smallest label whose component produced each community.
    pub labels: Vec<Label>,
}

impl LabeledCover {
    pub fn overlapping_nodes(&self, n: usize) -> Vec<NodeId> {
        self.cover.overlapping_nodes(n)
    }

    /// Drops communities strictly contained in another.
    pub fn prune_subsets(self) -> LabeledCover {
        let keep = maximal_indices(&self.cover);
        let mut communities = self.cover.into_communities();
        let labels = keep.iter().map(|&i| self.labels[i]).collect();
        let kept = keep
            .iter()
            .map(|&i| std::mem::take(&mut communities[i]))
            .collect::<Vec<_>>();
        let n = kept.iter().flatten().max().map_or(0, |&m| m + 1);
        LabeledCover {
            cover: Cover::new(n, kept).expect("pruning keeps valid communities"),
            labels,
        }
    }
}

/// Connected components of each label's induced subgraph become
/// communities. Identical node sets from different labels are merged.
pub fn group_connected(graph: &Graph, node_labels: &[Vec<Label>]) -> LabeledCover {
    let n = graph.node_count();
    assert_eq!(node_labels.len(), n, "one label set per node");

    let mut by_label: BTreeMap<Label, Vec<NodeId>> = BTreeMap::new();
    for (v, labels) in node_labels.iter().enumerate() {
        for &l in labels {
            by_label.entry(l).or_default().push(v);
        }
    }

    // stamp[v] == group id marks v as carrying the current label
    let mut stamp = vec![usize::MAX; n];
    let mut visited = vec![usize::MAX; n];
    let mut seen: HashMap<Vec<NodeId>, usize> = HashMap::new();
    let mut communities = Vec::new();
    let mut labels = Vec::new();
    let mut stack = Vec::new();

    for (group, (&label, members)) in by_label.iter().enumerate() {
        for &v in members {
            stamp[v] = group;
        }
        for &start in members {
            if visited[start] == group {
                continue;
            }
            visited[start] = group;
            stack.push(start);
            let mut component = Vec::new();
            while let Some(u) = stack.pop() {
                component.push(u);
                for &w in graph.neighbors(u) {
                    if stamp[w] == group && visited[w] != group {
                        visited[w] = group;
                        stack.push(w);
                    }
                }
            }
            component.sort_unstable();
            if !seen.contains_key(&component) {
                seen.insert(component.clone(), communities.len());
                communities.push(component);
                labels.push(label);
            }
        }
    }

    LabeledCover {
        cover: Cover::new(n, communities).expect("components are valid communities"),
        labels,
    }
}

fn is_subset(small: &[NodeId], large: &[NodeId]) -> bool {
    let mut it = large.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// For each community, the indices of communities strictly containing it.
pub(crate) fn strict_supersets(cover: &Cover) -> Vec<Vec<usize>> {
    let mut containing: HashMap<NodeId, Vec<usize>> = HashMap::new();
    for (i, c) in cover.iter().enumerate() {
        for &v in c {
            containing.entry(v).or_default().push(i);
        }
    }
    cover
        .iter()
        .enumerate()
        .map(|(i, c)| {
            containing[&c[0]]
                .iter()
                .copied()
                .filter(|&j| j != i && cover.communities()[j].len() > c.len())
                .filter(|&j| is_subset(c, &cover.communities()[j]))
                .collect()
        })
        .collect()
}

fn maximal_indices(cover: &Cover) -> Vec<usize> {
    strict_supersets(cover)
        .iter()
        .enumerate()
        .filter(|(_, sup)| sup.is_empty())
        .map(|(i, _)| i)
        .collect()
}

/// Removes every community that is a strict subset of another, preserving
/// the order of the rest.
pub fn prune_subsets(cover: &Cover) -> Cover {
    let keep = maximal_indices(cover);
    let n = cover.iter().flatten().max().map_or(0, |&m| m + 1);
    Cover::new(n, keep.iter().map(|&i| cover.communities()[i].clone()).collect())
        .expect("subset of a valid cover")
}

/// Full post-processing of one set of memories.
pub fn extract_communities(
    graph: &Graph,
    memories: &Memories,
    threshold: Threshold,
    keep_subsets: bool,
) -> LabeledCover {
    let labels = apply_threshold(memories, threshold);
    let grouped = group_connected(graph, &labels);
    if keep_subsets {
        grouped
    } else {
        grouped.prune_subsets()
    }
}
