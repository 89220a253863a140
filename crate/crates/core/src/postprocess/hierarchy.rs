use std::collections::HashMap;
use std::fmt::Write as _;

use super::strict_supersets;
use crate::error::{Error, Result};
use crate::graph::{AttributeTable, Cover, Graph, NodeId};

/// A community with more than one minimal strict superset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambiguity {
    pub child: usize,
    pub candidates: Vec<usize>,
    pub chosen: usize,
}

/// Nesting of the communities of a cover. Each community points at a
/// smallest strict superset; communities without one are roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentForest {
    communities: Vec<Vec<NodeId>>,
    parents: Vec<Option<usize>>,
    ambiguities: Vec<Ambiguity>,
}

impl ContainmentForest {
    pub fn len(&self) -> usize {
        self.communities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.communities.is_empty()
    }

    pub fn community(&self, i: usize) -> &[NodeId] {
        &self.communities[i]
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.parents[i]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parents
    }

    pub fn ambiguities(&self) -> &[Ambiguity] {
        &self.ambiguities
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.parents[i].is_none()).collect()
    }

    pub fn children(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.parents[j] == Some(i)).collect()
    }

    /// Indices from the root down to `i`.
    pub fn path(&self, i: usize) -> Vec<usize> {
        let mut path = vec![i];
        let mut cur = i;
        while let Some(p) = self.parents[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// Levels in the tallest tree; 0 for an empty forest.
    pub fn height(&self) -> usize {
        (0..self.len()).map(|i| self.path(i).len()).max().unwrap_or(0)
    }
}

/// Builds the containment forest. When several minimal strict supersets
/// exist, the largest wins, then the lexicographically smallest node list,
/// and the choice is recorded as an [`Ambiguity`].
pub fn containment_forest(cover: &Cover) -> ContainmentForest {
    let supersets = strict_supersets(cover);
    let comms = cover.communities();
    let mut parents = Vec::with_capacity(comms.len());
    let mut ambiguities = Vec::new();

    for (child, sup) in supersets.iter().enumerate() {
        // minimal: no other superset of the child sits strictly inside it
        let minimal: Vec<usize> = sup
            .iter()
            .copied()
            .filter(|&s| !sup.iter().any(|&t| t != s && supersets[t].contains(&s)))
            .collect();
        let chosen = minimal.iter().copied().min_by(|&a, &b| {
            comms[b]
                .len()
                .cmp(&comms[a].len())
                .then_with(|| comms[a].cmp(&comms[b]))
        });
        if minimal.len() > 1 {
            let mut candidates = minimal.clone();
            candidates.sort_unstable();
            ambiguities.push(Ambiguity {
                child,
                candidates,
                chosen: chosen.unwrap(),
            });
        }
        parents.push(chosen);
    }

    ContainmentForest {
        communities: comms.to_vec(),
        parents,
        ambiguities,
    }
}

/// Attribute that best explains a community.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributeMatch {
    pub attribute: usize,
    pub name: String,
    /// Largest share of members holding one value of the attribute.
    pub score: f64,
}

/// Scores every attribute by the largest fraction of members sharing one
/// value (missing values never match) and returns the best, first attribute
/// on ties.
pub fn attribute_match(community: &[NodeId], table: &AttributeTable) -> Result<AttributeMatch> {
    if community.is_empty() {
        return Err(Error::Contract("cannot match an empty community".into()));
    }
    if table.attributes().is_empty() {
        return Err(Error::Contract("attribute table has no attributes".into()));
    }
    let size = community.len() as f64;
    let mut best: Option<(usize, usize)> = None;
    for a in 0..table.attributes().len() {
        let mut tally: HashMap<&str, usize> = HashMap::new();
        for &v in community {
            if let Some(value) = table.value(v, a) {
                *tally.entry(value).or_insert(0) += 1;
            }
        }
        let top = tally.values().copied().max().unwrap_or(0);
        if best.is_none_or(|(_, b)| top > b) {
            best = Some((a, top));
        }
    }
    let (attribute, top) = best.expect("at least one attribute");
    Ok(AttributeMatch {
        attribute,
        name: table.attributes()[attribute].clone(),
        score: top as f64 / size,
    })
}

/// Indented tree, one community per line:
/// `C1-25 size=12 members=... best=grade (0.92)`.
///
/// Community ids are 1-based positions in the cover; each line's name is the
/// dash-joined path of ids from its root.
pub fn render_hierarchy(
    forest: &ContainmentForest,
    graph: &Graph,
    attributes: Option<&AttributeTable>,
) -> Result<String> {
    let mut out = String::new();
    let mut stack: Vec<usize> = forest.roots().into_iter().rev().collect();
    while let Some(i) = stack.pop() {
        let path = forest.path(i);
        let name = path
            .iter()
            .map(|p| (p + 1).to_string())
            .collect::<Vec<_>>()
            .join("-");
        let members = forest
            .community(i)
            .iter()
            .map(|&v| graph.name(v))
            .collect::<Vec<_>>()
            .join(",");
        let _ = write!(
            out,
            "{}C{} size={} members={}",
            "  ".repeat(path.len() - 1),
            name,
            forest.community(i).len(),
            members
        );
        if let Some(table) = attributes {
            let m = attribute_match(forest.community(i), table)?;
            let _ = write!(out, " best={} ({:.2})", m.name, m.score);
        }
        out.push('\n');
        stack.extend(forest.children(i).into_iter().rev());
    }
    for a in forest.ambiguities() {
        let _ = writeln!(
            out,
            "# C{} has {} minimal supersets; attached under C{}",
            a.child + 1,
            a.candidates.len(),
            a.chosen + 1
        );
    }
    Ok(out)
}
