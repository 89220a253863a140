//! Overlapping modularity with belonging coefficients.
//!
//! Node `i` belongs to community `c` with strength `alpha(i, c)`, each row
//! summing to 1. An arc `(i, j)` belongs to `c` with strength
//! `F(alpha_ic, alpha_jc) = g(alpha_ic) * g(alpha_jc)`, where
//! `g(x) = 1 / (1 + exp(-(2 p x - p)))` and `p` is the steepness. The null
//! model weights arc `(i, j)` by the average belonging of all arcs leaving
//! `i` times that of all arcs entering `j`:
//!
//! ```text
//! Q = 1/L sum_c sum_ij [ F(a_ic, a_jc) A_ij - b_out(i,c) k_i b_in(j,c) k_j / L ]
//! b_out(i,c) = 1/n sum_j F(a_ic, a_jc)     b_in(j,c) = 1/n sum_i F(a_ic, a_jc)
//! ```
//!
//! An undirected edge counts as two arcs, so `L = 2m` and `k` is the degree.

use crate::error::{Error, Result};
use crate::graph::{Cover, Graph, NodeId};

/// Steepness `p` of the belonging transform.
pub const DEFAULT_STEEPNESS: f64 = 30.0;

/// Sparse node-by-community belonging coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct BelongingMatrix {
    community_count: usize,
    rows: Vec<Vec<(usize, f64)>>,
}

impl BelongingMatrix {
    /// `alpha(i, c) = 1 / (number of communities of i)` for `i` in `c`.
    /// Every node must belong to at least one community.
    pub fn uniform(cover: &Cover, n: usize) -> Result<Self> {
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for (c, members) in cover.iter().enumerate() {
            for &v in members {
                if v >= n {
                    return Err(Error::Contract(format!("node {v} outside [0, {n})")));
                }
                rows[v].push((c, 0.0));
            }
        }
        for (v, row) in rows.iter_mut().enumerate() {
            if row.is_empty() {
                return Err(Error::Contract(format!("node {v} belongs to no community")));
            }
            let share = 1.0 / row.len() as f64;
            for entry in row.iter_mut() {
                entry.1 = share;
            }
        }
        Ok(BelongingMatrix {
            community_count: cover.len(),
            rows,
        })
    }

    /// Explicit coefficients; each row must be non-negative and sum to 1.
    pub fn from_rows(community_count: usize, rows: Vec<Vec<(usize, f64)>>) -> Result<Self> {
        for (v, row) in rows.iter().enumerate() {
            let sum: f64 = row.iter().map(|e| e.1).sum();
            if row.iter().any(|&(c, a)| c >= community_count || !(0.0..=1.0).contains(&a))
                || (sum - 1.0).abs() > 1e-12
            {
                return Err(Error::Parameter(format!(
                    "belonging row of node {v} is not a distribution"
                )));
            }
        }
        Ok(BelongingMatrix {
            community_count,
            rows,
        })
    }

    pub fn node_count(&self) -> usize {
        self.rows.len()
    }

    pub fn community_count(&self) -> usize {
        self.community_count
    }

    pub fn alpha(&self, node: NodeId, community: usize) -> f64 {
        self.rows[node]
            .iter()
            .find(|e| e.0 == community)
            .map_or(0.0, |e| e.1)
    }

    pub fn row(&self, node: NodeId) -> &[(usize, f64)] {
        &self.rows[node]
    }
}

/// `g(x)`, the per-endpoint factor of the edge belonging function.
pub fn belonging_transform(alpha: f64, steepness: f64) -> f64 {
    1.0 / (1.0 + (-(2.0 * steepness * alpha - steepness)).exp())
}

/// Overlapping modularity of `cover` with uniform belonging coefficients and
/// [`DEFAULT_STEEPNESS`].
pub fn overlapping_modularity(graph: &Graph, cover: &Cover) -> Result<f64> {
    let belonging = BelongingMatrix::uniform(cover, graph.node_count())?;
    overlapping_modularity_with(graph, &belonging, DEFAULT_STEEPNESS)
}

/// Overlapping modularity for explicit coefficients. Runs in
/// `O(sum over communities of member degrees)`: every node outside `c` has
/// the same factor `g(0)`, so sums over all nodes split into a constant part
/// and a correction over members.
pub fn overlapping_modularity_with(
    graph: &Graph,
    belonging: &BelongingMatrix,
    steepness: f64,
) -> Result<f64> {
    let n = graph.node_count();
    if belonging.node_count() != n {
        return Err(Error::Contract(format!(
            "belonging matrix has {} rows for {n} nodes",
            belonging.node_count()
        )));
    }
    let arcs = 2.0 * graph.edge_count() as f64;
    if graph.edge_count() == 0 {
        return Err(Error::UndefinedScore("modularity needs at least one edge".into()));
    }
    let g0 = belonging_transform(0.0, steepness);

    let mut members: Vec<Vec<(NodeId, f64)>> = vec![Vec::new(); belonging.community_count()];
    for v in 0..n {
        for &(c, a) in belonging.row(v) {
            members[c].push((v, belonging_transform(a, steepness) - g0));
        }
    }

    // excess[v] holds g(alpha_vc) - g0 while community c is being scored
    let mut excess = vec![0.0f64; n];
    let mut q = 0.0;
    for comm in &members {
        for &(v, d) in comm {
            excess[v] = d;
        }
        let mut weighted_degree = 0.0;
        let mut excess_sum = 0.0;
        let mut inner = 0.0;
        for &(v, d) in comm {
            let k = graph.degree(v) as f64;
            weighted_degree += d * k;
            excess_sum += d;
            let neighbor_excess: f64 = graph.neighbors(v).iter().map(|&w| excess[w]).sum();
            inner += d * neighbor_excess;
        }
        let edge_term = g0 * g0 * arcs + 2.0 * g0 * weighted_degree + inner;
        let strength = g0 * arcs + weighted_degree;
        let mean_g = g0 + excess_sum / n as f64;
        q += edge_term - mean_g * mean_g * strength * strength / arcs;
        for &(v, _) in comm {
            excess[v] = 0.0;
        }
    }
    Ok(q / arcs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;

    fn two_k4() -> Graph {
        let mut b = GraphBuilder::with_nodes(8);
        for base in [0, 4] {
            for i in 0..4 {
                for j in i + 1..4 {
                    b.add_edge(base + i, base + j);
                }
            }
        }
        b.build().0
    }

    #[test]
    fn cliques_beat_the_whole_graph() {
        let g = two_k4();
        let split = Cover::new(8, vec![(0..4).collect(), (4..8).collect()]).unwrap();
        let whole = Cover::new(8, vec![(0..8).collect()]).unwrap();
        let qs = overlapping_modularity(&g, &split).unwrap();
        let qw = overlapping_modularity(&g, &whole).unwrap();
        assert!(qs > qw, "{qs} vs {qw}");
        // crisp cover: edge term ~1, null term ~ 2 * (1/2)^2 * (1/2)^2
        assert!((qs - 0.875).abs() < 1e-9, "{qs}");
        assert!(qw.abs() < 1e-9, "{qw}");
    }

    #[test]
    fn no_edges_is_undefined() {
        let (g, _) = GraphBuilder::with_nodes(3).build();
        assert!(matches!(
            overlapping_modularity(&g, &Cover::singletons(3)),
            Err(Error::UndefinedScore(_))
        ));
    }

    #[test]
    fn uncovered_node_rejected() {
        let g = two_k4();
        let partial = Cover::new(8, vec![(0..4).collect()]).unwrap();
        assert!(overlapping_modularity(&g, &partial).is_err());
    }

    #[test]
    fn uniform_rows_sum_to_one() {
        let c = Cover::new(3, vec![vec![0, 1], vec![1, 2], vec![1]]).unwrap();
        let b = BelongingMatrix::uniform(&c, 3).unwrap();
        for v in 0..3 {
            let s: f64 = b.row(v).iter().map(|e| e.1).sum();
            assert!((s - 1.0).abs() < 1e-12);
        }
        assert_eq!(b.alpha(1, 2), 1.0 / 3.0);
        assert_eq!(b.alpha(0, 1), 0.0);
    }

    #[test]
    fn from_rows_validates() {
        assert!(BelongingMatrix::from_rows(2, vec![vec![(0, 0.5), (1, 0.4)]]).is_err());
        assert!(BelongingMatrix::from_rows(1, vec![vec![(3, 1.0)]]).is_err());
        assert!(BelongingMatrix::from_rows(2, vec![vec![(0, 0.5), (1, 0.5)]]).is_ok());
    }
}
