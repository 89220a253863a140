//! Seeded synthetic graphs: planted overlapping communities with a tunable
//! mixing fraction, and uniform random graphs for scaling runs.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Cover, Graph, GraphBuilder, NodeId};

/// Parameters of a planted-overlap benchmark.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedConfig {
    pub n: usize,
    pub community_sizes: Vec<usize>,
    /// Number of nodes placed in several communities.
    pub overlapping_nodes: usize,
    /// Communities each overlapping node joins.
    pub memberships: usize,
    /// Probability of an edge between two members of a community.
    pub p_in: f64,
    /// Target mean fraction of a node's edges leading to nodes it shares no
    /// community with.
    pub mu: f64,
    pub seed: u64,
}

impl PlantedConfig {
    /// `count` communities of `size` nodes with overlap spread evenly;
    /// `n` is derived from the membership arithmetic.
    pub fn uniform(
        count: usize,
        size: usize,
        overlapping_nodes: usize,
        memberships: usize,
        p_in: f64,
        mu: f64,
        seed: u64,
    ) -> Self {
        let slots = count * size;
        let extra = overlapping_nodes * memberships.saturating_sub(1);
        PlantedConfig {
            n: slots.saturating_sub(extra),
            community_sizes: vec![size; count],
            overlapping_nodes,
            memberships,
            p_in,
            mu,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Config(m));
        if self.overlapping_nodes > self.n {
            return fail(format!(
                "{} overlapping nodes exceed n = {}",
                self.overlapping_nodes, self.n
            ));
        }
        if self.memberships < 2 {
            return fail("overlapping nodes need at least 2 memberships".into());
        }
        if self.overlapping_nodes > 0 && self.memberships > self.community_sizes.len() {
            return fail(format!(
                "{} memberships but only {} communities",
                self.memberships,
                self.community_sizes.len()
            ));
        }
        if self.community_sizes.contains(&0) {
            return fail("community sizes must be positive".into());
        }
        let slots: usize = self.community_sizes.iter().sum();
        let want = self.n + self.overlapping_nodes * (self.memberships - 1);
        if slots != want {
            return fail(format!(
                "community sizes sum to {slots}, expected n + O_n (O_m - 1) = {want}"
            ));
        }
        if !(0.0..1.0).contains(&self.mu) {
            return fail(format!("mixing fraction {} outside [0, 1)", self.mu));
        }
        if !(self.p_in > 0.0 && self.p_in <= 1.0) {
            return fail(format!("p_in {} outside (0, 1]", self.p_in));
        }
        Ok(())
    }
}

fn assign_memberships(cfg: &PlantedConfig, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<NodeId>>> {
    let k = cfg.community_sizes.len();
    let mut capacity = cfg.community_sizes.clone();
    let mut communities: Vec<Vec<NodeId>> = vec![Vec::new(); k];

    let mut nodes: Vec<NodeId> = (0..cfg.n).collect();
    nodes.shuffle(rng);
    let (overlapping, single) = nodes.split_at(cfg.overlapping_nodes);

    let mut order: Vec<usize> = (0..k).collect();
    for &v in overlapping {
        order.shuffle(rng);
        order.sort_by(|&a, &b| capacity[b].cmp(&capacity[a]));
        for &c in &order[..cfg.memberships] {
            if capacity[c] == 0 {
                return Err(Error::Config(
                    "community sizes too small to host the overlapping nodes".into(),
                ));
            }
            capacity[c] -= 1;
            communities[c].push(v);
        }
    }

    let mut slots: Vec<usize> = capacity
        .iter()
        .enumerate()
        .flat_map(|(c, &cap)| std::iter::repeat_n(c, cap))
        .collect();
    slots.shuffle(rng);
    for (&v, &c) in single.iter().zip(&slots) {
        communities[c].push(v);
    }
    for c in &mut communities {
        c.sort_unstable();
    }
    Ok(communities)
}

fn shares_community(memberships: &[Vec<usize>], u: NodeId, v: NodeId) -> bool {
    memberships[u].iter().any(|c| memberships[v].contains(c))
}

fn pair_key(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Adds edges between uniformly random pairs sharing no community until the
/// mean outside fraction over non-isolated nodes reaches `mu`. Stops early
/// when such pairs run out.
fn add_outside_edges(
    cfg: &PlantedConfig,
    memberships: &[Vec<usize>],
    edges: &mut HashSet<(NodeId, NodeId)>,
    rng: &mut ChaCha8Rng,
) {
    const MAX_REJECTIONS: usize = 100_000;
    let n = cfg.n;
    let mut degree = vec![0usize; n];
    for &(u, v) in edges.iter() {
        degree[u] += 1;
        degree[v] += 1;
    }
    let mut outside = vec![0usize; n];
    let mut active = degree.iter().filter(|&&k| k > 0).count();
    let mut fraction_sum = 0.0;
    let mut rejections = 0;
    while n >= 2 && (active == 0 || fraction_sum / (active as f64) < cfg.mu) {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u == v || shares_community(memberships, u, v) || edges.contains(&pair_key(u, v)) {
            rejections += 1;
            if rejections == MAX_REJECTIONS {
                break;
            }
            continue;
        }
        rejections = 0;
        edges.insert(pair_key(u, v));
        for w in [u, v] {
            if degree[w] == 0 {
                active += 1;
            } else {
                fraction_sum -= outside[w] as f64 / degree[w] as f64;
            }
            degree[w] += 1;
            outside[w] += 1;
            fraction_sum += outside[w] as f64 / degree[w] as f64;
        }
    }
}

/// Generates a graph with a planted cover. Members of a community are linked
/// with probability `p_in`; then edges between random pairs sharing no
/// community are added until the mean outside fraction reaches `mu`. Nodes
/// are named `0..n`.
pub fn planted_cover_graph(cfg: &PlantedConfig) -> Result<(Graph, Cover)> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let communities = assign_memberships(cfg, &mut rng)?;

    let mut memberships: Vec<Vec<usize>> = vec![Vec::new(); cfg.n];
    for (c, members) in communities.iter().enumerate() {
        for &v in members {
            memberships[v].push(c);
        }
    }

    let mut edges: HashSet<(NodeId, NodeId)> = HashSet::new();
    for members in &communities {
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if rng.random_bool(cfg.p_in) {
                    edges.insert(pair_key(u, v));
                }
            }
        }
    }

    if cfg.mu > 0.0 {
        add_outside_edges(cfg, &memberships, &mut edges, &mut rng);
    }

    let mut edge_list: Vec<_> = edges.into_iter().collect();
    edge_list.sort_unstable();
    let mut builder = GraphBuilder::with_nodes(cfg.n);
    for (u, v) in edge_list {
        builder.add_edge(u, v);
    }
    let (graph, _) = builder.build();
    let cover = Cover::new(cfg.n, communities)?;
    Ok((graph, cover))
}

/// Uniform random simple graph on `n` nodes with `round(n * mean_degree / 2)`
/// distinct edges. Nodes are named `0..n`.
pub fn homogeneous_random_graph(n: usize, mean_degree: f64, seed: u64) -> Result<Graph> {
    if mean_degree.is_nan() || mean_degree < 0.0 {
        return Err(Error::Config(format!("mean degree {mean_degree} is negative")));
    }
    let m = (n as f64 * mean_degree / 2.0).round() as usize;
    let max = n * n.saturating_sub(1) / 2;
    if m > max {
        return Err(Error::Config(format!(
            "{m} edges requested but {n} nodes allow at most {max}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(m);
    let mut builder = GraphBuilder::with_nodes(n);
    while seen.len() < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && seen.insert(pair_key(u, v)) {
            builder.add_edge(u, v);
        }
    }
    Ok(builder.build().0)
}

/// Community sizes in `[min, max]` drawn from `P(s) ~ s^-exponent` until they
/// add up to exactly `total`.
pub fn power_law_sizes(
    total: usize,
    min: usize,
    max: usize,
    exponent: f64,
    seed: u64,
) -> Result<Vec<usize>> {
    if min == 0 || min > max {
        return Err(Error::Config(format!("invalid size range [{min}, {max}]")));
    }
    if total < min {
        return Err(Error::Config(format!("total {total} below minimum size {min}")));
    }
    // some count k must satisfy k * min <= total <= k * max
    if total.div_ceil(max) > total / min {
        return Err(Error::Config(format!(
            "cannot split {total} into sizes within [{min}, {max}]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<f64> = (min..=max).map(|s| (s as f64).powf(-exponent)).collect();
    let dist = rand::distr::weighted::WeightedIndex::new(&weights)
        .map_err(|e| Error::Config(e.to_string()))?;
    let mut sizes = Vec::new();
    let mut sum = 0;
    while sum < total {
        let s = min + rng.sample(&dist);
        if sum + s <= total {
            sizes.push(s);
            sum += s;
            continue;
        }
        let mut rest = total - sum;
        sum = total;
        if rest >= min {
            sizes.push(rest);
            break;
        }
        // grow communities that have room, else shrink some to make room
        // for one more community of size `min`
        for s in sizes.iter_mut().filter(|s| **s < max) {
            let add = (max - *s).min(rest);
            *s += add;
            rest -= add;
        }
        if rest > 0 {
            let mut need = min - rest;
            for s in sizes.iter_mut() {
                let take = (*s - min).min(need);
                *s -= take;
                need -= take;
            }
            sizes.push(min);
        }
    }
    Ok(sizes)
}

/// Fraction of each node's edges leading to nodes it shares no community
/// with; `None` for isolated nodes.
pub fn mixing_fractions(graph: &Graph, cover: &Cover) -> Vec<Option<f64>> {
    let n = graph.node_count();
    let mut memberships: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (c, members) in cover.iter().enumerate() {
        for &v in members {
            memberships[v].push(c);
        }
    }
    (0..n)
        .map(|u| {
            let k = graph.degree(u);
            (k > 0).then(|| {
                let outside = graph
                    .neighbors(u)
                    .iter()
                    .filter(|&&v| !shares_community(&memberships, u, v))
                    .count();
                outside as f64 / k as f64
            })
        })
        .collect()
}

/// Mean of [`mixing_fractions`] over non-isolated nodes.
pub fn mean_mixing(graph: &Graph, cover: &Cover) -> f64 {
    let fractions: Vec<f64> = mixing_fractions(graph, cover).into_iter().flatten().collect();
    if fractions.is_empty() {
        0.0
    } else {
        fractions.iter().sum::<f64>() / fractions.len() as f64
    }
}
