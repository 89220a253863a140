//! Slow, direct implementations used to check the library, plus random
//! input generators. Nothing here calls into the code under test except
//! plain accessors.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slpa::{Cover, Graph, GraphBuilder, NodeId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random cover over `n` nodes in which every node has at least one
/// community.
pub fn random_cover<R: Rng>(rng: &mut R, n: usize) -> Cover {
    let k = rng.random_range(1..=4.min(n).max(1));
    let mut comms: Vec<Vec<NodeId>> = vec![Vec::new(); k];
    for v in 0..n {
        comms[rng.random_range(0..k)].push(v);
        for c in comms.iter_mut() {
            if rng.random_bool(0.2) {
                c.push(v);
            }
        }
    }
    comms.retain(|c| !c.is_empty());
    Cover::new(n, comms).unwrap()
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut b = GraphBuilder::with_nodes(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                b.add_edge(u, v);
            }
        }
    }
    b.build().0
}

pub fn as_sets(cover: &Cover) -> BTreeSet<Vec<NodeId>> {
    cover.iter().cloned().collect()
}

fn shared(cover: &Cover, u: NodeId, v: NodeId) -> usize {
    cover
        .iter()
        .filter(|c| c.contains(&u) && c.contains(&v))
        .count()
}

/// Omega index straight from its definition over all unordered pairs.
pub fn omega_oracle(a: &Cover, b: &Cover, n: usize) -> Option<f64> {
    let mut pairs = 0usize;
    let mut agree = 0usize;
    let mut na: HashMap<usize, usize> = HashMap::new();
    let mut nb: HashMap<usize, usize> = HashMap::new();
    for u in 0..n {
        for v in u + 1..n {
            let (sa, sb) = (shared(a, u, v), shared(b, u, v));
            pairs += 1;
            if sa == sb {
                agree += 1;
            }
            *na.entry(sa).or_default() += 1;
            *nb.entry(sb).or_default() += 1;
        }
    }
    if pairs == 0 {
        return None;
    }
    let m = pairs as f64;
    let observed = agree as f64 / m;
    let expected: f64 = na
        .iter()
        .map(|(j, &ca)| ca as f64 * *nb.get(j).unwrap_or(&0) as f64)
        .sum::<f64>()
        / (m * m);
    if expected >= 1.0 {
        return None;
    }
    Some((observed - expected) / (1.0 - expected))
}

fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.ln()
    } else {
        0.0
    }
}

/// `H(X_k | Y)` for one community against a whole cover, counting the four
/// joint outcomes node by node.
fn cover_conditional(x: &[NodeId], other: &Cover, n: usize) -> (f64, f64) {
    let nf = n as f64;
    let in_x: Vec<bool> = (0..n).map(|v| x.contains(&v)).collect();
    let px = in_x.iter().filter(|&&b| b).count() as f64 / nf;
    let hx = plogp(px) + plogp(1.0 - px);
    let mut best: Option<f64> = None;
    for y in other.iter() {
        let mut counts = [[0usize; 2]; 2];
        for v in 0..n {
            counts[in_x[v] as usize][y.contains(&v) as usize] += 1;
        }
        let p = |i: usize, j: usize| counts[i][j] as f64 / nf;
        let (p11, p10, p01, p00) = (p(1, 1), p(1, 0), p(0, 1), p(0, 0));
        if plogp(p11) + plogp(p00) <= plogp(p01) + plogp(p10) {
            continue;
        }
        let py = p11 + p01;
        let hy = plogp(py) + plogp(1.0 - py);
        let joint = plogp(p11) + plogp(p10) + plogp(p01) + plogp(p00);
        let h = (joint - hy).max(0.0);
        best = Some(best.map_or(h, |b: f64| b.min(h)));
    }
    (best.unwrap_or(hx), hx)
}

fn normalized(a: &Cover, b: &Cover, n: usize) -> f64 {
    let mut sum = 0.0;
    for x in a.iter() {
        let (cond, hx) = cover_conditional(x, b, n);
        if hx > 0.0 {
            sum += cond / hx;
        }
    }
    sum / a.len() as f64
}

/// Extended NMI with average normalization, evaluated pair by pair.
pub fn nmi_oracle(a: &Cover, b: &Cover, n: usize) -> f64 {
    1.0 - 0.5 * (normalized(a, b, n) + normalized(b, a, n))
}

fn g(alpha: f64, p: f64) -> f64 {
    1.0 / (1.0 + (-(2.0 * p * alpha - p)).exp())
}

/// Overlapping modularity with uniform belonging as an explicit
/// `O(|C| n^2)` double sum over all ordered node pairs.
pub fn qov_oracle(graph: &Graph, cover: &Cover, p: f64) -> f64 {
    let n = graph.node_count();
    let l = 2.0 * graph.edge_count() as f64;
    let memberships: Vec<usize> = (0..n)
        .map(|v| cover.iter().filter(|c| c.contains(&v)).count())
        .collect();
    let mut q = 0.0;
    for c in cover.iter() {
        let alpha: Vec<f64> = (0..n)
            .map(|v| if c.contains(&v) { 1.0 / memberships[v] as f64 } else { 0.0 })
            .collect();
        let f = |i: usize, j: usize| g(alpha[i], p) * g(alpha[j], p);
        let b_out: Vec<f64> = (0..n).map(|i| (0..n).map(|j| f(i, j)).sum::<f64>() / n as f64).collect();
        let b_in: Vec<f64> = (0..n).map(|j| (0..n).map(|i| f(i, j)).sum::<f64>() / n as f64).collect();
        for i in 0..n {
            for j in 0..n {
                let a = if graph.has_edge(i, j) { 1.0 } else { 0.0 };
                let (ki, kj) = (graph.degree(i) as f64, graph.degree(j) as f64);
                q += f(i, j) * a - b_out[i] * ki * b_in[j] * kj / l;
            }
        }
    }
    q / l
}

/// Projection by checking every candidate hub for every pair of `nodes`.
/// Returns name pairs, each ordered.
pub fn projection_oracle(graph: &Graph, nodes: &[NodeId]) -> BTreeSet<(String, String)> {
    let mut out = BTreeSet::new();
    for (i, &u) in nodes.iter().enumerate() {
        for &v in &nodes[i + 1..] {
            let linked = (0..graph.node_count()).any(|w| graph.has_edge(u, w) && graph.has_edge(v, w));
            if linked {
                let (a, b) = (graph.name(u).to_owned(), graph.name(v).to_owned());
                out.insert(if a < b { (a, b) } else { (b, a) });
            }
        }
    }
    out
}

pub fn edge_names(graph: &Graph) -> BTreeSet<(String, String)> {
    graph
        .edges()
        .map(|(u, v)| {
            let (a, b) = (graph.name(u).to_owned(), graph.name(v).to_owned());
            if a < b { (a, b) } else { (b, a) }
        })
        .collect()
}

/// Components of each label's induced subgraph via union-find.
pub fn components_oracle(graph: &Graph, labels: &[Vec<u32>]) -> BTreeSet<Vec<NodeId>> {
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let n = graph.node_count();
    let all: BTreeSet<u32> = labels.iter().flatten().copied().collect();
    let mut out = BTreeSet::new();
    for l in all {
        let has = |v: usize| labels[v].contains(&l);
        let mut parent: Vec<usize> = (0..n).collect();
        for (u, v) in graph.edges() {
            if has(u) && has(v) {
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                parent[ru] = rv;
            }
        }
        let mut groups: HashMap<usize, Vec<NodeId>> = HashMap::new();
        for v in (0..n).filter(|&v| has(v)) {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        out.extend(groups.into_values());
    }
    out
}

/// Two-sided graph with `per_side` nodes on each side split into two
/// co-communities; within a co-community edges appear with `p_in`, across
/// with `p_out`. Side-1 names are `u{i}`, side-2 names `p{i}`.
pub fn planted_bipartite(seed: u64, per_side: usize, p_in: f64, p_out: f64) -> String {
    let mut r = rng(seed);
    let mut text = String::new();
    let half = per_side / 2;
    for i in 0..per_side {
        for j in 0..per_side {
            let same = (i < half) == (j < half);
            if r.random_bool(if same { p_in } else { p_out }) {
                text.push_str(&format!("u{i} p{j}\n"));
            }
        }
    }
    text
}
