//! Speaker-listener label propagation.
//!
//! Every node starts with a memory holding one label, its own id. An
//! iteration visits all nodes in a freshly shuffled order; each visited node
//! acts as listener: each of its neighbors speaks one label drawn from its
//! memory with probability proportional to the label's count, and the
//! listener appends the most frequent label it heard (ties broken uniformly
//! at random). Updates are applied immediately, so later listeners in the
//! same sweep hear the new labels. Isolated nodes never listen.
//!
//! A single ChaCha8 stream seeded from [`RunConfig::seed`] drives the run and
//! is consumed in this order, per iteration:
//!
//! 1. one Fisher-Yates shuffle of the node order;
//! 2. for each listener, one draw per neighbor in ascending neighbor-id order
//!    (the speaker choice);
//! 3. then, only if several labels tie for most frequent, one draw picking
//!    among the tied labels in ascending label order.
//!
//! Identical graph, iteration count and seed therefore give bit-identical
//! memories.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Community label; the id of the node that originated it.
pub type Label = u32;

/// Iteration count used when none is given. Outputs are already stable for
/// anything above about 20.
pub const DEFAULT_ITERATIONS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub iterations: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(iterations: usize, seed: u64) -> Result<Self> {
        if iterations == 0 {
            return Err(Error::Parameter("iteration count must be at least 1".into()));
        }
        Ok(RunConfig { iterations, seed })
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            iterations: DEFAULT_ITERATIONS,
            seed: 0,
        }
    }
}

/// Multiset of labels a node has accepted, including its initial label.
///
/// Stored as the sequence of accepted labels, so a count-proportional draw is
/// a single uniform index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMemory {
    received: Vec<Label>,
}

impl LabelMemory {
    pub fn new(initial: Label) -> Self {
        LabelMemory {
            received: vec![initial],
        }
    }

    /// Memory with the given label counts. Zero counts are skipped.
    pub fn from_counts(counts: impl IntoIterator<Item = (Label, u32)>) -> Result<Self> {
        let mut received = Vec::new();
        for (label, count) in counts {
            received.extend(std::iter::repeat_n(label, count as usize));
        }
        if received.is_empty() {
            return Err(Error::Contract("label memory must hold at least one label".into()));
        }
        Ok(LabelMemory { received })
    }

    pub fn push(&mut self, label: Label) {
        self.received.push(label);
    }

    /// Total number of labels held.
    pub fn total(&self) -> usize {
        self.received.len()
    }

    pub fn is_empty(&self) -> bool {
        self.received.is_empty()
    }

    pub fn counts(&self) -> BTreeMap<Label, u32> {
        let mut counts = BTreeMap::new();
        for &l in &self.received {
            *counts.entry(l).or_insert(0) += 1;
        }
        counts
    }

    pub fn count(&self, label: Label) -> u32 {
        self.received.iter().filter(|&&l| l == label).count() as u32
    }
}

/// One memory per node, indexed by node id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Memories(Vec<LabelMemory>);

impl Memories {
    pub fn new(memories: Vec<LabelMemory>) -> Self {
        Memories(memories)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, node: NodeId) -> &LabelMemory {
        &self.0[node]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LabelMemory> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[LabelMemory] {
        &self.0
    }

    /// `node_name label:count ...` per line, labels ascending.
    pub fn to_text(&self, graph: &Graph) -> String {
        let mut out = String::new();
        for (node, memory) in self.0.iter().enumerate() {
            out.push_str(graph.name(node));
            for (label, count) in memory.counts() {
                let _ = write!(out, " {label}:{count}");
            }
            out.push('\n');
        }
        out
    }

    /// Parses the format written by [`Memories::to_text`]. Every node of
    /// `graph` must appear exactly once.
    pub fn from_text(text: &str, graph: &Graph) -> Result<Self> {
        let mut slots: Vec<Option<LabelMemory>> = vec![None; graph.node_count()];
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = i + 1;
            let mut tokens = line.split_whitespace();
            let name = tokens.next().expect("non-empty line");
            let node = graph.id(name).ok_or_else(|| Error::UnknownNode {
                line: lineno,
                name: name.to_owned(),
            })?;
            let mut counts = Vec::new();
            for tok in tokens {
                let parsed = tok.split_once(':').and_then(|(l, c)| {
                    Some((l.parse::<Label>().ok()?, c.parse::<u32>().ok()?))
                });
                match parsed {
                    Some((l, c)) if c > 0 && (l as usize) < graph.node_count() => {
                        counts.push((l, c))
                    }
                    _ => {
                        return Err(Error::Parse {
                            line: lineno,
                            message: format!("bad label entry {tok:?}"),
                        })
                    }
                }
            }
            let memory = LabelMemory::from_counts(counts).map_err(|_| Error::Parse {
                line: lineno,
                message: "node has no labels".into(),
            })?;
            if slots[node].replace(memory).is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("node {name:?} listed twice"),
                });
            }
        }
        let memories = slots
            .into_iter()
            .enumerate()
            .map(|(node, m)| {
                m.ok_or_else(|| Error::Format {
                    line: 0,
                    message: format!("no memory for node {:?}", graph.name(node)),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Memories(memories))
    }
}

/// Fresh memories: node `i` holds `{i: 1}`.
pub fn initialize(graph: &Graph) -> Memories {
    Memories((0..graph.node_count()).map(|i| LabelMemory::new(i as Label)).collect())
}

/// Draws a label with probability proportional to its count.
pub fn speaker_choice<R: Rng + ?Sized>(memory: &LabelMemory, rng: &mut R) -> Label {
    assert!(!memory.is_empty(), "speaker memory is empty");
    memory.received[rng.random_range(0..memory.received.len())]
}

/// Most frequent label in `received`, ties broken uniformly at random.
pub fn listener_choice<R: Rng + ?Sized>(received: &[Label], rng: &mut R) -> Result<Label> {
    if received.is_empty() {
        return Err(Error::Contract("listener received no labels".into()));
    }
    let mut scratch = received.to_vec();
    let mut ties = Vec::new();
    Ok(most_popular(&mut scratch, &mut ties, rng))
}

fn most_popular<R: Rng + ?Sized>(received: &mut [Label], ties: &mut Vec<Label>, rng: &mut R) -> Label {
    if received.len() == 1 {
        return received[0];
    }
    received.sort_unstable();
    ties.clear();
    let mut best = 0;
    let mut i = 0;
    while i < received.len() {
        let label = received[i];
        let mut j = i + 1;
        while j < received.len() && received[j] == label {
            j += 1;
        }
        let run = j - i;
        if run > best {
            best = run;
            ties.clear();
            ties.push(label);
        } else if run == best {
            ties.push(label);
        }
        i = j;
    }
    if ties.len() == 1 {
        ties[0]
    } else {
        ties[rng.random_range(0..ties.len())]
    }
}

/// Same choice and random draws as [`most_popular`], in linear time.
/// `counts` is indexed by label, all zero on entry and left all zero.
fn most_popular_counted<R: Rng + ?Sized>(
    received: &[Label],
    counts: &mut [u32],
    ties: &mut Vec<Label>,
    rng: &mut R,
) -> Label {
    if received.len() == 1 {
        return received[0];
    }
    let mut best = 0;
    for &label in received {
        let c = &mut counts[label as usize];
        *c += 1;
        best = best.max(*c);
    }
    ties.clear();
    for &label in received {
        let c = &mut counts[label as usize];
        if *c == best {
            ties.push(label);
        }
        // zeroing also keeps a label from being pushed twice
        *c = 0;
    }
    if ties.len() == 1 {
        return ties[0];
    }
    ties.sort_unstable();
    ties[rng.random_range(0..ties.len())]
}

/// Stateful run over one graph; exposes single iterations for inspection.
///
/// All memories live in one arena with a fixed stride per node, which keeps
/// speaker draws to a single memory access.
pub struct Propagation<'g> {
    graph: &'g Graph,
    arena: Vec<Label>,
    lengths: Vec<u32>,
    stride: usize,
    rng: ChaCha8Rng,
    listeners: Vec<NodeId>,
    order: Vec<NodeId>,
    received: Vec<Label>,
    counts: Vec<u32>,
    ties: Vec<Label>,
    completed: usize,
}

impl<'g> Propagation<'g> {
    pub fn new(graph: &'g Graph, seed: u64) -> Self {
        Self::with_capacity(graph, seed, DEFAULT_ITERATIONS)
    }

    /// Like [`Propagation::new`], sized for `iterations` sweeps. Running
    /// longer still works but reallocates.
    pub fn with_capacity(graph: &'g Graph, seed: u64, iterations: usize) -> Self {
        let n = graph.node_count();
        let stride = iterations.max(1) + 1;
        let mut arena = vec![0; n * stride];
        for v in 0..n {
            arena[v * stride] = v as Label;
        }
        // ascending ids of the non-isolated nodes
        let listeners: Vec<NodeId> = (0..n).filter(|&v| graph.degree(v) > 0).collect();
        Propagation {
            graph,
            arena,
            lengths: vec![1; n],
            stride,
            rng: ChaCha8Rng::seed_from_u64(seed),
            order: listeners.clone(),
            listeners,
            received: Vec::new(),
            counts: vec![0; n],
            ties: Vec::new(),
            completed: 0,
        }
    }

    fn grow(&mut self) {
        let stride = 2 * self.stride;
        let mut arena = vec![0; self.lengths.len() * stride];
        for (v, &len) in self.lengths.iter().enumerate() {
            let len = len as usize;
            arena[v * stride..v * stride + len].copy_from_slice(&self.arena[v * self.stride..v * self.stride + len]);
        }
        self.arena = arena;
        self.stride = stride;
    }

    /// One sweep in which every non-isolated node listens once.
    pub fn step(&mut self) {
        if self.completed + 2 > self.stride {
            self.grow();
        }
        self.order.copy_from_slice(&self.listeners);
        self.order.shuffle(&mut self.rng);
        let stride = self.stride;
        for &listener in &self.order {
            self.received.clear();
            for &speaker in self.graph.neighbors(listener) {
                // same draw as `speaker_choice` on the speaker's memory
                let index = self.rng.random_range(0..self.lengths[speaker] as usize);
                self.received.push(self.arena[speaker * stride + index]);
            }
            let accepted = most_popular_counted(&self.received, &mut self.counts, &mut self.ties, &mut self.rng);
            let len = &mut self.lengths[listener];
            self.arena[listener * stride + *len as usize] = accepted;
            *len += 1;
        }
        self.completed += 1;
    }

    pub fn run(&mut self, iterations: usize) {
        for _ in 0..iterations {
            self.step();
        }
    }

    pub fn iterations_completed(&self) -> usize {
        self.completed
    }

    /// Labels accepted by `node` so far, oldest first.
    pub fn memory(&self, node: NodeId) -> &[Label] {
        let start = node * self.stride;
        &self.arena[start..start + self.lengths[node] as usize]
    }

    /// Copy of the current memories.
    pub fn snapshot(&self) -> Memories {
        Memories(
            (0..self.lengths.len())
                .map(|v| LabelMemory {
                    received: self.memory(v).to_vec(),
                })
                .collect(),
        )
    }

    pub fn into_memories(self) -> Memories {
        self.snapshot()
    }
}

/// Runs `config.iterations` sweeps from fresh memories.
pub fn evolve(graph: &Graph, config: &RunConfig) -> Memories {
    let mut run = Propagation::with_capacity(graph, config.seed, config.iterations);
    run.run(config.iterations);
    run.into_memories()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{load_edge_list, GraphBuilder};

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn initialize_unique_labels() {
        let (g, _) = GraphBuilder::with_nodes(3).build();
        let m = initialize(&g);
        for (i, mem) in m.iter().enumerate() {
            assert_eq!(mem.counts(), BTreeMap::from([(i as Label, 1)]));
        }
        let (empty, _) = GraphBuilder::new().build();
        assert!(initialize(&empty).is_empty());
    }

    #[test]
    fn initialize_large() {
        let (g, _) = GraphBuilder::with_nodes(5000).build();
        let m = initialize(&g);
        let labels: std::collections::HashSet<_> =
            m.iter().flat_map(|mem| mem.counts().into_keys()).collect();
        assert_eq!(labels.len(), 5000);
    }

    #[test]
    fn speaker_single_label() {
        let mem = LabelMemory::new(7);
        let mut r = rng(1);
        for _ in 0..100 {
            assert_eq!(speaker_choice(&mem, &mut r), 7);
        }
    }

    #[test]
    fn speaker_three_to_one() {
        let mem = LabelMemory::from_counts([(0, 3), (1, 1)]).unwrap();
        let mut r = rng(2);
        let draws = 100_000;
        let a = (0..draws).filter(|_| speaker_choice(&mem, &mut r) == 0).count();
        assert!((a as f64 / draws as f64 - 0.75).abs() < 0.01);
    }

    #[test]
    fn speaker_even_split() {
        let mem = LabelMemory::from_counts([(0, 2), (1, 2)]).unwrap();
        let mut r = rng(3);
        let draws = 100_000;
        let a = (0..draws).filter(|_| speaker_choice(&mem, &mut r) == 0).count();
        let freq = a as f64 / draws as f64;
        assert!((freq - 0.5).abs() <= 0.01, "{freq}");
        // chi-square with one degree of freedom, 99.9% critical value 10.83
        let expected = draws as f64 / 2.0;
        let chi2 = 2.0 * (a as f64 - expected).powi(2) / expected;
        assert!(chi2 < 10.83, "{chi2}");
    }

    #[test]
    fn listener_majority_and_singleton() {
        let mut r = rng(4);
        assert_eq!(listener_choice(&[5, 5, 9], &mut r).unwrap(), 5);
        assert_eq!(listener_choice(&[9, 5, 5], &mut r).unwrap(), 5);
        assert_eq!(listener_choice(&[3], &mut r).unwrap(), 3);
        assert!(listener_choice(&[], &mut r).is_err());
    }

    #[test]
    fn listener_tie_is_uniform() {
        let mut r = rng(5);
        let trials = 100_000;
        let a = (0..trials)
            .filter(|_| listener_choice(&[0, 1], &mut r).unwrap() == 0)
            .count();
        let freq = a as f64 / trials as f64;
        assert!((freq - 0.5).abs() <= 0.01, "{freq}");
    }

    #[test]
    fn edgeless_graph_is_unchanged() {
        let (g, _) = GraphBuilder::with_nodes(4).build();
        let m = evolve(&g, &RunConfig::new(50, 9).unwrap());
        assert_eq!(m, initialize(&g));
    }

    #[test]
    fn memory_totals_grow_by_one_per_iteration() {
        let mut b = GraphBuilder::with_nodes(6);
        b.add_edge(0, 1);
        b.add_edge(1, 2);
        b.add_edge(3, 4);
        let (g, _) = b.build();
        // capacity for 3 sweeps, so the arena has to grow twice
        let mut run = Propagation::with_capacity(&g, 11, 3);
        for t in 1..=10 {
            run.step();
            for v in 0..6 {
                let want = if g.degree(v) == 0 { 1 } else { t + 1 };
                assert_eq!(run.memory(v).len(), want);
            }
        }
        assert_eq!(run.memory(5), &[5]);
    }

    #[test]
    fn deterministic_per_seed() {
        let (g, _) = load_edge_list("a b\nb c\nc a\nc d\nd e\ne f\nf d\n", false).unwrap();
        let cfg = RunConfig::new(30, 42).unwrap();
        assert_eq!(evolve(&g, &cfg), evolve(&g, &cfg));
        let other = RunConfig::new(30, 43).unwrap();
        assert_ne!(evolve(&g, &cfg), evolve(&g, &other));
    }

    #[test]
    fn counting_matches_sorting() {
        let mut source = rng(12);
        let mut counts = vec![0; 8];
        let mut ties = Vec::new();
        for _ in 0..2000 {
            let len = source.random_range(1..12);
            let received: Vec<Label> = (0..len).map(|_| source.random_range(0..8)).collect();
            let seed = source.random::<u64>();
            let (mut a, mut b) = (rng(seed), rng(seed));
            let mut scratch = received.clone();
            let want = most_popular(&mut scratch, &mut ties, &mut a);
            assert_eq!(most_popular_counted(&received, &mut counts, &mut ties, &mut b), want);
            assert_eq!(a.random::<u64>(), b.random::<u64>());
            assert!(counts.iter().all(|&c| c == 0));
        }
    }

    #[test]
    fn growth_does_not_change_the_run() {
        let (g, _) = load_edge_list("a b\nb c\nc a\nc d\nd e\ne f\nf d\n", false).unwrap();
        let mut small = Propagation::with_capacity(&g, 5, 1);
        small.run(20);
        assert_eq!(small.into_memories(), evolve(&g, &RunConfig::new(20, 5).unwrap()));
    }

    #[test]
    fn zero_iterations_rejected() {
        assert!(RunConfig::new(0, 1).is_err());
    }

    #[test]
    fn memory_text_round_trip() {
        let (g, _) = load_edge_list("a b\nb c\n", false).unwrap();
        let m = evolve(&g, &RunConfig::new(5, 1).unwrap());
        let text = m.to_text(&g);
        let back = Memories::from_text(&text, &g).unwrap();
        for (x, y) in m.iter().zip(back.iter()) {
            assert_eq!(x.counts(), y.counts());
        }
        assert!(Memories::from_text("a 0:1\n", &g).is_err());
        assert!(Memories::from_text("a 0:x\nb 1:1\nc 2:1\n", &g).is_err());
    }
}
