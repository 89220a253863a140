use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{load_graph, parse_seeds, RunArgs};
use crate::error::{Error, Result};
use crate::graph::{overlap_report, write_cover, Cover};
use crate::postprocess::{extract_communities, Threshold};
use crate::propagation::{evolve, RunConfig};

/// Fully resolved settings of a detection run. Written next to the outputs
/// as `manifest.toml`; rerunning it reproduces every cover file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub input: PathBuf,
    pub iterations: usize,
    pub thresholds: Vec<f64>,
    pub seeds: Vec<u64>,
    pub bipartite: bool,
    pub keep_subsets: bool,
    pub disjoint: bool,
    pub write_memories: bool,
    pub out: PathBuf,
    pub jobs: Option<usize>,
}

impl RunManifest {
    pub fn from_args(args: &RunArgs) -> Result<Self> {
        let mut thresholds = args.thresholds.clone();
        if thresholds.is_empty() {
            thresholds = if args.disjoint {
                vec![0.5]
            } else {
                Threshold::default_sweep().iter().map(|t| t.value()).collect()
            };
        }
        let manifest = RunManifest {
            input: args.input.clone(),
            iterations: args.iterations,
            thresholds,
            seeds: parse_seeds(&args.seeds)?,
            bipartite: args.bipartite,
            keep_subsets: args.keep_subsets,
            disjoint: args.disjoint,
            write_memories: args.memories,
            out: args.out.clone(),
            jobs: args.jobs,
        };
        manifest.validate()?;
        Ok(manifest)
    }

    pub fn validate(&self) -> Result<()> {
        RunConfig::new(self.iterations, 0)?;
        if self.seeds.is_empty() {
            return Err(Error::Parameter("at least one seed is required".into()));
        }
        if self.thresholds.is_empty() {
            return Err(Error::Parameter("at least one threshold is required".into()));
        }
        self.resolved_thresholds().map(|_| ())?;
        if self.jobs == Some(0) {
            return Err(Error::Parameter("--jobs must be at least 1".into()));
        }
        Ok(())
    }

    fn resolved_thresholds(&self) -> Result<Vec<Threshold>> {
        self.thresholds
            .iter()
            .map(|&r| {
                if self.disjoint {
                    // disjoint mode forces a single label whatever r says
                    Threshold::allowing_disjoint(r).map(|_| Threshold::DISJOINT)
                } else if r > 0.5 {
                    Err(Error::Parameter(format!(
                        "threshold {r} above 0.5 requires --disjoint"
                    )))
                } else {
                    Threshold::new(r)
                }
            })
            .collect()
    }
}

/// One (threshold, seed) result.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub threshold: f64,
    pub seed: u64,
    pub cover: Cover,
    pub overlapping_nodes: usize,
    pub cover_file: PathBuf,
    pub evolve_seconds: f64,
    pub postprocess_seconds: f64,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub node_count: usize,
    pub records: Vec<RunRecord>,
}

impl RunOutput {
    pub fn summary_lines(&self) -> Vec<String> {
        self.records
            .iter()
            .map(|r| {
                format!(
                    "r={} seed={} communities={} overlapping={} -> {}",
                    r.threshold,
                    r.seed,
                    r.cover.len(),
                    r.overlapping_nodes,
                    r.cover_file.display()
                )
            })
            .collect()
    }
}

/// `cover_r{r}_s{seed}.txt`.
pub fn cover_file_name(threshold: f64, seed: u64) -> String {
    format!("cover_r{threshold}_s{seed}.txt")
}

/// Loads the graph, evolves once per seed, post-processes every threshold,
/// and writes the cover, overlap report, manifest echo and timings. Seeds
/// run in parallel up to `jobs`; files are written afterwards in manifest
/// order.
pub fn run_command(manifest: &RunManifest) -> Result<RunOutput> {
    manifest.validate()?;
    let thresholds = manifest.resolved_thresholds()?;
    let graph = load_graph(&manifest.input, manifest.bipartite)?;
    fs::create_dir_all(&manifest.out)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(manifest.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::Contract(format!("thread pool: {e}")))?;

    let per_seed: Vec<_> = pool.install(|| {
        manifest
            .seeds
            .par_iter()
            .map(|&seed| {
                let config = RunConfig::new(manifest.iterations, seed)?;
                let start = Instant::now();
                let memories = evolve(&graph, &config);
                let evolve_seconds = start.elapsed().as_secs_f64();
                let covers: Vec<_> = thresholds
                    .iter()
                    .map(|&t| {
                        let start = Instant::now();
                        let found = extract_communities(&graph, &memories, t, manifest.keep_subsets);
                        (found.cover, start.elapsed().as_secs_f64())
                    })
                    .collect();
                Ok((seed, memories, evolve_seconds, covers))
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let n = graph.node_count();
    let mut records = Vec::new();
    let mut timing = String::from("r,seed,evolve_seconds,postprocess_seconds\n");
    for (seed, memories, evolve_seconds, covers) in per_seed {
        if manifest.write_memories {
            fs::write(
                manifest.out.join(format!("memories_s{seed}.txt")),
                memories.to_text(&graph),
            )?;
        }
        for ((cover, post), &r) in covers.into_iter().zip(&manifest.thresholds) {
            let name = cover_file_name(r, seed);
            let path = manifest.out.join(&name);
            fs::write(&path, write_cover(&cover, &graph))?;
            fs::write(
                manifest.out.join(format!("overlap_r{r}_s{seed}.txt")),
                overlap_report(&cover, &graph),
            )?;
            let _ = writeln!(timing, "{r},{seed},{evolve_seconds},{post}");
            records.push(RunRecord {
                threshold: r,
                seed,
                overlapping_nodes: cover.overlapping_nodes(n).len(),
                cover,
                cover_file: path,
                evolve_seconds,
                postprocess_seconds: post,
            });
        }
    }
    let echo = toml::to_string(manifest).map_err(|e| Error::Contract(e.to_string()))?;
    fs::write(manifest.out.join("manifest.toml"), echo)?;
    fs::write(manifest.out.join("timing.csv"), timing)?;
    Ok(RunOutput {
        node_count: n,
        records,
    })
}
