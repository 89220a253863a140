//! Batch command line: `run`, `eval`, `bench`, `synth`, `project` and
//! `hierarchy`. Each subcommand is a thin layer over a library function that
//! can also be called directly.

mod bench;
mod eval;
mod run;

pub use bench::{bench, linear_fit, BenchReport, BenchRow, LinearFit, Sizing};
pub use eval::{evaluate, qov_per_side, EvalInput, EvalOptions, MetricKind};
pub use run::{cover_file_name, run_command, RunManifest, RunOutput, RunRecord};

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::graph::{load_attribute_table, load_cover_file, load_edge_list, write_cover, write_edge_list, Graph, Side};
use crate::postprocess::{containment_forest, render_hierarchy};
use crate::synth::{homogeneous_random_graph, planted_cover_graph, power_law_sizes, PlantedConfig};

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DATA: u8 = 3;
pub const EXIT_INTERNAL: u8 = 4;

/// Process exit code for an error: usage, data or internal.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parameter(_) => EXIT_USAGE,
        Error::Contract(_) => EXIT_INTERNAL,
        _ => EXIT_DATA,
    }
}

#[derive(Debug, Parser)]
#[command(name = "slpa", version, about = "Overlapping community detection by speaker-listener label propagation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Detect communities for every (threshold, seed) pair.
    Run(RunArgs),
    /// Score detected covers against a reference cover and/or the graph.
    Eval(EvalArgs),
    /// Time propagation on random graphs of growing size.
    Bench(BenchArgs),
    /// Generate a synthetic graph (and planted cover).
    Synth(SynthArgs),
    /// One-mode projection of a bipartite edge list.
    Project(ProjectArgs),
    /// Print the containment hierarchy of a cover.
    Hierarchy(HierarchyArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(short = 'T', long, default_value_t = crate::propagation::DEFAULT_ITERATIONS)]
    pub iterations: usize,
    /// Threshold r; repeat for a sweep. Defaults to 0.01..=0.1 in steps of 0.01.
    #[arg(short = 'r', long = "threshold")]
    pub thresholds: Vec<f64>,
    /// Repetition count N (seeds 0..N), a list `3,7,9`, or a range `a..b`.
    #[arg(long, default_value = "1")]
    pub seeds: String,
    #[arg(long)]
    pub bipartite: bool,
    /// Keep communities nested inside others.
    #[arg(long)]
    pub keep_subsets: bool,
    /// Force one community per node; allows r > 0.5.
    #[arg(long)]
    pub disjoint: bool,
    /// Also write each seed's label memories.
    #[arg(long)]
    pub memories: bool,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Graph the covers refer to.
    #[arg(short, long)]
    pub input: PathBuf,
    /// Detected cover files.
    #[arg(required = true)]
    pub covers: Vec<PathBuf>,
    #[arg(long)]
    pub truth: Option<PathBuf>,
    /// Comma-separated subset of nmi,omega,fscore,qov,hist.
    #[arg(long, default_value = "nmi,omega,fscore")]
    pub metrics: String,
    /// Histogram bin edges, e.g. `1,5,20,100`. Implies the hist metric.
    #[arg(long)]
    pub hist: Option<String>,
    #[arg(long)]
    pub bipartite: bool,
    #[arg(long)]
    pub attrs: Option<PathBuf>,
    /// Print the containment hierarchy of each cover.
    #[arg(long)]
    pub hierarchy: bool,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Edge counts of the ladder rungs.
    #[arg(long, default_value = "25000,50000,100000,200000,400000")]
    pub ladder: String,
    /// Mean degree of every rung; ignored when `--nodes` is given.
    #[arg(long, default_value_t = 10.0)]
    pub mean_degree: f64,
    /// Fixed node count for every rung, so the mean degree grows with m.
    #[arg(long)]
    pub nodes: Option<usize>,
    #[arg(short = 'T', long, default_value_t = crate::propagation::DEFAULT_ITERATIONS)]
    pub iterations: usize,
    /// Timed repetitions per rung; the fastest is reported.
    #[arg(long, default_value_t = 3)]
    pub seeds: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// `planted` or `homogeneous`.
    #[arg(long, default_value = "planted")]
    pub kind: String,
    #[arg(short, long)]
    pub n: usize,
    /// Explicit community sizes; otherwise drawn from a power law.
    #[arg(long)]
    pub sizes: Option<String>,
    #[arg(long, default_value = "20,100")]
    pub size_range: String,
    #[arg(long, default_value_t = 1.0)]
    pub size_exponent: f64,
    #[arg(long, default_value_t = 0)]
    pub overlap_nodes: usize,
    #[arg(long, default_value_t = 2)]
    pub memberships: usize,
    #[arg(long, default_value_t = 0.3)]
    pub p_in: f64,
    #[arg(long, default_value_t = 0.3)]
    pub mu: f64,
    /// Mean degree of a homogeneous graph.
    #[arg(long, default_value_t = 10.0)]
    pub mean_degree: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    /// 1 or 2; side 1 holds the first node of each component.
    #[arg(long, default_value_t = 1)]
    pub side: u8,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HierarchyArgs {
    #[arg(short, long)]
    pub input: PathBuf,
    #[arg(long)]
    pub cover: PathBuf,
    #[arg(long)]
    pub attrs: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub(crate) fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

pub(crate) fn load_graph(path: &Path, bipartite: bool) -> Result<Graph> {
    let (graph, summary) = load_edge_list(&read(path)?, bipartite)?;
    eprintln!(
        "loaded {}: n={} m={} mean degree {:.2} ({} duplicate edges, {} self-loops dropped)",
        path.display(),
        graph.node_count(),
        graph.edge_count(),
        graph.mean_degree(),
        summary.duplicate_edges,
        summary.self_loops
    );
    Ok(graph)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub(crate) fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| Error::Parameter(format!("bad {what} value {s:?}")))
        })
        .collect()
}

/// `N` -> `0..N`, `a..b` -> `a..b`, `a,b,c` -> that list.
pub fn parse_seeds(text: &str) -> Result<Vec<u64>> {
    let text = text.trim();
    let seeds = if let Some((a, b)) = text.split_once("..") {
        let a: u64 = a.parse().map_err(|_| Error::Parameter(format!("bad seed range {text:?}")))?;
        let b: u64 = b.parse().map_err(|_| Error::Parameter(format!("bad seed range {text:?}")))?;
        (a..b).collect()
    } else if text.contains(',') {
        parse_list(text, "seed")?
    } else {
        let n: u64 = text
            .parse()
            .map_err(|_| Error::Parameter(format!("bad seed count {text:?}")))?;
        (0..n).collect()
    };
    if seeds.is_empty() {
        return Err(Error::Parameter("at least one seed is required".into()));
    }
    Ok(seeds)
}

fn side_from(n: u8) -> Result<Side> {
    match n {
        1 => Ok(Side::First),
        2 => Ok(Side::Second),
        _ => Err(Error::Parameter(format!("side must be 1 or 2, got {n}"))),
    }
}

fn synth(args: &SynthArgs) -> Result<()> {
    fs::create_dir_all(&args.out)?;
    match args.kind.as_str() {
        "homogeneous" => {
            let g = homogeneous_random_graph(args.n, args.mean_degree, args.seed)?;
            fs::write(args.out.join("graph.txt"), write_edge_list(&g))?;
        }
        "planted" => {
            let sizes = match &args.sizes {
                Some(s) => parse_list(s, "size")?,
                None => {
                    let range: Vec<usize> = parse_list(&args.size_range, "size range")?;
                    let [min, max] = range[..] else {
                        return Err(Error::Parameter("size range needs two values".into()));
                    };
                    let total = args.n + args.overlap_nodes * args.memberships.saturating_sub(1);
                    power_law_sizes(total, min, max, args.size_exponent, args.seed)?
                }
            };
            let cfg = PlantedConfig {
                n: args.n,
                community_sizes: sizes,
                overlapping_nodes: args.overlap_nodes,
                memberships: args.memberships,
                p_in: args.p_in,
                mu: args.mu,
                seed: args.seed,
            };
            let (g, truth) = planted_cover_graph(&cfg)?;
            fs::write(args.out.join("graph.txt"), write_edge_list(&g))?;
            fs::write(args.out.join("truth.txt"), write_cover(&truth, &g))?;
            eprintln!(
                "planted {} communities over n={} m={}",
                truth.len(),
                g.node_count(),
                g.edge_count()
            );
        }
        other => return Err(Error::Parameter(format!("unknown synth kind {other:?}"))),
    }
    Ok(())
}

fn hierarchy(args: &HierarchyArgs) -> Result<()> {
    let graph = load_graph(&args.input, false)?;
    let cover = load_cover_file(&read(&args.cover)?, &graph)?;
    let attrs = match &args.attrs {
        Some(p) => Some(load_attribute_table(&read(p)?, &graph)?),
        None => None,
    };
    let forest = containment_forest(&cover);
    let text = render_hierarchy(&forest, &graph, attrs.as_ref())?;
    emit(args.out.as_deref(), &text)
}

fn project(args: &ProjectArgs) -> Result<()> {
    let graph = load_graph(&args.input, true)?;
    let projected = crate::graph::project_bipartite(&graph, side_from(args.side)?)?;
    emit(args.out.as_deref(), &write_edge_list(&projected))
}

pub fn dispatch(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Run(args) => {
            let manifest = RunManifest::from_args(args)?;
            let output = run_command(&manifest)?;
            for line in output.summary_lines() {
                println!("{line}");
            }
            Ok(())
        }
        Command::Eval(args) => eval::eval_command(args),
        Command::Bench(args) => bench::bench_command(args),
        Command::Synth(args) => synth(args),
        Command::Project(args) => project(args),
        Command::Hierarchy(args) => hierarchy(args),
    }
}

/// Parses `std::env::args`, runs the command, and maps errors to exit codes.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
