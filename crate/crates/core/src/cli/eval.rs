use std::fs;
use std::path::Path;

use super::{load_graph, parse_list, read, EvalArgs};
use crate::error::{Error, Result};
use crate::graph::{load_attribute_table, load_cover_file, project_bipartite, Cover, Graph, Side};
use crate::metrics::{
    extended_nmi, mean_overlap_memberships, omega_index, overlap_fscore, overlapping_modularity,
    size_histogram, MetricReport, MetricRow, DEFAULT_STEEPNESS, NMI_VARIANT,
};
use crate::postprocess::{containment_forest, render_hierarchy};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    Nmi,
    Omega,
    FScore,
    Qov,
    Hist,
}

impl MetricKind {
    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "nmi" => MetricKind::Nmi,
            "omega" => MetricKind::Omega,
            "fscore" => MetricKind::FScore,
            "qov" => MetricKind::Qov,
            "hist" => MetricKind::Hist,
            other => return Err(Error::Parameter(format!("unknown metric {other:?}"))),
        })
    }

    fn needs_truth(self) -> bool {
        matches!(self, MetricKind::Nmi | MetricKind::Omega | MetricKind::FScore)
    }
}

#[derive(Debug, Clone)]
pub struct EvalOptions {
    pub metrics: Vec<MetricKind>,
    pub hist_edges: Vec<usize>,
}

/// A detected cover plus what is known about the run that produced it.
#[derive(Debug, Clone)]
pub struct EvalInput {
    pub run_id: String,
    pub cover: Cover,
    pub threshold: Option<f64>,
    pub iterations: Option<usize>,
    pub seed: Option<u64>,
}

impl EvalInput {
    pub fn new(run_id: &str, cover: Cover) -> Self {
        EvalInput {
            run_id: run_id.to_owned(),
            cover,
            threshold: None,
            iterations: None,
            seed: None,
        }
    }
}

fn undefined_to_none(r: Result<f64>) -> Result<Option<f64>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::UndefinedScore(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Overlapping modularity of `cover` on each one-mode projection of a
/// side-tagged graph.
pub fn qov_per_side(graph: &Graph, cover: &Cover) -> Result<Vec<(Side, Option<f64>)>> {
    [Side::First, Side::Second]
        .into_iter()
        .map(|side| {
            let nodes = graph.side_nodes(side)?;
            let projected = project_bipartite(graph, side)?;
            let restricted = cover.restrict(&nodes, graph.node_count());
            Ok((side, undefined_to_none(overlapping_modularity(&projected, &restricted))?))
        })
        .collect()
}

/// Scores every input cover. Metrics comparing against a reference need
/// `truth`.
pub fn evaluate(
    graph: &Graph,
    inputs: &[EvalInput],
    truth: Option<&Cover>,
    options: &EvalOptions,
) -> Result<MetricReport> {
    if truth.is_none() {
        if let Some(m) = options.metrics.iter().find(|m| m.needs_truth()) {
            return Err(Error::Parameter(format!("metric {m:?} requires --truth")));
        }
    }
    let n = graph.node_count();
    let mut report = MetricReport::new();
    report.annotate("nmi_variant", NMI_VARIANT);
    report.annotate("qov_belonging", "uniform");
    report.annotate("qov_steepness", &DEFAULT_STEEPNESS.to_string());

    for input in inputs {
        let mut push = |metric: &str, value: Option<f64>| {
            report.push(MetricRow {
                metric: metric.to_owned(),
                value,
                run_id: input.run_id.clone(),
                threshold: input.threshold,
                iterations: input.iterations,
                seed: input.seed,
            })
        };
        let cover = &input.cover;
        push("communities", Some(cover.len() as f64));
        push("overlapping_nodes", Some(cover.overlapping_nodes(n).len() as f64));
        for &metric in &options.metrics {
            match metric {
                MetricKind::Nmi => {
                    let truth = truth.expect("checked above");
                    push("nmi", Some(extended_nmi(cover, truth, n)?));
                }
                MetricKind::Omega => {
                    let truth = truth.expect("checked above");
                    push("omega", undefined_to_none(omega_index(cover, truth, n))?);
                }
                MetricKind::FScore => {
                    let truth = truth.expect("checked above");
                    let conf = overlap_fscore(cover, truth, n);
                    push("fscore", Some(conf.f_score_f64()));
                    push("precision", Some(conf.precision_f64()));
                    push("recall", Some(conf.recall_f64()));
                    push("detected_overlap_ratio", conf.detected_ratio());
                    push("detected_memberships", mean_overlap_memberships(cover, n));
                }
                MetricKind::Qov => {
                    if graph.sides().is_some() {
                        for (side, q) in qov_per_side(graph, cover)? {
                            push(&format!("qov_side{side}"), q);
                        }
                    } else {
                        push("qov", undefined_to_none(overlapping_modularity(graph, cover))?);
                    }
                }
                MetricKind::Hist => {
                    let h = size_histogram(cover, &options.hist_edges)?;
                    let last = h.edges.len() - 2;
                    for (i, &count) in h.counts.iter().enumerate() {
                        let close = if i == last { ']' } else { ')' };
                        let label = format!("hist[{},{}{close}", h.edges[i], h.edges[i + 1]);
                        push(&label, Some(count as f64));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Threshold and seed from a `cover_r{r}_s{seed}.txt` name, and the
/// iteration count from a sibling `manifest.toml`.
fn run_metadata(path: &Path) -> (Option<f64>, Option<u64>, Option<usize>) {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
    let (r, seed) = stem
        .strip_prefix("cover_r")
        .and_then(|rest| rest.rsplit_once("_s"))
        .map_or((None, None), |(r, s)| (r.parse().ok(), s.parse().ok()));
    let iterations = path
        .parent()
        .map(|dir| dir.join("manifest.toml"))
        .and_then(|m| fs::read_to_string(m).ok())
        .and_then(|text| toml::from_str::<super::RunManifest>(&text).ok())
        .map(|m| m.iterations);
    (r, seed, iterations)
}

pub(super) fn eval_command(args: &EvalArgs) -> Result<()> {
    let mut metrics = parse_list::<String>(&args.metrics, "metric")?
        .iter()
        .map(|m| MetricKind::parse(m))
        .collect::<Result<Vec<_>>>()?;
    if args.hist.is_some() && !metrics.contains(&MetricKind::Hist) {
        metrics.push(MetricKind::Hist);
    }
    let hist_edges = match &args.hist {
        Some(text) => parse_list(text, "bin edge")?,
        None => vec![1, 5, 20, 100],
    };
    if truth_needed(&metrics) && args.truth.is_none() {
        return Err(Error::Parameter("nmi, omega and fscore require --truth".into()));
    }

    let graph = load_graph(&args.input, args.bipartite)?;
    let truth = match &args.truth {
        Some(p) => Some(load_cover_file(&read(p)?, &graph)?),
        None => None,
    };
    let attrs = match &args.attrs {
        Some(p) => Some(load_attribute_table(&read(p)?, &graph)?),
        None => None,
    };

    let mut inputs = Vec::new();
    for path in &args.covers {
        let cover = load_cover_file(&read(path)?, &graph)?;
        let (threshold, seed, iterations) = run_metadata(path);
        let run_id = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("cover")
            .to_owned();
        if args.hierarchy {
            let forest = containment_forest(&cover);
            println!("{run_id}:");
            print!("{}", render_hierarchy(&forest, &graph, attrs.as_ref())?);
        }
        inputs.push(EvalInput {
            run_id,
            cover,
            threshold,
            iterations,
            seed,
        });
    }

    let report = evaluate(
        &graph,
        &inputs,
        truth.as_ref(),
        &EvalOptions {
            metrics,
            hist_edges,
        },
    )?;
    match &args.out {
        Some(path) => {
            fs::write(path, report.to_csv())?;
            print!("{}", report.summary_table());
        }
        None => {
            print!("{}", report.to_csv());
            eprint!("{}", report.summary_table());
        }
    }
    Ok(())
}

fn truth_needed(metrics: &[MetricKind]) -> bool {
    metrics.iter().any(|m| m.needs_truth())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_edge_list;

    #[test]
    fn self_comparison_scores_one() {
        let (g, _) = load_edge_list("1 2\n2 3\n3 1\n3 4\n4 5\n5 6\n6 4\n", false).unwrap();
        let cover = Cover::new(6, vec![vec![0, 1, 2], vec![2, 3, 4, 5]]).unwrap();
        let opts = EvalOptions {
            metrics: vec![MetricKind::Nmi, MetricKind::Omega, MetricKind::FScore],
            hist_edges: vec![1, 5],
        };
        let report = evaluate(&g, &[EvalInput::new("self", cover.clone())], Some(&cover), &opts).unwrap();
        for name in ["nmi", "omega", "fscore"] {
            let row = report.rows.iter().find(|r| r.metric == name).unwrap();
            assert!((row.value.unwrap() - 1.0).abs() < 1e-12, "{name}");
        }
    }

    #[test]
    fn truth_is_required() {
        let (g, _) = load_edge_list("1 2\n", false).unwrap();
        let opts = EvalOptions {
            metrics: vec![MetricKind::Nmi],
            hist_edges: vec![],
        };
        let err = evaluate(&g, &[EvalInput::new("x", Cover::singletons(2))], None, &opts).unwrap_err();
        assert!(matches!(err, Error::Parameter(_)));
    }

    #[test]
    fn metadata_from_file_name() {
        let (r, s, t) = run_metadata(Path::new("/nonexistent/cover_r0.05_s7.txt"));
        assert_eq!((r, s, t), (Some(0.05), Some(7), None));
        assert_eq!(run_metadata(Path::new("x.txt")), (None, None, None));
    }

    #[test]
    fn unknown_metric() {
        assert!(MetricKind::parse("ari").is_err());
    }
}
