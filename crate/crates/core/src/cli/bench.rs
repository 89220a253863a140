use std::fmt::Write as _;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use super::{parse_list, BenchArgs};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::propagation::{evolve, RunConfig};
use crate::synth::homogeneous_random_graph;

/// Least-squares line `y = slope * x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Ordinary least squares; `None` for fewer than two points or constant `x`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<LinearFit> {
    let n = xs.len();
    if n < 2 || n != ys.len() {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Some(LinearFit {
        slope,
        intercept,
        r_squared,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    /// Fastest propagation time over the repetitions.
    pub seconds: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub iterations: usize,
    pub rows: Vec<BenchRow>,
    /// Fit of seconds against m over the rungs that completed.
    pub fit: Option<LinearFit>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,m,seconds,seconds_per_iteration,error\n");
        for r in &self.rows {
            let (s, per) = match r.seconds {
                Some(s) => (s.to_string(), (s / self.iterations as f64).to_string()),
                None => (String::new(), String::new()),
            };
            let _ = writeln!(out, "{},{},{s},{per},{}", r.n, r.m, r.error.as_deref().unwrap_or(""));
        }
        out
    }

    pub fn fit_summary(&self) -> String {
        match self.fit {
            Some(f) => format!(
                "time = {:.4e} * m + {:.4e} s, R^2 = {:.4}",
                f.slope, f.intercept, f.r_squared
            ),
            None => "fit unavailable (fewer than two completed rungs)".into(),
        }
    }
}

/// How the node count of a rung follows from its edge count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sizing {
    /// Every rung has this mean degree, so n grows with m.
    MeanDegree(f64),
    /// Every rung has this many nodes, so the mean degree grows with m.
    Nodes(usize),
}

impl Sizing {
    fn rung(self, m: usize) -> Result<(usize, f64)> {
        match self {
            Sizing::MeanDegree(k) if k > 0.0 => Ok(((2.0 * m as f64 / k).round() as usize, k)),
            Sizing::Nodes(n) if n > 0 => Ok((n, 2.0 * m as f64 / n as f64)),
            _ => Err(Error::Parameter("mean degree and node count must be positive".into())),
        }
    }
}

fn time_once(graph: &Graph, iterations: usize, seed: u64) -> Result<f64> {
    let config = RunConfig::new(iterations, seed)?;
    let start = Instant::now();
    let memories = evolve(graph, &config);
    let seconds = start.elapsed().as_secs_f64();
    drop(memories);
    Ok(seconds)
}

fn guarded<T>(f: impl FnOnce() -> Result<T>) -> std::result::Result<T, String> {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => Ok(v),
        Ok(Err(e)) => Err(e.to_string()),
        Err(_) => Err("rung panicked".into()),
    }
}

/// Times propagation (graph generation excluded) on homogeneous random
/// graphs with the given edge counts. Repetitions cycle through the whole
/// ladder, so a slow stretch of the machine is spread over all rungs
/// instead of landing on one; each rung reports its fastest repetition. A
/// failing rung is recorded and the ladder continues.
pub fn bench(ladder: &[usize], sizing: Sizing, iterations: usize, repetitions: usize, seed: u64) -> Result<BenchReport> {
    RunConfig::new(iterations, seed)?;
    sizing.rung(1)?;
    let mut rows = Vec::with_capacity(ladder.len());
    let mut graphs = Vec::with_capacity(ladder.len());
    for (i, &m) in ladder.iter().enumerate() {
        let (n, mean_degree) = sizing.rung(m)?;
        let rung_seed = seed.wrapping_add(1000 * i as u64);
        match guarded(|| homogeneous_random_graph(n, mean_degree, rung_seed)) {
            Ok(g) => {
                rows.push(BenchRow { n, m: g.edge_count(), seconds: None, error: None });
                graphs.push(Some((g, rung_seed)));
            }
            Err(e) => {
                rows.push(BenchRow { n, m, seconds: None, error: Some(e) });
                graphs.push(None);
            }
        }
    }
    for rep in 0..repetitions.max(1) {
        for (row, slot) in rows.iter_mut().zip(&graphs) {
            let Some((graph, rung_seed)) = slot else { continue };
            if row.error.is_some() {
                continue;
            }
            match guarded(|| time_once(graph, iterations, rung_seed.wrapping_add(rep as u64))) {
                Ok(s) => row.seconds = Some(row.seconds.map_or(s, |best| best.min(s))),
                Err(e) => {
                    row.seconds = None;
                    row.error = Some(e);
                }
            }
        }
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = rows
        .iter()
        .filter_map(|r| r.seconds.map(|s| (r.m as f64, s)))
        .unzip();
    Ok(BenchReport {
        iterations,
        fit: linear_fit(&xs, &ys),
        rows,
    })
}

pub(super) fn bench_command(args: &BenchArgs) -> Result<()> {
    let ladder: Vec<usize> = parse_list(&args.ladder, "ladder")?;
    if ladder.len() < 4 {
        return Err(Error::Parameter("the ladder needs at least 4 rungs".into()));
    }
    let sizing = match args.nodes {
        Some(n) => Sizing::Nodes(n),
        None => Sizing::MeanDegree(args.mean_degree),
    };
    let report = bench(&ladder, sizing, args.iterations, args.seeds, 1)?;
    match &args.out {
        Some(p) => fs::write(p, report.to_csv())?,
        None => print!("{}", report.to_csv()),
    }
    println!("{}", report.fit_summary());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let f = linear_fit(&[1.0, 2.0, 3.0], &[3.0, 5.0, 7.0]).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12);
        assert!((f.intercept - 1.0).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn noisy_line() {
        // sxx = 5, sxy = 3, syy = 5
        let f = linear_fit(&[0.0, 1.0, 2.0, 3.0], &[1.0, 0.0, 3.0, 2.0]).unwrap();
        assert!((f.slope - 0.6).abs() < 1e-12);
        assert!((f.r_squared - 0.36).abs() < 1e-12);
        assert!(linear_fit(&[1.0, 1.0], &[1.0, 2.0]).is_none());
    }

    #[test]
    fn failed_rung_is_recorded() {
        // 4 nodes cannot hold 100 edges
        let report = bench(&[100, 20], Sizing::MeanDegree(50.0), 2, 1, 0).unwrap();
        assert!(report.rows[0].seconds.is_none());
        assert!(report.rows[0].error.is_some());
        assert!(report.fit.is_none());
    }

    #[test]
    fn fixed_nodes_keep_n() {
        let report = bench(&[10, 20, 40], Sizing::Nodes(30), 2, 1, 0).unwrap();
        assert!(report.rows.iter().all(|r| r.n == 30 && r.seconds.is_some()));
        let ms: Vec<usize> = report.rows.iter().map(|r| r.m).collect();
        assert_eq!(ms, vec![10, 20, 40]);
        assert!(bench(&[10], Sizing::Nodes(0), 2, 1, 0).is_err());
    }
}
