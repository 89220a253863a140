use std::fmt::Write as _;

/// One metric value for one run. `value` is `None` when the score is
/// undefined for the inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricRow {
    pub metric: String,
    pub value: Option<f64>,
    pub run_id: String,
    pub threshold: Option<f64>,
    pub iterations: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricSummary {
    pub metric: String,
    pub count: usize,
    pub mean: f64,
    /// Sample standard deviation; 0 for a single value.
    pub std_dev: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct MetricReport {
    pub metadata: Vec<(String, String)>,
    pub rows: Vec<MetricRow>,
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

impl MetricReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn annotate(&mut self, key: &str, value: &str) {
        self.metadata.push((key.to_owned(), value.to_owned()));
    }

    pub fn push(&mut self, row: MetricRow) {
        self.rows.push(row);
    }

    /// Mean and spread per metric over the defined values, in order of first
    /// appearance.
    pub fn summarize(&self) -> Vec<MetricSummary> {
        let mut order: Vec<&str> = Vec::new();
        for row in &self.rows {
            if !order.contains(&row.metric.as_str()) {
                order.push(&row.metric);
            }
        }
        order
            .into_iter()
            .filter_map(|metric| {
                let values: Vec<f64> = self
                    .rows
                    .iter()
                    .filter(|r| r.metric == metric)
                    .filter_map(|r| r.value)
                    .collect();
                if values.is_empty() {
                    return None;
                }
                let count = values.len();
                let mean = values.iter().sum::<f64>() / count as f64;
                let std_dev = if count > 1 {
                    let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
                    (ss / (count - 1) as f64).sqrt()
                } else {
                    0.0
                };
                Some(MetricSummary {
                    metric: metric.to_owned(),
                    count,
                    mean,
                    std_dev,
                })
            })
            .collect()
    }

    /// `# key=value` metadata lines, the header
    /// `metric,value,run_id,r,T,seed`, one line per row, then `mean` and
    /// `std` rows per metric. Undefined values are written as `NA`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k}={v}");
        }
        out.push_str("metric,value,run_id,r,T,seed\n");
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                row.metric,
                row.value.map_or_else(|| "NA".to_owned(), |v| v.to_string()),
                row.run_id,
                opt(row.threshold),
                opt(row.iterations),
                opt(row.seed)
            );
        }
        for s in self.summarize() {
            let _ = writeln!(out, "{},{},mean,,,", s.metric, s.mean);
            let _ = writeln!(out, "{},{},std,,,", s.metric, s.std_dev);
        }
        out
    }

    pub fn summary_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<22} {:>5} {:>10} {:>10}", "metric", "runs", "mean", "std");
        for s in self.summarize() {
            let _ = writeln!(
                out,
                "{:<22} {:>5} {:>10.4} {:>10.4}",
                s.metric, s.count, s.mean, s.std_dev
            );
        }
        out
    }
}
