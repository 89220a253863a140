use crate::error::{Error, Result};

/// Rank of each algorithm under each benchmark setting, with one weight per
/// setting.
#[derive(Debug, Clone, PartialEq)]
pub struct RankTable {
    algorithms: Vec<String>,
    ranks: Vec<Vec<u32>>,
    weights: Vec<f64>,
}

impl RankTable {
    /// `ranks[i][j]` is the rank of algorithm `i` under setting `j`. Weights
    /// must be non-negative and sum to 1.
    pub fn new(algorithms: Vec<String>, ranks: Vec<Vec<u32>>, weights: Vec<f64>) -> Result<Self> {
        if algorithms.len() != ranks.len() {
            return Err(Error::Parameter(format!(
                "{} algorithms but {} rank rows",
                algorithms.len(),
                ranks.len()
            )));
        }
        if weights.is_empty() {
            return Err(Error::Parameter("rank table needs at least one setting".into()));
        }
        if let Some(i) = ranks.iter().position(|row| row.len() != weights.len()) {
            return Err(Error::Parameter(format!(
                "algorithm {:?} has {} ranks for {} settings",
                algorithms[i],
                ranks[i].len(),
                weights.len()
            )));
        }
        if ranks.iter().flatten().any(|&r| r == 0) {
            return Err(Error::Parameter("ranks start at 1".into()));
        }
        let sum: f64 = weights.iter().sum();
        if weights.iter().any(|&w| w.is_nan() || w < 0.0) || (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Parameter(format!("weights sum to {sum}, not 1")));
        }
        Ok(RankTable {
            algorithms,
            ranks,
            weights,
        })
    }

    pub fn equal_weights(algorithms: Vec<String>, ranks: Vec<Vec<u32>>) -> Result<Self> {
        let settings = ranks.first().map_or(0, Vec::len);
        let w = vec![1.0 / settings as f64; settings];
        Self::new(algorithms, ranks, w)
    }

    pub fn algorithms(&self) -> &[String] {
        &self.algorithms
    }
}

/// Weighted average rank of every algorithm, in table order.
pub fn ranking_score(table: &RankTable) -> Vec<f64> {
    table
        .ranks
        .iter()
        .map(|row| {
            row.iter()
                .zip(&table.weights)
                .map(|(&r, &w)| w * r as f64)
                .sum()
        })
        .collect()
}

/// Algorithms sorted by increasing score; ties keep table order.
pub fn final_ranking(table: &RankTable) -> Vec<(String, f64)> {
    let mut scored: Vec<(String, f64)> = table
        .algorithms
        .iter()
        .cloned()
        .zip(ranking_score(table))
        .collect();
    scored.sort_by(|a, b| a.1.total_cmp(&b.1));
    scored
}

/// Competition ranks (1 = best) for scores where higher is better. Equal
/// scores share the smaller rank.
pub fn ranks_from_scores(scores: &[f64]) -> Vec<u32> {
    scores
        .iter()
        .map(|&s| 1 + scores.iter().filter(|&&o| o > s).count() as u32)
        .collect()
}
