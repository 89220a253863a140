use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Cover;

/// Number of communities of `cover` containing each co-member pair. Pairs
/// sharing no community are absent.
fn pair_multiplicities(cover: &Cover, n: usize) -> Result<HashMap<(u32, u32), u32>> {
    let mut counts = HashMap::new();
    for c in cover.iter() {
        if let Some(&v) = c.last().filter(|&&v| v >= n) {
            return Err(Error::Contract(format!("node {v} outside [0, {n})")));
        }
        for (i, &u) in c.iter().enumerate() {
            for &v in &c[i + 1..] {
                *counts.entry((u as u32, v as u32)).or_insert(0) += 1;
            }
        }
    }
    Ok(counts)
}

fn histogram(counts: &HashMap<(u32, u32), u32>, pairs: u64) -> Vec<u64> {
    let max = counts.values().copied().max().unwrap_or(0) as usize;
    let mut hist = vec![0u64; max + 1];
    for &c in counts.values() {
        hist[c as usize] += 1;
    }
    hist[0] = pairs - counts.len() as u64;
    hist
}

/// Omega index: chance-corrected agreement on how many communities each
/// unordered node pair shares. `1` for identical covers, around `0` for
/// unrelated ones, and possibly negative.
///
/// Fails with [`Error::UndefinedScore`] when fewer than two nodes exist or
/// the expected agreement is already 1.
pub fn omega_index(a: &Cover, b: &Cover, n: usize) -> Result<f64> {
    let pairs = (n as u64) * (n as u64).saturating_sub(1) / 2;
    if pairs == 0 {
        return Err(Error::UndefinedScore("omega index needs at least two nodes".into()));
    }
    let ma = pair_multiplicities(a, n)?;
    let mb = pair_multiplicities(b, n)?;

    let mut agree = 0u64;
    let mut union = ma.len() as u64;
    for (pair, &cb) in &mb {
        match ma.get(pair) {
            Some(&ca) if ca == cb => agree += 1,
            Some(_) => {}
            None => union += 1,
        }
    }
    agree += pairs - union;

    let ha = histogram(&ma, pairs);
    let hb = histogram(&mb, pairs);
    let total = pairs as f64;
    let expected = ha
        .iter()
        .zip(&hb)
        .map(|(&x, &y)| x as f64 * y as f64)
        .sum::<f64>()
        / (total * total);
    let observed = agree as f64 / total;
    if expected >= 1.0 {
        return Err(Error::UndefinedScore(
            "omega index: chance agreement is already perfect".into(),
        ));
    }
    Ok((observed - expected) / (1.0 - expected))
}
