use crate::error::{Error, Result};
use crate::graph::Cover;

/// Community-size histogram. Bins are `[e0, e1), [e1, e2), ..., [e_{k-1}, e_k]`
/// (right-open except the last); sizes outside `[e0, e_k]` land in `below` or
/// `above`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeHistogram {
    pub edges: Vec<usize>,
    pub counts: Vec<usize>,
    pub below: usize,
    pub above: usize,
}

impl SizeHistogram {
    pub fn total(&self) -> usize {
        self.counts.iter().sum::<usize>() + self.below + self.above
    }
}

pub fn size_histogram(cover: &Cover, edges: &[usize]) -> Result<SizeHistogram> {
    if edges.len() < 2 {
        return Err(Error::Parameter("histogram needs at least two bin edges".into()));
    }
    if edges.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter(format!(
            "bin edges {edges:?} are not strictly increasing"
        )));
    }
    let last = *edges.last().unwrap();
    let mut hist = SizeHistogram {
        edges: edges.to_vec(),
        counts: vec![0; edges.len() - 1],
        below: 0,
        above: 0,
    };
    for c in cover.iter() {
        let size = c.len();
        if size < edges[0] {
            hist.below += 1;
        } else if size > last {
            hist.above += 1;
        } else if size == last {
            *hist.counts.last_mut().unwrap() += 1;
        } else {
            // first edge strictly greater than size closes the bin
            let bin = edges.partition_point(|&e| e <= size) - 1;
            hist.counts[bin] += 1;
        }
    }
    Ok(hist)
}
