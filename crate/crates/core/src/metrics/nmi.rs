//! Normalized mutual information between covers, generalized to overlapping
//! communities by treating each community as a binary membership variable
//! over the nodes.
//!
//! For a community `X_k` of cover A and `Y_l` of cover B the joint
//! distribution of the two indicators gives `H(X_k | Y_l)`. A pairing is only
//! admissible when `h(P11) + h(P00) > h(P01) + h(P10)`, which rejects
//! complementary communities; with no admissible partner, `H(X_k | Y) =
//! H(X_k)`. The normalized conditional entropy averages
//! `H(X_k | Y) / H(X_k)` over the communities of A, and the score is
//! `1 - [H(X|Y)_norm + H(Y|X)_norm] / 2` (the averaging normalization, not
//! the later max-based correction).

use crate::error::{Error, Result};
use crate::graph::Cover;

/// Identifier written into reports to say which normalization is in use.
pub const NMI_VARIANT: &str = "lfk-average";

fn h(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.ln()
    } else {
        0.0
    }
}

/// Entropy terms of two indicator variables with sizes `x`, `y`, overlap `c`
/// over `n` nodes: returns `(H(X|Y), admissible)`.
pub(crate) fn conditional_entropy(x: usize, y: usize, c: usize, n: usize) -> (f64, bool) {
    let nf = n as f64;
    let p11 = c as f64 / nf;
    let p10 = (x - c) as f64 / nf;
    let p01 = (y - c) as f64 / nf;
    let p00 = (n + c - x - y) as f64 / nf;
    let admissible = h(p11) + h(p00) > h(p01) + h(p10);
    let joint = h(p11) + h(p10) + h(p01) + h(p00);
    let hy = h(y as f64 / nf) + h((n - y) as f64 / nf);
    ((joint - hy).max(0.0), admissible)
}

fn entropy(x: usize, n: usize) -> f64 {
    let nf = n as f64;
    h(x as f64 / nf) + h((n - x) as f64 / nf)
}

/// `H(X|Y)_norm` given community sizes and the |X|x|Y| intersection matrix
/// (row-major, rows = X).
fn normalized_conditional(
    xs: &[usize],
    ys: &[usize],
    inter: impl Fn(usize, usize) -> usize,
    n: usize,
) -> f64 {
    let mut sum = 0.0;
    for (k, &x) in xs.iter().enumerate() {
        let hx = entropy(x, n);
        if hx == 0.0 {
            // community spans every node and is fully determined
            continue;
        }
        let mut best = f64::INFINITY;
        for (l, &y) in ys.iter().enumerate() {
            let (hc, ok) = conditional_entropy(x, y, inter(k, l), n);
            if ok && hc < best {
                best = hc;
            }
        }
        let cond = if best.is_finite() { best } else { hx };
        sum += cond / hx;
    }
    sum / xs.len() as f64
}

/// Overlapping NMI of two covers over `n` nodes, in `[0, 1]`.
pub fn extended_nmi(a: &Cover, b: &Cover, n: usize) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Contract("extended NMI needs two non-empty covers".into()));
    }
    if n == 0 {
        return Err(Error::Contract("extended NMI needs at least one node".into()));
    }
    let (ka, kb) = (a.len(), b.len());
    let mut member_b: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (l, c) in b.iter().enumerate() {
        for &v in c {
            if v >= n {
                return Err(Error::Contract(format!("node {v} outside [0, {n})")));
            }
            member_b[v].push(l);
        }
    }
    let mut inter = vec![0usize; ka * kb];
    for (k, c) in a.iter().enumerate() {
        for &v in c {
            if v >= n {
                return Err(Error::Contract(format!("node {v} outside [0, {n})")));
            }
            for &l in &member_b[v] {
                inter[k * kb + l] += 1;
            }
        }
    }
    let xs: Vec<usize> = a.iter().map(Vec::len).collect();
    let ys: Vec<usize> = b.iter().map(Vec::len).collect();
    let hxy = normalized_conditional(&xs, &ys, |k, l| inter[k * kb + l], n);
    let hyx = normalized_conditional(&ys, &xs, |l, k| inter[k * kb + l], n);
    Ok(1.0 - 0.5 * (hxy + hyx))
}
