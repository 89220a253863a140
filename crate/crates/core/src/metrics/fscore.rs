use num_rational::Ratio;

use crate::graph::Cover;

/// Overlapping-node detection treated as binary classification: a node is
/// overlapping when it belongs to more than one community.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OverlapConfusion {
    pub true_positives: u64,
    pub false_positives: u64,
    pub false_negatives: u64,
}

impl OverlapConfusion {
    /// Overlapping nodes in the detected cover.
    pub fn detected(&self) -> u64 {
        self.true_positives + self.false_positives
    }

    /// Overlapping nodes in the reference cover.
    pub fn actual(&self) -> u64 {
        self.true_positives + self.false_negatives
    }

    fn perfect(&self) -> bool {
        self.false_positives == 0 && self.false_negatives == 0
    }

    // A ratio with zero denominator counts as 1 when nothing was missed or
    // overcalled, else 0.
    fn ratio(&self, num: u64, den: u64) -> Ratio<u64> {
        if den == 0 {
            Ratio::from_integer(u64::from(self.perfect()))
        } else {
            Ratio::new(num, den)
        }
    }

    pub fn precision(&self) -> Ratio<u64> {
        self.ratio(self.true_positives, self.detected())
    }

    pub fn recall(&self) -> Ratio<u64> {
        self.ratio(self.true_positives, self.actual())
    }

    /// Harmonic mean of precision and recall, 0 when both are 0.
    pub fn f_score(&self) -> Ratio<u64> {
        let den = 2 * self.true_positives + self.false_positives + self.false_negatives;
        self.ratio(2 * self.true_positives, den)
    }

    pub fn precision_f64(&self) -> f64 {
        to_f64(self.precision())
    }

    pub fn recall_f64(&self) -> f64 {
        to_f64(self.recall())
    }

    pub fn f_score_f64(&self) -> f64 {
        to_f64(self.f_score())
    }

    /// Detected over actual overlapping-node count, if any exist.
    pub fn detected_ratio(&self) -> Option<f64> {
        (self.actual() > 0).then(|| self.detected() as f64 / self.actual() as f64)
    }
}

fn to_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Confusion counts of overlapping-node flags in `detected` against `truth`
/// over nodes `0..n`.
pub fn overlap_fscore(detected: &Cover, truth: &Cover, n: usize) -> OverlapConfusion {
    let d = detected.membership_counts(n);
    let t = truth.membership_counts(n);
    let mut out = OverlapConfusion::default();
    for (&dc, &tc) in d.iter().zip(&t) {
        match (dc > 1, tc > 1) {
            (true, true) => out.true_positives += 1,
            (true, false) => out.false_positives += 1,
            (false, true) => out.false_negatives += 1,
            (false, false) => {}
        }
    }
    out
}

/// Mean membership count over a cover's overlapping nodes.
pub fn mean_overlap_memberships(cover: &Cover, n: usize) -> Option<f64> {
    let counts: Vec<usize> = cover
        .membership_counts(n)
        .into_iter()
        .filter(|&c| c > 1)
        .collect();
    (!counts.is_empty()).then(|| counts.iter().sum::<usize>() as f64 / counts.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conf(tp: u64, fp: u64, fn_: u64) -> OverlapConfusion {
        OverlapConfusion {
            true_positives: tp,
            false_positives: fp,
            false_negatives: fn_,
        }
    }

    #[test]
    fn self_comparison_is_perfect() {
        let c = Cover::new(5, vec![vec![0, 1, 2], vec![2, 3, 4], vec![1, 4]]).unwrap();
        let r = overlap_fscore(&c, &c, 5);
        assert_eq!(r.f_score(), Ratio::from_integer(1));
        assert_eq!(r.precision(), Ratio::from_integer(1));
        assert_eq!(r.recall(), Ratio::from_integer(1));
    }

    #[test]
    fn half_precision_full_recall() {
        let r = conf(1, 1, 0);
        assert_eq!(r.precision(), Ratio::new(1, 2));
        assert_eq!(r.recall(), Ratio::from_integer(1));
        assert_eq!(r.f_score(), Ratio::new(2, 3));
    }

    #[test]
    fn five_of_ten_plus_five_false() {
        // truth overlapping nodes 0..10, detected flags 0..5 and 10..15
        let mut truth = Vec::new();
        let mut detected = Vec::new();
        for v in 0..20 {
            truth.push(vec![v]);
            detected.push(vec![v]);
        }
        truth.push((0..10).collect());
        detected.push((0..5).chain(10..15).collect());
        let truth = Cover::new(20, truth).unwrap();
        let detected = Cover::new(20, detected).unwrap();
        let r = overlap_fscore(&detected, &truth, 20);
        assert_eq!(r, conf(5, 5, 5));
        assert_eq!(r.precision(), Ratio::new(1, 2));
        assert_eq!(r.recall(), Ratio::new(1, 2));
        assert_eq!(r.f_score(), Ratio::new(1, 2));
        assert_eq!(r.detected_ratio(), Some(1.0));
    }

    #[test]
    fn zero_conventions() {
        assert_eq!(conf(0, 3, 2).f_score(), Ratio::from_integer(0));
        assert_eq!(conf(0, 0, 2).precision(), Ratio::from_integer(0));
        assert_eq!(conf(0, 0, 0).f_score(), Ratio::from_integer(1));
    }

    #[test]
    fn memberships() {
        let c = Cover::new(4, vec![vec![0, 1], vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap();
        assert_eq!(mean_overlap_memberships(&c, 4), Some((3.0 + 2.0 + 2.0) / 3.0));
        assert_eq!(mean_overlap_memberships(&Cover::singletons(3), 3), None);
    }
}
