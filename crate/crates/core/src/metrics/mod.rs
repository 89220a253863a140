//! Cover quality measures: agreement with a reference cover (NMI, Omega,
//! overlapping-node F-score), overlapping modularity against the graph, rank
//! aggregation across benchmark settings, and community-size histograms.
//!
//! All functions are pure and invariant under community reordering and
//! consistent node relabeling.

mod fscore;
mod histogram;
mod modularity;
mod nmi;
mod omega;
mod ranking;
mod report;

pub use fscore::{mean_overlap_memberships, overlap_fscore, OverlapConfusion};
pub use histogram::{size_histogram, SizeHistogram};
pub use modularity::{
    belonging_transform, overlapping_modularity, overlapping_modularity_with, BelongingMatrix,
    DEFAULT_STEEPNESS,
};
pub use nmi::{extended_nmi, NMI_VARIANT};
pub use omega::omega_index;
pub use ranking::{final_ranking, ranking_score, ranks_from_scores, RankTable};
pub use report::{MetricReport, MetricRow, MetricSummary};
