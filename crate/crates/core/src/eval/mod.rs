//! Classifier scoring and metric comparison.

mod confusion;
mod ranking;
mod wilcoxon;

pub use confusion::{
    accuracy, confusion, macro_precision, macro_recall, ClassCounts, ConfusionMatrix, ScoreTriple,
};
pub use ranking::{rank_distances, RankRow, RankTable, TIE_TOLERANCE};
pub use wilcoxon::{
    midranks, rank_sum_test, signed_rank_test, wilcoxon_rank_sum, wilcoxon_signed_rank,
    PValueMethod, TestOutcome, EXACT_MAX_RANK_SUM_N, EXACT_MAX_SIGNED_RANK_N,
};
