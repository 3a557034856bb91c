//! Retrieval metrics and two-sample statistics.

mod metrics;
mod stats;

pub use metrics::{
    ap_from_pattern, average_precision, check_universe, evaluate, f_measures, global_ranking, mean_average_precision,
    pr_points_from_pattern, precision_recall, EvalReport, PrPoint,
};
pub use stats::{
    cliffs_delta, compare, wilcoxon_rank_sum, CliffsDelta, Magnitude, RankSum, RankSumMethod, StatResult, EXACT_LIMIT,
};
