//! Collaborative filtering, ranked recommendation and evaluation.

pub mod cf;
pub mod eval;
pub mod metrics;
pub mod ranking;
pub mod timing;

pub use cf::{
    complete_matrix, euclidean_similarity, predict_missing_cell, predict_missing_cell_detailed, Neighbor, UtilityMatrix,
};
pub use eval::{
    overall_rating, run_incremental_eval, split_reviews, test_queries, EvalAverage, EvalRow, EvalSettings, EvalTable,
    IncrementalSchedule, RelevanceOracle, UserJudgments,
};
pub use metrics::{f_measure, precision, recall, EvalCounts};
pub use ranking::{max_normalized_rank, recommend, search, HotelFilter, RecommendQuery, RecommendationEntry};
pub use timing::{measure_timings, timings_to_csv, TimingReport};
